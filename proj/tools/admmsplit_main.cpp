// admmsplit command-line runner: seeded instance generation, the four
// solvers, closed-form communication analysis, and side-by-side comparison,
// with machine-readable CSV/JSON outputs.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "admmsplit/admmsplit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

using admmsplit::CommLedger;
using admmsplit::Convention;
using admmsplit::CVector;
using admmsplit::Method;
using admmsplit::ProblemKind;
using admmsplit::SensingProblem;
using admmsplit::SolveOptions;
using admmsplit::SolveReport;
using admmsplit::SolverConfig;

namespace {

constexpr const char* kSchemaVersion = "1";
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", admmsplit::round_half_up_1(x));
  return buf;
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t fnv1a_file(const fs::path& path, std::uint64_t h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw admmsplit::IoError("cannot open " + path.string() + " for fingerprinting");
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = fnv1a_bytes(buf, static_cast<std::size_t>(in.gcount()), h);
    if (!in) break;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ProblemKind parse_kind(const std::string& name) {
  if (name == "complex-gaussian") return ProblemKind::ComplexGaussian;
  if (name == "random-phase") return ProblemKind::RandomPhase;
  throw admmsplit::ParameterError("unknown problem kind: " + name);
}

// ---- problem directories ----------------------------------------------

struct GenFlags {
  std::size_t nm = 0, np = 0, k = 0;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::string kind = "complex-gaussian";
};

SensingProblem generate_from_flags(const GenFlags& flags) {
  return admmsplit::gen_problem(flags.nm, flags.np, flags.k, flags.snr_db, flags.seed,
                                parse_kind(flags.kind));
}

void write_problem_dir(const fs::path& dir, const SensingProblem& problem,
                       const GenFlags& flags) {
  fs::create_directories(dir);
  admmsplit::write_cmat(dir / "H.cmat", problem.h);
  admmsplit::write_cvec(dir / "g.cmat", problem.g);
  if (problem.truth) admmsplit::write_cvec(dir / "truth.cmat", *problem.truth);
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["kind"] = flags.kind;
  manifest["nm"] = flags.nm;
  manifest["np"] = flags.np;
  manifest["k"] = flags.k;
  if (std::isfinite(flags.snr_db)) {
    manifest["snr_db"] = flags.snr_db;
  } else {
    manifest["snr_db"] = "inf";
  }
  manifest["seed"] = flags.seed;
  manifest["noise_sigma"] = problem.noise_sigma;
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw admmsplit::IoError("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

SensingProblem load_problem_dir(const fs::path& dir) {
  SensingProblem problem;
  problem.h = admmsplit::read_cmat(dir / "H.cmat");
  problem.g = admmsplit::read_cvec(dir / "g.cmat");
  if (fs::exists(dir / "truth.cmat")) problem.truth = admmsplit::read_cvec(dir / "truth.cmat");
  problem.kind = ProblemKind::FromFile;
  const fs::path manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    json manifest;
    in >> manifest;
    if (manifest.contains("noise_sigma")) {
      problem.noise_sigma = manifest["noise_sigma"].get<double>();
    }
  }
  problem.validate();
  return problem;
}

// ---- report writers ----------------------------------------------------

void write_trace_csv(const fs::path& path, const admmsplit::ResidualTrace& trace) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw admmsplit::IoError("cannot write " + path.string());
  out << "iteration,primal_norm,dual_norm,objective\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out << (k + 1) << ',' << fmt_double(trace.primal[k]) << ',' << fmt_double(trace.dual[k])
        << ',' << fmt_double(trace.objective[k]) << '\n';
  }
}

void write_ledger_csv(const fs::path& path, const CommLedger& ledger, Convention convention) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw admmsplit::IoError("cannot write " + path.string());
  out << "node_id,iteration,received,sent,convention\n";
  for (std::size_t node = 0; node < ledger.node_count(); ++node) {
    for (std::size_t k = 0; k < ledger.iteration_count(); ++k) {
      const auto counts = ledger.counts(node, k, convention);
      out << node << ',' << (k + 1) << ',' << counts.received << ',' << counts.sent << ','
          << admmsplit::to_string(convention) << '\n';
    }
  }
}

json metrics_json(const SolveReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  if (report.metrics) {
    j["nmse"] = report.metrics->nmse;
    j["support_precision"] = report.metrics->support_precision;
    j["support_recall"] = report.metrics->support_recall;
  } else {
    j["nmse"] = nullptr;
    j["support_precision"] = nullptr;
    j["support_recall"] = nullptr;
  }
  j["iterations_run"] = report.iterations_run;
  j["objective"] = report.objective;
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw admmsplit::IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// ---- shared CLI state ----------------------------------------------------

struct ProblemSource {
  std::string problem_dir;
  GenFlags gen;
  bool seed_given = false;
  bool any_gen_flag = false;

  SensingProblem resolve() const {
    if (!problem_dir.empty() && any_gen_flag) {
      throw admmsplit::ParameterError(
          "give either --problem or generation flags (--nm/--np/--k/--seed/...), not both");
    }
    if (!problem_dir.empty()) return load_problem_dir(problem_dir);
    if (!any_gen_flag) {
      throw admmsplit::ParameterError("no problem source: pass --problem DIR or --nm/--np/--k/--seed");
    }
    if (gen.nm == 0 || gen.np == 0 || gen.k == 0) {
      throw admmsplit::ParameterError("inline generation needs --nm, --np and --k");
    }
    if (!seed_given) {
      throw admmsplit::ParameterError("--seed is mandatory when generating (reproducibility)");
    }
    return generate_from_flags(gen);
  }
};

void add_problem_source_flags(CLI::App* cmd, ProblemSource& src) {
  cmd->add_option("--problem", src.problem_dir, "Directory with H.cmat/g.cmat[/truth.cmat]");
  auto mark = [&src]() { src.any_gen_flag = true; };
  cmd->add_option("--nm", src.gen.nm, "Measurements (rows) for inline generation")
      ->each([mark](const std::string&) { mark(); });
  cmd->add_option("--np", src.gen.np, "Pixels (columns) for inline generation")
      ->each([mark](const std::string&) { mark(); });
  cmd->add_option("--k", src.gen.k, "Sparsity of the ground truth")
      ->each([mark](const std::string&) { mark(); });
  cmd->add_option("--snr", src.gen.snr_db, "SNR in dB (inf = noiseless)")
      ->each([mark](const std::string&) { mark(); });
  cmd->add_option("--seed", src.gen.seed, "Generator seed")
      ->each([&src](const std::string&) {
        src.seed_given = true;
        src.any_gen_flag = true;
      });
  cmd->add_option("--kind", src.gen.kind, "Matrix family: complex-gaussian | random-phase")
      ->check(CLI::IsMember({"complex-gaussian", "random-phase"}))
      ->each([mark](const std::string&) { mark(); });
}

struct SolverFlags {
  // Documented defaults: rho=1e5, lambda=1e-2, 50 iterations, scl=1 (synthetic
  // unit-scaled operators). --preset paper switches scl to 1e-4 for physically
  // scaled data; explicit flags always win.
  double rho = 1e5;
  double lambda = 1e-2;
  double scl = 1.0;
  std::size_t iters = 50;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
  std::string preset;
  std::size_t threads = 1;
  bool ragged = false;
  bool scl_given = false;

  SolverConfig config(std::uint64_t seed) const {
    SolverConfig cfg;
    cfg.rho = rho;
    cfg.lambda = lambda;
    cfg.scl = (preset == "paper" && !scl_given) ? 1e-4 : scl;
    cfg.max_iters = iters;
    cfg.eps_pri = eps_pri;
    cfg.eps_dual = eps_dual;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }

  SolveOptions options() const {
    SolveOptions opts;
    opts.threads = threads;
    opts.ragged = ragged;
    return opts;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--rho", flags.rho, "Augmented parameter rho (default 1e5)");
  cmd->add_option("--lambda", flags.lambda, "Regularization weight lambda (default 1e-2)");
  cmd->add_option("--scl", flags.scl, "Joint data scaling factor (default 1)")
      ->each([&flags](const std::string&) { flags.scl_given = true; });
  cmd->add_option("--iters", flags.iters, "Iteration cap (default 50)");
  cmd->add_option("--eps-pri", flags.eps_pri, "Primal residual stop threshold (0 disables)");
  cmd->add_option("--eps-dual", flags.eps_dual, "Dual residual stop threshold (0 disables)");
  cmd->add_option("--preset", flags.preset, "Named preset 'paper': scl=1e-4 for scaled data")
      ->check(CLI::IsMember({"paper"}));
  cmd->add_option("--threads", flags.threads,
                  "Worker thread cap; results are bit-identical for any value");
  cmd->add_flag("--ragged", flags.ragged, "Allow non-divisible splits (uneven blocks)");
}

struct MethodSpec {
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
};

SolveReport run_method(const MethodSpec& spec, const SensingProblem& problem,
                       const SolverConfig& cfg, const SolveOptions& opts) {
  if (spec.method == "reference") return admmsplit::lasso_admm_reference(problem, cfg, opts);
  if (spec.method == "consensus") return admmsplit::consensus_solve(problem, cfg, spec.m, opts);
  if (spec.method == "sectioning") return admmsplit::sectioning_solve(problem, cfg, spec.n, opts);
  if (spec.method == "hybrid") return admmsplit::hybrid_solve(problem, cfg, spec.m, spec.n, opts);
  throw admmsplit::ParameterError("unknown method: " + spec.method);
}

void check_method_divisions(const MethodSpec& spec) {
  const bool has_m = spec.m > 0;
  const bool has_n = spec.n > 0;
  if (spec.method == "reference" && (has_m || has_n)) {
    throw admmsplit::ParameterError("reference takes neither --m nor --n");
  }
  if (spec.method == "consensus" && (!has_m || has_n)) {
    throw admmsplit::ParameterError("consensus takes --m only");
  }
  if (spec.method == "sectioning" && (has_m || !has_n)) {
    throw admmsplit::ParameterError("sectioning takes --n only");
  }
  if (spec.method == "hybrid" && (!has_m || !has_n)) {
    throw admmsplit::ParameterError("hybrid takes both --m and --n");
  }
}

std::optional<std::uint64_t> method_per_node_elements(const MethodSpec& spec,
                                                      const SensingProblem& problem) {
  if (spec.method == "reference") return std::nullopt;
  Method method = Method::Consensus;
  std::size_t m = 1, n = 1;
  if (spec.method == "consensus") {
    method = Method::Consensus;
    m = spec.m;
  } else if (spec.method == "sectioning") {
    method = Method::Sectioning;
    n = spec.n;
  } else {
    method = Method::Hybrid;
    m = spec.m;
    n = spec.n;
  }
  return admmsplit::per_node_elements(method, problem.n_pix(), problem.n_meas(), m, n);
}

// ---- gen ----------------------------------------------------------------

int cmd_gen(const GenFlags& flags, const std::string& out_dir) {
  const SensingProblem problem = generate_from_flags(flags);
  write_problem_dir(out_dir, problem, flags);
  std::cout << "wrote " << out_dir << ": H " << flags.nm << "x" << flags.np << ", k=" << flags.k
            << ", kind=" << flags.kind << ", seed=" << flags.seed << "\n";
  return 0;
}

// ---- solve ----------------------------------------------------------------

int cmd_solve(const ProblemSource& src, const MethodSpec& spec, const SolverFlags& flags,
              const std::string& out_dir, bool fingerprint) {
  check_method_divisions(spec);
  const SensingProblem problem = src.resolve();
  const SolverConfig cfg = flags.config(src.gen.seed);
  const SolveOptions opts = flags.options();

  const SolveReport report = run_method(spec, problem, cfg, opts);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  admmsplit::write_cvec(dir / "solution.cmat", report.solution);
  write_trace_csv(dir / "trace.csv", report.trace);
  write_ledger_csv(dir / "ledger.csv", report.ledger, Convention::SenderOnceBroadcast);
  write_json(dir / "metrics.json", metrics_json(report));

  std::cout << "method=" << spec.method << " iterations=" << report.iterations_run
            << " objective=" << fmt_double(report.objective)
            << " primal=" << fmt_double(report.trace.primal.back())
            << " dual=" << fmt_double(report.trace.dual.back());
  if (report.metrics) std::cout << " nmse=" << fmt_double(report.metrics->nmse);
  std::cout << "\n";

  if (fingerprint) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char* name : {"solution.cmat", "trace.csv", "ledger.csv", "metrics.json"}) {
      h = fnv1a_file(dir / name, h);
    }
    std::cout << "fingerprint " << hex64(h) << "\n";
  }
  return 0;
}

// ---- comm -----------------------------------------------------------------

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  bool single() const { return lo == hi; }
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  Range r;
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoull(text);
    } else {
      r.lo = std::stoull(text.substr(0, dots));
      r.hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw admmsplit::ParameterError("bad range: " + text + " (use K or A..B)");
  }
  if (r.lo == 0 || r.hi < r.lo) throw admmsplit::ParameterError("bad range: " + text);
  return r;
}

struct CommRow {
  std::size_t m = 0, n = 0;
  std::optional<std::uint64_t> consensus, sectioning, hybrid;
  std::optional<admmsplit::EfficiencyReport> report;  // set when all three exist
};

CommRow comm_row(std::size_t np, std::size_t nm, std::size_t m, std::size_t n) {
  CommRow row;
  row.m = m;
  row.n = n;
  if (nm % m == 0) row.consensus = admmsplit::per_node_elements(Method::Consensus, np, nm, m, n);
  if (np % n == 0) row.sectioning = admmsplit::per_node_elements(Method::Sectioning, np, nm, m, n);
  if (nm % m == 0 && np % n == 0) {
    row.hybrid = admmsplit::per_node_elements(Method::Hybrid, np, nm, m, n);
    row.report = admmsplit::build_efficiency_report(np, nm, m, n);
  }
  return row;
}

void print_comm_point(std::size_t np, std::size_t nm, const CommRow& row) {
  const double ratio = static_cast<double>(np) / static_cast<double>(nm);
  std::printf("per-node elements per iteration  (N_p=%zu, N_m=%zu, M=%zu, N=%zu, R=%.4f)\n", np,
              nm, row.m, row.n, ratio);
  const auto line = [&](const char* name, const std::optional<std::uint64_t>& elems) {
    if (elems) {
      const double red = 100.0 * (1.0 - static_cast<double>(*elems) / (2.0 * static_cast<double>(np)));
      std::printf("  %-11s %12llu   reduction %s%%\n", name,
                  static_cast<unsigned long long>(*elems), fmt_pct(red).c_str());
    } else {
      std::printf("  %-11s %12s   (division does not fit)\n", name, "-");
    }
  };
  line("consensus", row.consensus);
  line("sectioning", row.sectioning);
  line("hybrid", row.hybrid);
  if (row.report) {
    const auto& r = *row.report;
    const auto verdict = [](bool count_based, bool ineq_based) {
      std::string s = std::string(count_based ? "yes" : "no") + " / " +
                      (ineq_based ? "yes" : "no");
      if (count_based != ineq_based) s += "   [frontier disagrees; counts govern]";
      return s;
    };
    std::printf("frontier verdicts (count-based / inequality-based)\n");
    std::printf("  sectioning < consensus : %s\n",
                verdict(r.count_sectioning_vs_consensus, r.ineq_sectioning_vs_consensus).c_str());
    std::printf("  hybrid     < consensus : %s\n",
                verdict(r.count_hybrid_vs_consensus, r.ineq_hybrid_vs_consensus).c_str());
    std::printf("  hybrid     < sectioning: %s\n",
                verdict(r.count_hybrid_vs_sectioning, r.ineq_hybrid_vs_sectioning).c_str());
  }
}

int cmd_comm(std::size_t np, std::size_t nm, const std::string& m_text,
             const std::string& n_text, const std::string& csv_path) {
  const Range m_range = parse_range(m_text);
  const Range n_range = parse_range(n_text);

  std::vector<CommRow> rows;
  for (std::size_t m = m_range.lo; m <= m_range.hi; ++m) {
    for (std::size_t n = n_range.lo; n <= n_range.hi; ++n) {
      if (m > nm || n > np) continue;
      rows.push_back(comm_row(np, nm, m, n));
    }
  }

  if (m_range.single() && n_range.single() && rows.size() == 1) {
    print_comm_point(np, nm, rows.front());
  } else {
    std::printf("%6s %6s %12s %12s %12s %8s %8s %8s\n", "M", "N", "consensus", "sectioning",
                "hybrid", "red_c%", "red_s%", "red_h%");
    for (const CommRow& row : rows) {
      const auto cell = [](const std::optional<std::uint64_t>& v) {
        return v ? std::to_string(*v) : std::string("-");
      };
      const auto red = [&](const std::optional<std::uint64_t>& v) {
        if (!v) return std::string("-");
        return fmt_pct(100.0 * (1.0 - static_cast<double>(*v) / (2.0 * static_cast<double>(np))));
      };
      std::printf("%6zu %6zu %12s %12s %12s %8s %8s %8s\n", row.m, row.n,
                  cell(row.consensus).c_str(), cell(row.sectioning).c_str(),
                  cell(row.hybrid).c_str(), red(row.consensus).c_str(),
                  red(row.sectioning).c_str(), red(row.hybrid).c_str());
    }
  }

  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw admmsplit::IoError("cannot write " + csv_path);
    out << "m,n,consensus,sectioning,hybrid,consensus_reduction_pct,sectioning_reduction_pct,"
           "hybrid_reduction_pct,count_sectioning_lt_consensus,count_hybrid_lt_consensus,"
           "count_hybrid_lt_sectioning,ineq_sectioning_lt_consensus,ineq_hybrid_lt_consensus,"
           "ineq_hybrid_lt_sectioning,frontiers_agree\n";
    for (const CommRow& row : rows) {
      const auto cell = [](const std::optional<std::uint64_t>& v) {
        return v ? std::to_string(*v) : std::string();
      };
      const auto red = [&](const std::optional<std::uint64_t>& v) {
        if (!v) return std::string();
        return fmt_pct(100.0 * (1.0 - static_cast<double>(*v) / (2.0 * static_cast<double>(np))));
      };
      out << row.m << ',' << row.n << ',' << cell(row.consensus) << ',' << cell(row.sectioning)
          << ',' << cell(row.hybrid) << ',' << red(row.consensus) << ',' << red(row.sectioning)
          << ',' << red(row.hybrid) << ',';
      if (row.report) {
        const auto& r = *row.report;
        out << r.count_sectioning_vs_consensus << ',' << r.count_hybrid_vs_consensus << ','
            << r.count_hybrid_vs_sectioning << ',' << r.ineq_sectioning_vs_consensus << ','
            << r.ineq_hybrid_vs_consensus << ',' << r.ineq_hybrid_vs_sectioning << ','
            << r.frontiers_agree();
      } else {
        out << ",,,,,,";
      }
      out << '\n';
    }
  }
  return 0;
}

// ---- compare ----------------------------------------------------------------

std::vector<MethodSpec> parse_method_specs(const std::string& text) {
  std::vector<MethodSpec> specs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    MethodSpec spec;
    const auto colon = item.find(':');
    spec.method = item.substr(0, colon);
    if (colon != std::string::npos) {
      const std::string arg = item.substr(colon + 1);
      try {
        if (spec.method == "hybrid") {
          const auto x = arg.find('x');
          if (x == std::string::npos) throw std::invalid_argument("need MxN");
          spec.m = std::stoull(arg.substr(0, x));
          spec.n = std::stoull(arg.substr(x + 1));
        } else if (spec.method == "consensus") {
          spec.m = std::stoull(arg);
        } else if (spec.method == "sectioning") {
          spec.n = std::stoull(arg);
        } else {
          throw std::invalid_argument("reference takes no divisions");
        }
      } catch (const std::exception& e) {
        throw admmsplit::ParameterError("bad method spec '" + item + "': " + e.what());
      }
    }
    check_method_divisions(spec);
    specs.push_back(spec);
  }
  if (specs.empty()) throw admmsplit::ParameterError("no methods given");
  return specs;
}

std::string spec_label(const MethodSpec& spec) {
  std::string label = spec.method;
  if (spec.method == "consensus") label += ":" + std::to_string(spec.m);
  if (spec.method == "sectioning") label += ":" + std::to_string(spec.n);
  if (spec.method == "hybrid") {
    label += ":" + std::to_string(spec.m) + "x" + std::to_string(spec.n);
  }
  return label;
}

int cmd_compare(const ProblemSource& src, const std::string& methods_text,
                const SolverFlags& flags, const std::string& out_path, bool fingerprint) {
  const std::vector<MethodSpec> specs = parse_method_specs(methods_text);
  const SensingProblem problem = src.resolve();
  const SolverConfig cfg = flags.config(src.gen.seed);
  const SolveOptions opts = flags.options();

  json entries = json::array();
  for (const MethodSpec& spec : specs) {
    const auto start = std::chrono::steady_clock::now();
    const SolveReport report = run_method(spec, problem, cfg, opts);
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();

    json entry;
    entry["method"] = spec.method;
    entry["label"] = spec_label(spec);
    entry["m"] = spec.m > 0 ? json(spec.m) : json(nullptr);
    entry["n"] = spec.n > 0 ? json(spec.n) : json(nullptr);
    entry["objective"] = report.objective;
    entry["final_primal"] = report.trace.primal.back();
    entry["final_dual"] = report.trace.dual.back();
    entry["iterations_run"] = report.iterations_run;
    if (report.metrics) {
      entry["nmse"] = report.metrics->nmse;
    } else {
      entry["nmse"] = nullptr;
    }
    const auto elems = method_per_node_elements(spec, problem);
    entry["per_node_elements"] = elems ? json(*elems) : json(nullptr);
    entry["wall_clock_ms"] = ms;
    entries.push_back(std::move(entry));
  }

  const auto winner = [&](const char* key, bool skip_null) -> json {
    json best = nullptr;
    double best_value = 0.0;
    for (const auto& entry : entries) {
      if (entry[key].is_null()) {
        if (skip_null) continue;
        return nullptr;
      }
      const double value = entry[key].get<double>();
      if (best.is_null() || value < best_value) {
        best = entry["label"];
        best_value = value;
      }
    }
    return best;
  };

  json out;
  out["schema_version"] = kSchemaVersion;
  out["problem"] = {{"nm", problem.n_meas()}, {"np", problem.n_pix()}};
  out["config"] = {{"rho", cfg.rho},
                   {"lambda", cfg.lambda},
                   {"scl", cfg.scl},
                   {"max_iters", cfg.max_iters},
                   {"eps_pri", cfg.eps_pri},
                   {"eps_dual", cfg.eps_dual}};
  out["entries"] = entries;
  out["winners"] = {{"objective", winner("objective", false)},
                    {"nmse", winner("nmse", true)},
                    {"final_primal", winner("final_primal", false)},
                    {"communication", winner("per_node_elements", true)},
                    {"wall_clock", winner("wall_clock_ms", false)}};

  write_json(out_path, out);
  std::cout << "wrote " << out_path << " (" << entries.size() << " entries)\n";
  for (const auto& entry : entries) {
    std::cout << "  " << entry["label"].get<std::string>()
              << " objective=" << fmt_double(entry["objective"].get<double>());
    if (!entry["nmse"].is_null()) {
      std::cout << " nmse=" << fmt_double(entry["nmse"].get<double>());
    }
    std::cout << "\n";
  }

  if (fingerprint) {
    json canonical = out;
    for (auto& entry : canonical["entries"]) entry.erase("wall_clock_ms");
    canonical["winners"].erase("wall_clock");
    const std::string text = canonical.dump();
    std::cout << "fingerprint " << hex64(fnv1a_bytes(text.data(), text.size(),
                                                     0xCBF29CE484222325ULL))
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Distributed sparse-recovery ADMM toolkit: row-, column- and grid-split solvers\n"
      "for g = H u + w with norm-1 regularization, plus communication analysis."};
  app.require_subcommand(1);

  // gen
  GenFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded synthetic instance");
  gen->add_option("--nm", gen_flags.nm, "Measurements (rows)")->required();
  gen->add_option("--np", gen_flags.np, "Pixels (columns)")->required();
  gen->add_option("--k", gen_flags.k, "Sparsity of the ground truth")->required();
  gen->add_option("--snr", gen_flags.snr_db, "SNR in dB (inf = noiseless)");
  gen->add_option("--seed", gen_flags.seed, "Generator seed (mandatory)")->required();
  gen->add_option("--kind", gen_flags.kind, "complex-gaussian | random-phase")
      ->check(CLI::IsMember({"complex-gaussian", "random-phase"}));
  gen->add_option("--out", gen_out, "Output directory")->required();

  // solve
  ProblemSource solve_src;
  MethodSpec solve_spec;
  SolverFlags solve_flags;
  std::string solve_out;
  bool solve_fingerprint = false;
  CLI::App* solve = app.add_subcommand("solve", "Run one solver and write report files");
  solve->add_option("--method", solve_spec.method, "reference | consensus | sectioning | hybrid")
      ->required()
      ->check(CLI::IsMember({"reference", "consensus", "sectioning", "hybrid"}));
  solve->add_option("--m", solve_spec.m, "Row divisions M");
  solve->add_option("--n", solve_spec.n, "Column divisions N");
  add_problem_source_flags(solve, solve_src);
  add_solver_flags(solve, solve_flags);
  solve->add_option("--out", solve_out, "Output directory")->required();
  solve->add_flag("--fingerprint", solve_fingerprint, "Print a stable hash of all outputs");

  // comm
  std::size_t comm_np = 0, comm_nm = 0;
  std::string comm_m = "1", comm_n = "1", comm_csv;
  CLI::App* comm = app.add_subcommand("comm", "Closed-form communication analysis");
  comm->add_option("--np", comm_np, "Pixels (columns)")->required();
  comm->add_option("--nm", comm_nm, "Measurements (rows)")->required();
  comm->add_option("--m", comm_m, "Row divisions M, single value or sweep A..B");
  comm->add_option("--n", comm_n, "Column divisions N, single value or sweep A..B");
  comm->add_option("--csv", comm_csv, "Also write the table as CSV");

  // compare
  ProblemSource compare_src;
  std::string compare_methods, compare_out = "compare.json";
  SolverFlags compare_flags;
  bool compare_fingerprint = false;
  CLI::App* compare = app.add_subcommand("compare", "Run several methods on one problem");
  compare->add_option("--methods", compare_methods,
                      "Comma list: reference,consensus:M,sectioning:N,hybrid:MxN")
      ->required();
  add_problem_source_flags(compare, compare_src);
  add_solver_flags(compare, compare_flags);
  compare->add_option("--out", compare_out, "Output JSON path");
  compare->add_flag("--fingerprint", compare_fingerprint,
                    "Print a stable hash of the deterministic outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_flags, gen_out);
    if (solve->parsed()) {
      return cmd_solve(solve_src, solve_spec, solve_flags, solve_out, solve_fingerprint);
    }
    if (comm->parsed()) return cmd_comm(comm_np, comm_nm, comm_m, comm_n, comm_csv);
    if (compare->parsed()) {
      return cmd_compare(compare_src, compare_methods, compare_flags, compare_out,
                         compare_fingerprint);
    }
  } catch (const admmsplit::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (last good iteration: " << e.last_good_iteration() << ")\n";
    return kExitNumerical;
  } catch (const admmsplit::SingularityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const admmsplit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
