#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

// CMAT binary layout:
//   bytes  0-3   magic "CMX1"
//   bytes  4-11  rows, unsigned 64-bit little-endian
//   bytes 12-19  cols, unsigned 64-bit little-endian
//   payload      rows*cols entries, row-major, each two IEEE-754 binary64
//                little-endian values (real then imaginary)
// Vectors are stored with cols = 1. Round trips are bit-exact.

static_assert(std::endian::native == std::endian::little,
              "CMAT I/O assumes a little-endian host");
static_assert(sizeof(double) == 8, "CMAT I/O assumes IEEE-754 binary64 doubles");

namespace detail {

inline constexpr char kCmatMagic[4] = {'C', 'M', 'X', '1'};
inline constexpr std::size_t kCmatHeaderBytes = 20;

inline void put_u64(std::ofstream& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

}  // namespace detail

inline void write_cmat(const std::filesystem::path& path, const CMatrix& a) {
  if (a.empty()) throw ParameterError("write_cmat: empty matrix");
  if (!all_finite(a)) throw NumericalError("write_cmat: non-finite entries");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_cmat: cannot open " + path.string());
  out.write(detail::kCmatMagic, 4);
  detail::put_u64(out, a.rows());
  detail::put_u64(out, a.cols());
  out.write(reinterpret_cast<const char*>(a.data()),
            static_cast<std::streamsize>(a.size() * sizeof(Complex)));
  out.flush();
  if (!out) throw IoError("write_cmat: write failed for " + path.string());
}

inline CMatrix read_cmat(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_cmat: cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);

  char header[detail::kCmatHeaderBytes];
  if (file_size < detail::kCmatHeaderBytes) {
    throw FormatError("read_cmat: truncated header in " + path.string() + " (file ends at byte " +
                          std::to_string(file_size) + ", header needs 20)",
                      file_size);
  }
  in.read(header, detail::kCmatHeaderBytes);
  if (std::memcmp(header, detail::kCmatMagic, 4) != 0) {
    throw FormatError("read_cmat: bad magic in " + path.string(), 0);
  }
  std::uint64_t rows = 0, cols = 0;
  std::memcpy(&rows, header + 4, 8);
  std::memcpy(&cols, header + 12, 8);
  if (rows == 0 || cols == 0) {
    throw FormatError("read_cmat: zero dimension declared in " + path.string(), 4);
  }
  if (cols != 0 && rows > std::numeric_limits<std::uint64_t>::max() / cols) {
    throw FormatError("read_cmat: dimension overflow in " + path.string(), 4);
  }
  const std::uint64_t entries = rows * cols;
  if (entries > (std::uint64_t(1) << 32)) {
    throw FormatError("read_cmat: implausible element count in " + path.string(), 4);
  }
  const std::size_t expected = detail::kCmatHeaderBytes + entries * sizeof(Complex);
  if (file_size < expected) {
    throw FormatError("read_cmat: declared " + std::to_string(entries) + " entries but " +
                          path.string() + " ends at byte " + std::to_string(file_size) +
                          " (expected " + std::to_string(expected) + ")",
                      file_size);
  }
  if (file_size > expected) {
    throw FormatError("read_cmat: trailing bytes after payload in " + path.string(), expected);
  }
  CMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(entries * sizeof(Complex)));
  if (!in) throw IoError("read_cmat: read failed for " + path.string());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_finite(a.data()[i])) {
      throw FormatError("read_cmat: non-finite entry " + std::to_string(i) + " in " + path.string(),
                        detail::kCmatHeaderBytes + i * sizeof(Complex));
    }
  }
  return a;
}

inline void write_cvec(const std::filesystem::path& path, const CVector& v) {
  if (v.empty()) throw ParameterError("write_cvec: empty vector");
  CMatrix a(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) a(i, 0) = v[i];
  write_cmat(path, a);
}

inline CVector read_cvec(const std::filesystem::path& path) {
  const CMatrix a = read_cmat(path);
  if (a.cols() != 1) {
    throw FormatError("read_cvec: " + path.string() + " holds a " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " matrix, expected a column vector",
                      12);
  }
  CVector v(a.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(i, 0);
  return v;
}

}  // namespace admmsplit
