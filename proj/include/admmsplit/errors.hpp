#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace admmsplit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (matrix/vector sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Block or node index outside the partition.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values where finite ones are required.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, std::size_t last_good_iteration = 0)
      : Error(what), last_good_iteration_(last_good_iteration) {}

  /// Last iteration that completed with finite iterates (0 if the failure
  /// precedes the first iteration).
  std::size_t last_good_iteration() const { return last_good_iteration_; }

 private:
  std::size_t last_good_iteration_ = 0;
};

/// Factorization breakdown of a matrix that should be positive definite.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Invalid or non-divisible partition request.
class PartitionError : public Error {
 public:
  using Error::Error;
};

/// Invalid scalar parameter (rho, lambda, sparsity, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. Carries the byte offset of the defect.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t byte_offset = 0)
      : Error(what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_ = 0;
};

/// Underlying I/O failure (open/read/write).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Recovery metrics undefined for the given inputs.
class MetricsError : public Error {
 public:
  using Error::Error;
};

}  // namespace admmsplit
