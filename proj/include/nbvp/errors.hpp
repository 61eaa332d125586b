#pragma once

#include <stdexcept>
#include <string>

namespace nbvp {

// Invalid arguments are reported with std::invalid_argument and division by
// zero in a nonlinearity with std::domain_error. The types below cover the
// failure modes that are specific to this library.

/// The maximized ratio of a threshold branch is non-positive everywhere.
class ThresholdUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ||Tu_n|| vanished, so the normalization step cannot be taken.
class SolverBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterate became NaN or infinite.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace nbvp
