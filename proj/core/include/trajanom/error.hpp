#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trajanom {

/// Failure categories raised by the library. The numeric values double as
/// the CLI exit codes, so they must never be renumbered.
enum class Errc {
  EmptyInput = 10,
  NonMonotonicTime = 11,
  MalformedRow = 12,
  DegenerateScene = 13,
  MismatchedResolution = 20,
  ZeroWeight = 30,
  DimensionMismatch = 40,
  SingleCluster = 41,
  AllZeroDistances = 42,
  InvalidConfig = 50,
  IdMismatch = 51,
  UnknownKey = 60,
  InvalidValue = 61,
  DigestMismatch = 62,
  Io = 70,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::size_t line = 0);

  Errc code() const noexcept { return code_; }
  /// 1-based input line for parse errors, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace trajanom
