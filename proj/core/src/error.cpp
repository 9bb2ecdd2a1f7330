#include "trajanom/error.hpp"

namespace trajanom {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonMonotonicTime: return "NonMonotonicTime";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::DegenerateScene: return "DegenerateScene";
    case Errc::MismatchedResolution: return "MismatchedResolution";
    case Errc::ZeroWeight: return "ZeroWeight";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingleCluster: return "SingleCluster";
    case Errc::AllZeroDistances: return "AllZeroDistances";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IdMismatch: return "IdMismatch";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::DigestMismatch: return "DigestMismatch";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message, std::size_t line) {
  std::string out(to_string(code));
  if (line > 0) out += " at line " + std::to_string(line);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace trajanom
