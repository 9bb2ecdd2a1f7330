#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace trajanom::cli {

/// Exit statuses. Library failures exit with the numeric value of their
/// trajanom::Errc (10-70); the values below cover the rest.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 99;

struct DetectOptions {
  std::string input;
  std::string config;   // optional
  std::string report;
  std::string svg_dir;  // optional
  std::optional<std::string> panels;
};

struct BenchOptions {
  std::string config;
  std::string out;
};

struct SynthOptions {
  std::string config;
  std::string out_scene;
  std::string out_labels;
};

/// Each command prints a short summary to `out`, a one-line diagnostic to
/// `err` on failure, and returns the exit status. Output files are written
/// through a temporary and renamed, so a failed run leaves none behind.
int cmd_detect(const DetectOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` atomically (temporary file, then rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace trajanom::cli
