#pragma once

#include <string>
#include <string_view>

#include "trajanom/detector.hpp"
#include "trajanom/harness.hpp"
#include "trajanom/report.hpp"
#include "trajanom/cli/svg.hpp"

namespace trajanom::cli {

/// Every tunable knob of the pipeline, the generator and the plots.
///
/// The text form is one `key = value` per line with dotted keys, `#` starting
/// a comment. Unknown keys and out-of-range values are rejected while
/// loading. List-valued keys:
///
///   features.epsilon_fractions = 0.05, 0.10, 0.20
///   synth.lanes     = x y dx dy length half_width speed_mean speed_std count; ...
///   synth.anomalies = counter_flow:2, erratic_speed:1, off_lane:1, loiter:1
///   plot.panels     = clusters, anomalies, overall, scene
struct CliConfig {
  DetectorConfig detector;
  SynthConfig synth = SynthConfig::benchmark_default();
  PlotSpec plots;
};

CliConfig parse_config(std::string_view text);

/// Reads and parses a config file; an empty path yields the defaults.
CliConfig load_config(const std::string& path);

/// Effective configuration as flat dotted keys, in a fixed order.
ordered_json to_json(const CliConfig& cfg);

}  // namespace trajanom::cli
