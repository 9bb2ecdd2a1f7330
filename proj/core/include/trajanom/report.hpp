#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "trajanom/detector.hpp"
#include "trajanom/harness.hpp"

namespace trajanom {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const DetectorConfig& cfg);
ordered_json to_json(const SynthConfig& cfg);
ordered_json to_json(const Metrics& m);

/// Report document. Key order is fixed, so equal reports serialize to equal
/// bytes:
///   scene_digest, config, trajectory_ids,
///   per_space[{space, k, abstained, degenerate, bandwidth, centers,
///              assignments, H, thresh, flags}],
///   votes, n_voting, anomalies, warnings
ordered_json to_json(const AnomalyReport& report);

/// Per-seed rows followed by mean/std aggregates.
ordered_json to_json(const BenchSummary& summary);

/// Two-space indented dump terminated by a newline.
std::string dump(const ordered_json& doc);

}  // namespace trajanom
