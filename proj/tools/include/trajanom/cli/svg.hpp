#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trajanom/detector.hpp"
#include "trajanom/trajmodel.hpp"

namespace trajanom::cli {

enum class Panel {
  Clusters,   // one per feature space, trajectories coloured by cluster
  Anomalies,  // one per feature space, flagged trajectories in red
  Overall,    // final anomalies in red over blue normals, start points marked
  Scene,      // whole scene, anomalies red, normals blue
};

std::string_view to_string(Panel p) noexcept;

struct PlotSpec {
  std::set<Panel> panels = {Panel::Clusters, Panel::Anomalies, Panel::Overall, Panel::Scene};
};

/// Parses a comma-separated panel list such as "overall,scene".
PlotSpec parse_panels(std::string_view list);

struct SvgDocument {
  std::string name;  // file name, e.g. "clusters_shape.svg"
  std::string content;
};

inline constexpr std::string_view kAnomalyColor = "#d62728";
inline constexpr std::string_view kNormalColor = "#1f77b4";
inline constexpr std::string_view kMutedColor = "#9e9e9e";
inline constexpr std::string_view kStartColor = "#2ca02c";

/// Renders the selected panels. Throws DigestMismatch when the report was
/// not produced from `scene`, InvalidValue when no panel is selected.
std::vector<SvgDocument> render_svg(const AnomalyReport& report, const Scene& scene, const PlotSpec& spec);

}  // namespace trajanom::cli
