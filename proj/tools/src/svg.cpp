#include "trajanom/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "trajanom/error.hpp"
#include "trajanom/features.hpp"
#include "trajanom/report.hpp"

namespace trajanom::cli {

std::string_view to_string(Panel p) noexcept {
  switch (p) {
    case Panel::Clusters: return "clusters";
    case Panel::Anomalies: return "anomalies";
    case Panel::Overall: return "overall";
    case Panel::Scene: return "scene";
  }
  return "unknown";
}

PlotSpec parse_panels(std::string_view list) {
  PlotSpec spec;
  spec.panels.clear();
  while (!list.empty()) {
    const auto comma = list.find(',');
    auto name = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name.empty()) continue;
    bool found = false;
    for (auto p : {Panel::Clusters, Panel::Anomalies, Panel::Overall, Panel::Scene}) {
      if (to_string(p) == name) {
        spec.panels.insert(p);
        found = true;
      }
    }
    if (!found) {
      throw Error(Errc::InvalidValue, "plot.panels: unknown panel '" + std::string(name) +
                                          "' (clusters, anomalies, overall, scene)");
    }
  }
  if (spec.panels.empty()) throw Error(Errc::InvalidValue, "plot.panels: select at least one panel");
  return spec;
}

namespace {

// Colour-blind-friendly cluster palette without the anomaly red.
constexpr std::array<std::string_view, 10> kClusterPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79"};

constexpr double kCanvas = 640.0;
constexpr double kMargin = 20.0;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

struct Canvas {
  BoundingBox box;
  double scale = 1.0;

  explicit Canvas(const BoundingBox& b) : box(b) {
    const double span = std::max(box.x_max - box.x_min, box.y_max - box.y_min);
    scale = span > 0.0 ? (kCanvas - 2.0 * kMargin) / span : 1.0;
  }
  double px(double x) const { return kMargin + (x - box.x_min) * scale; }
  double py(double y) const { return kCanvas - kMargin - (y - box.y_min) * scale; }
};

class SvgWriter {
 public:
  SvgWriter(const Canvas& canvas, std::string_view title, const AnomalyReport& report) : canvas_(canvas) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kCanvas) + "\" height=\"" +
            fixed(kCanvas) + "\" viewBox=\"0 0 " + fixed(kCanvas) + " " + fixed(kCanvas) + "\">\n";
    out_ += "<title>" + escape(title) + "</title>\n";
    out_ += "<metadata scene-digest=\"" + escape(report.scene_digest) + "\">" +
            escape(trajanom::to_json(report.config).dump()) + "</metadata>\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  }

  void polyline(const Trajectory& traj, std::string_view color, double width, std::string_view cls) {
    out_ += "<polyline class=\"" + std::string(cls) + "\" data-id=\"" + escape(traj.id) +
            "\" fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + fixed(width) +
            "\" points=\"";
    bool first = true;
    for (const auto& s : traj.samples) {
      if (!first) out_ += ' ';
      first = false;
      out_ += fixed(canvas_.px(s.x)) + "," + fixed(canvas_.py(s.y));
    }
    out_ += "\"/>\n";
  }

  void start_marker(const Trajectory& traj) {
    const auto& s = traj.samples.front();
    out_ += "<circle class=\"start\" data-id=\"" + escape(traj.id) + "\" cx=\"" + fixed(canvas_.px(s.x)) +
            "\" cy=\"" + fixed(canvas_.py(s.y)) + "\" r=\"2.50\" fill=\"" + std::string(kStartColor) + "\"/>\n";
  }

  std::string finish() && {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  const Canvas& canvas_;
  std::string out_;
};

std::vector<bool> anomaly_mask(const AnomalyReport& report) {
  std::vector<bool> mask(report.trajectory_ids.size(), false);
  for (std::size_t i = 0; i < report.trajectory_ids.size(); ++i) {
    mask[i] = std::binary_search(report.anomalies.begin(), report.anomalies.end(), report.trajectory_ids[i],
                                 [](const std::string& a, const std::string& b) { return id_less(a, b); });
  }
  return mask;
}

}  // namespace

std::vector<SvgDocument> render_svg(const AnomalyReport& report, const Scene& scene, const PlotSpec& spec) {
  if (spec.panels.empty()) throw Error(Errc::InvalidValue, "no panel selected");
  if (scene_digest(scene) != report.scene_digest || scene.size() != report.trajectory_ids.size()) {
    throw Error(Errc::DigestMismatch, "report was produced from a different scene");
  }

  const Canvas canvas(scene.bbox());
  const auto is_anomaly = anomaly_mask(report);
  std::vector<SvgDocument> docs;

  if (spec.panels.contains(Panel::Clusters)) {
    for (const auto& sr : report.spaces) {
      const std::string name(to_string(sr.space));
      SvgWriter w(canvas, "clusters: " + name, report);
      for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto color = kClusterPalette[sr.model.assignments[i] % kClusterPalette.size()];
        w.polyline(scene[i], color, 1.0, "traj");
      }
      docs.push_back({"clusters_" + name + ".svg", std::move(w).finish()});
    }
  }
  if (spec.panels.contains(Panel::Anomalies)) {
    for (const auto& sr : report.spaces) {
      const std::string name(to_string(sr.space));
      SvgWriter w(canvas, "anomalies: " + name, report);
      for (std::size_t i = 0; i < scene.size(); ++i) {
        if (!sr.flags[i]) w.polyline(scene[i], kMutedColor, 0.8, "traj");
      }
      for (std::size_t i = 0; i < scene.size(); ++i) {
        if (sr.flags[i]) w.polyline(scene[i], kAnomalyColor, 1.6, "traj");
      }
      docs.push_back({"anomalies_" + name + ".svg", std::move(w).finish()});
    }
  }
  if (spec.panels.contains(Panel::Overall)) {
    SvgWriter w(canvas, "overall anomalies", report);
    for (std::size_t i = 0; i < scene.size(); ++i) {
      if (!is_anomaly[i]) w.polyline(scene[i], kNormalColor, 0.8, "traj");
    }
    for (std::size_t i = 0; i < scene.size(); ++i) {
      if (is_anomaly[i]) w.polyline(scene[i], kAnomalyColor, 1.6, "traj");
    }
    for (std::size_t i = 0; i < scene.size(); ++i) w.start_marker(scene[i]);
    docs.push_back({"overall.svg", std::move(w).finish()});
  }
  if (spec.panels.contains(Panel::Scene)) {
    SvgWriter w(canvas, "scene", report);
    for (std::size_t i = 0; i < scene.size(); ++i) {
      w.polyline(scene[i], is_anomaly[i] ? kAnomalyColor : kNormalColor, 1.0, "traj");
    }
    docs.push_back({"scene.svg", std::move(w).finish()});
  }
  return docs;
}

}  // namespace trajanom::cli
