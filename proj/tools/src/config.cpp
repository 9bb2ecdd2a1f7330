#include "trajanom/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "trajanom/cli/commands.hpp"
#include "trajanom/error.hpp"

namespace trajanom::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

[[noreturn]] void invalid(std::string_view key, std::string_view constraint) {
  throw Error(Errc::InvalidValue, std::string(key) + ": " + std::string(constraint));
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    invalid(key, "expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  v = trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    invalid(key, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

double positive(std::string_view key, std::string_view v) {
  const double d = to_double(key, v);
  if (!(d > 0.0)) invalid(key, "must be > 0");
  return d;
}

double non_negative(std::string_view key, std::string_view v) {
  const double d = to_double(key, v);
  if (!(d >= 0.0)) invalid(key, "must be >= 0");
  return d;
}

std::vector<LaneSpec> parse_lanes(std::string_view key, std::string_view v) {
  std::vector<LaneSpec> lanes;
  for (auto item : split(v, ';')) {
    if (item.empty()) continue;
    std::istringstream fields{std::string(item)};
    std::vector<std::string> words;
    for (std::string w; fields >> w;) words.push_back(w);
    if (words.size() != 9) {
      invalid(key, "each lane needs 9 fields: x y dx dy length half_width speed_mean speed_std count");
    }
    LaneSpec lane;
    lane.start = {to_double(key, words[0]), to_double(key, words[1])};
    lane.direction = {to_double(key, words[2]), to_double(key, words[3])};
    if (lane.direction.x == 0.0 && lane.direction.y == 0.0) invalid(key, "lane direction must be non-zero");
    lane.length = positive(key, words[4]);
    lane.half_width = non_negative(key, words[5]);
    lane.speed_mean = positive(key, words[6]);
    lane.speed_std = non_negative(key, words[7]);
    lane.count = to_uint(key, words[8]);
    lanes.push_back(lane);
  }
  if (lanes.empty()) invalid(key, "at least one lane is required");
  return lanes;
}

std::vector<AnomalySpec> parse_anomalies(std::string_view key, std::string_view v) {
  std::vector<AnomalySpec> out;
  if (trim(v).empty()) return out;
  for (auto item : split(v, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) invalid(key, "entries look like archetype:count");
    const auto name = trim(item.substr(0, colon));
    const auto archetype = archetype_from_string(name);
    if (!archetype) {
      invalid(key, "unknown archetype '" + std::string(name) +
                       "' (counter_flow, erratic_speed, off_lane, loiter)");
    }
    out.push_back(AnomalySpec{*archetype, to_uint(key, item.substr(colon + 1))});
  }
  return out;
}

using Setter = std::function<void(CliConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"model.min_samples",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto n = to_uint(k, v);
         if (n < 2) invalid(k, "must be >= 2");
         c.detector.model.min_samples = n;
       }},
      {"features.epsilon_fractions",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto parts = split(v, ',');
         if (parts.size() != 3) invalid(k, "expected three comma-separated fractions");
         double prev = 0.0;
         for (std::size_t i = 0; i < 3; ++i) {
           const double f = to_double(k, parts[i]);
           if (!(f > prev) || f > 1.0) invalid(k, "fractions must be strictly increasing within (0, 1]");
           c.detector.features.epsilon_fractions[i] = prev = f;
         }
       }},
      {"features.resample_count",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto n = to_uint(k, v);
         if (n < 4) invalid(k, "must be >= 4");
         c.detector.features.resample_count = n;
       }},
      {"cluster.kernel",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto p = kernel_profile_from_string(trim(v));
         if (!p) invalid(k, "must be gaussian or epanechnikov");
         c.detector.cluster.kernel.profile = *p;
       }},
      {"cluster.bandwidth_factor",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         c.detector.cluster.bandwidth_factor = positive(k, v);
       }},
      {"cluster.bandwidth",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         c.detector.cluster.bandwidth = positive(k, v);
       }},
      {"cluster.max_iterations",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto n = to_uint(k, v);
         if (n == 0) invalid(k, "must be > 0");
         c.detector.cluster.max_iterations = n;
       }},
      {"cluster.convergence_tol",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         c.detector.cluster.convergence_tol = positive(k, v);
       }},
      {"cluster.merge_radius_factor",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const double f = positive(k, v);
         if (!(f < 1.0)) invalid(k, "must lie in (0, 1)");
         c.detector.cluster.merge_radius_factor = f;
       }},
      {"detector.kappa",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const double kappa = to_double(k, v);
         if (!(kappa >= 0.0)) invalid(k, "kappa must be >= 0");
         c.detector.kappa = kappa;
       }},
      {"detector.threshold_quantile",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const double q = to_double(k, v);
         if (!(q >= 0.0 && q <= 1.0)) invalid(k, "must lie in [0, 1]");
         c.detector.threshold_quantile = q;
       }},
      {"synth.seed", [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.seed = to_uint(k, v); }},
      {"synth.seeds",
       [](CliConfig& c, std::string_view k, std::string_view v) {
         const auto n = to_uint(k, v);
         if (n == 0) invalid(k, "must be >= 1");
         c.synth.seeds = n;
       }},
      {"synth.width", [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.width = positive(k, v); }},
      {"synth.height", [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.height = positive(k, v); }},
      {"synth.noise_std",
       [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.noise_std = non_negative(k, v); }},
      {"synth.duration",
       [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.duration = positive(k, v); }},
      {"synth.sample_rate",
       [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.sample_rate = positive(k, v); }},
      {"synth.lanes",
       [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.lanes = parse_lanes(k, v); }},
      {"synth.anomalies",
       [](CliConfig& c, std::string_view k, std::string_view v) { c.synth.anomalies = parse_anomalies(k, v); }},
      {"plot.panels",
       [](CliConfig& c, std::string_view, std::string_view v) { c.plots = parse_panels(v); }},
  };
  return table;
}

}  // namespace

CliConfig parse_config(std::string_view text) {
  CliConfig cfg;
  bool kappa_set = false;
  bool quantile_set = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidValue, "expected key = value", line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw Error(Errc::UnknownKey, std::string(key), line_no);
    it->second(cfg, key, value);
    kappa_set |= key == "detector.kappa";
    quantile_set |= key == "detector.threshold_quantile";
  }
  if (kappa_set && quantile_set) {
    invalid("detector.threshold_quantile", "mutually exclusive with detector.kappa");
  }

  // Cross-field invariants the per-key checks cannot see.
  try {
    cfg.detector.validate();
    cfg.synth.validate();
  } catch (const Error& e) {
    throw Error(Errc::InvalidValue, e.what());
  }
  return cfg;
}

CliConfig load_config(const std::string& path) {
  if (path.empty()) return CliConfig{};
  return parse_config(read_file(path));
}

ordered_json to_json(const CliConfig& cfg) {
  const auto& d = cfg.detector;
  ordered_json j;
  j["model.min_samples"] = d.model.min_samples;
  j["features.epsilon_fractions"] = d.features.epsilon_fractions;
  j["features.resample_count"] = d.features.resample_count;
  j["cluster.kernel"] = to_string(d.cluster.kernel.profile);
  j["cluster.bandwidth_factor"] = d.cluster.bandwidth_factor;
  j["cluster.bandwidth"] = d.cluster.bandwidth ? ordered_json(*d.cluster.bandwidth) : ordered_json(nullptr);
  j["cluster.max_iterations"] = d.cluster.max_iterations;
  j["cluster.convergence_tol"] = d.cluster.convergence_tol;
  j["cluster.merge_radius_factor"] = d.cluster.merge_radius_factor;
  j["detector.kappa"] = d.kappa;
  j["detector.threshold_quantile"] =
      d.threshold_quantile ? ordered_json(*d.threshold_quantile) : ordered_json(nullptr);

  const auto synth = trajanom::to_json(cfg.synth);
  for (const auto& [key, value] : synth.items()) j["synth." + key] = value;

  ordered_json panels = ordered_json::array();
  for (auto p : cfg.plots.panels) panels.push_back(to_string(p));
  j["plot.panels"] = std::move(panels);
  return j;
}

}  // namespace trajanom::cli
