#include "trajanom/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "trajanom/cli/config.hpp"
#include "trajanom/cli/svg.hpp"
#include "trajanom/detector.hpp"
#include "trajanom/error.hpp"
#include "trajanom/harness.hpp"
#include "trajanom/report.hpp"

namespace trajanom::cli {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::Io, "failed reading '" + path + "'");
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(Errc::Io, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(Errc::Io, "cannot rename onto '" + path + "': " + ec.message());
  }
}

namespace {

template <class Fn>
int guarded(std::string_view command, std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "trajanom " << command << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "trajanom " << command << ": " << to_string(Errc::Io) << ": " << e.what() << '\n';
    return static_cast<int>(Errc::Io);
  } catch (const std::exception& e) {
    err << "trajanom " << command << ": internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int cmd_detect(const DetectOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("detect", err, [&] {
    const auto cfg = load_config(opts.config);
    const PlotSpec plots = opts.panels ? parse_panels(*opts.panels) : cfg.plots;

    const auto parsed = parse_trajectories(read_file(opts.input), cfg.detector.model);
    auto report = detect(parsed.scene, cfg.detector);
    if (parsed.dropped_short > 0) {
      report.warnings.insert(report.warnings.begin(),
                             "dropped " + std::to_string(parsed.dropped_short) +
                                 " trajectories shorter than min_samples");
    }

    // Render everything before touching the file system.
    const auto json = dump(to_json(report));
    std::vector<SvgDocument> svgs;
    if (!opts.svg_dir.empty()) svgs = render_svg(report, parsed.scene, plots);

    write_file_atomic(opts.report, json);
    if (!opts.svg_dir.empty()) {
      fs::create_directories(opts.svg_dir);
      for (const auto& doc : svgs) write_file_atomic((fs::path(opts.svg_dir) / doc.name).string(), doc.content);
    }

    out << "trajectories=" << parsed.scene.size() << " dropped=" << parsed.dropped_short << " k=";
    for (std::size_t s = 0; s < report.spaces.size(); ++s) {
      const auto& sr = report.spaces[s];
      out << (s ? "," : "") << to_string(sr.space) << ':' << sr.model.k() << (sr.entropy.abstained ? "(abstain)" : "");
    }
    out << " n_voting=" << report.n_voting << " anomalies=" << report.anomalies.size() << '\n';
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("bench", err, [&] {
    const auto cfg = load_config(opts.config);
    const auto summary = run_benchmark(cfg.synth, cfg.detector);

    ordered_json doc;
    doc["config"] = to_json(cfg);
    const auto body = to_json(summary);
    doc["runs"] = body["runs"];
    doc["aggregate"] = body["aggregate"];
    write_file_atomic(opts.out, dump(doc));

    out << "seeds=" << summary.runs.size() << " precision=" << summary.precision.mean
        << " recall=" << summary.recall.mean << " f_score=" << summary.f_score.mean
        << " accuracy=" << summary.accuracy.mean << '\n';
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("synth", err, [&] {
    const auto cfg = load_config(opts.config);
    const auto labeled = generate_scene(cfg.synth);
    const auto scene_csv = write_trajectories(labeled.scene);
    const auto labels_csv = write_labels(labeled.truth);
    write_file_atomic(opts.out_scene, scene_csv);
    write_file_atomic(opts.out_labels, labels_csv);

    std::size_t planted = 0;
    for (int l : labeled.truth.labels) planted += l != 0;
    out << "trajectories=" << labeled.scene.size() << " anomalies=" << planted
        << " digest=" << scene_digest(labeled.scene) << '\n';
    return kExitOk;
  });
}

}  // namespace trajanom::cli
