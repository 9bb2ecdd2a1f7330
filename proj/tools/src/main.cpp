#include <CLI11.hpp>
#include <iostream>

#include "trajanom/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace trajanom::cli;

  CLI::App app{"trajanom: entropy-voted trajectory anomaly detection"};
  app.require_subcommand(1);

  DetectOptions detect;
  auto* detect_cmd = app.add_subcommand("detect", "Detect anomalous trajectories in a scene CSV");
  detect_cmd->add_option("--input", detect.input, "Trajectory CSV (id,t,x,y)")->required();
  detect_cmd->add_option("--config", detect.config, "key=value config file");
  detect_cmd->add_option("--report", detect.report, "Output report JSON")->required();
  detect_cmd->add_option("--svg-dir", detect.svg_dir, "Directory for SVG panels");
  detect_cmd->add_option("--panels", detect.panels, "Comma list: clusters,anomalies,overall,scene");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the planted-anomaly benchmark");
  bench_cmd->add_option("--config", bench.config, "key=value config file");
  bench_cmd->add_option("--out", bench.out, "Output summary JSON")->required();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic scene");
  synth_cmd->add_option("--config", synth.config, "key=value config file");
  synth_cmd->add_option("--out-scene", synth.out_scene, "Output trajectory CSV")->required();
  synth_cmd->add_option("--out-labels", synth.out_labels, "Output id,label CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*detect_cmd) return cmd_detect(detect, std::cout, std::cerr);
  if (*bench_cmd) return cmd_bench(bench, std::cout, std::cerr);
  return cmd_synth(synth, std::cout, std::cerr);
}
