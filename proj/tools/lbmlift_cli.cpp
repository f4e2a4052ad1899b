#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "lbmlift/experiment.hpp"

namespace {

struct Invocation {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
};

lbmlift::ExperimentKind kind_of(const std::string& subcommand) {
  if (subcommand == "train") return lbmlift::ExperimentKind::train;
  if (subcommand == "lift-bench") return lbmlift::ExperimentKind::lift_bench;
  if (subcommand == "hybrid") return lbmlift::ExperimentKind::hybrid;
  return lbmlift::ExperimentKind::cost;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Boltzmann lifting experiments"};
  app.require_subcommand(1);

  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"train", "train NCE coefficients and write coefficients.txt, train.csv"},
      {"lift-bench", "restrict-then-lift error, written to lift_bench.csv"},
      {"hybrid", "hybrid PDE/LBM run against the full LBM, written to hybrid_*.csv"},
      {"cost", "extra LBM steps of a hybrid run, written to cost.csv"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config, "key = value configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out, "output directory")->required();
    sub->add_option("--set", inv.overrides, "override a config entry, key=value");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string subcommand = app.get_subcommands().front()->get_name();

  try {
    lbmlift::ConfigFile file = lbmlift::ConfigFile::load(inv.config);
    for (const auto& o : inv.overrides) file.set(o);
    lbmlift::ExperimentConfig cfg = lbmlift::ExperimentConfig::from(file);
    const lbmlift::ExperimentKind kind = kind_of(subcommand);
    if (file.has("kind") && cfg.kind != kind)
      throw std::invalid_argument(inv.config + ": kind = " + *file.get("kind") + " does not match subcommand '" +
                                  subcommand + "'");
    cfg.kind = kind;
    lbmlift::run_experiment(cfg, inv.out, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "lbmlift " << subcommand << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
