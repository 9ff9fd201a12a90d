// tsid: simulate hidden linear systems, identify output recurrences from
// time series, predict, and run Monte Carlo genericity experiments.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsid/cli.hpp"

namespace {

struct Bound {
  CLI::Option* option;
  std::string key;
  std::string value;
};

class Options {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& help, bool required = false) {
    auto& slot = store_.emplace_back(std::make_unique<Bound>(Bound{nullptr, key, {}}));
    slot->option = app->add_option("--" + key, slot->value, help);
    if (required) slot->option->required();
  }
  void add_flag(CLI::App* app, const std::string& key, const std::string& help) {
    auto& slot = store_.emplace_back(std::make_unique<Bound>(Bound{nullptr, key, "1"}));
    slot->option = app->add_flag("--" + key, help);
  }
  void collect(std::map<std::string, std::string>& params) const {
    for (const auto& b : store_) {
      if (b->option->count() > 0) params[b->key] = b->value;
    }
  }

 private:
  std::vector<std::unique_ptr<Bound>> store_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify autoregressive prediction models of hidden linear systems"};
  app.require_subcommand(1);
  // Subcommands inherit this at creation: global options may follow them.
  app.fallthrough();

  std::uint64_t seed = 0;
  Options global;
  CLI::Option* seed_opt = app.add_option("--seed", seed, "RNG seed (montecarlo)");
  global.add(&app, "tol", "relative rank tolerance");
  global.add(&app, "out", "output path (default: stdout)");

  Options simulate, identify, predict, observability, spectrum, montecarlo;

  auto* sim = app.add_subcommand("simulate", "simulate a series from a system spec");
  simulate.add(sim, "system", "system spec (JSON)", true);
  simulate.add(sim, "x0", "initial state, comma separated", true);
  simulate.add(sim, "len", "number of samples", true);
  simulate.add(sim, "lambda", "sampling step for continuous systems");

  auto* idf = app.add_subcommand("identify", "identify a prediction model from a series");
  identify.add(idf, "series", "series file", true);
  identify.add(idf, "n", "model order", true);
  identify.add(idf, "k", "window start");
  identify.add_flag(idf, "affine", "identify an affine offset as well");
  identify.add_flag(idf, "overdetermined", "least squares over all windows");

  auto* pred = app.add_subcommand("predict", "continue a series with a model");
  predict.add(pred, "model", "model file (JSON)", true);
  predict.add(pred, "seed-window", "last n observed values, comma separated", true);
  predict.add(pred, "steps", "number of predicted samples", true);

  auto* obs = app.add_subcommand("observability", "rank of the observability matrix");
  observability.add(obs, "system", "system spec (JSON)", true);

  auto* spec = app.add_subcommand("spectrum", "continuous-time eigenvalues from a sampled model");
  spectrum.add(spec, "model", "model file (JSON)", true);

  auto* mc = app.add_subcommand("montecarlo", "estimate the frequency of a generic property");
  montecarlo.add(mc, "property", "distinct-eigenvalues | observable | krylov-independent | "
                                 "end-to-end-identifiable | end-to-end-continuous", true);
  montecarlo.add(mc, "n", "system dimension", true);
  montecarlo.add(mc, "trials", "number of draws", true);
  montecarlo.add(mc, "box", "sampling box lo,hi (default -1,1)");
  montecarlo.add(mc, "success-tol", "relative coefficient error accepted (default 1e-6)");
  montecarlo.add(mc, "cond-cap", "condition estimate above which a trial is rejected (default 1e10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tsid::kExitUsageError;
  }

  tsid::RunSpec run;
  global.collect(run.params);
  if (seed_opt->count() > 0) run.seed = seed;
  const std::pair<CLI::App*, Options*> table[] = {{sim, &simulate},       {idf, &identify},
                                                  {pred, &predict},       {obs, &observability},
                                                  {spec, &spectrum},      {mc, &montecarlo}};
  for (const auto& [sub, opts] : table) {
    if (sub->parsed()) {
      run.command = *tsid::parse_command(sub->get_name());
      opts->collect(run.params);
    }
  }
  return tsid::run_command(run, std::cout, std::cerr);
}
