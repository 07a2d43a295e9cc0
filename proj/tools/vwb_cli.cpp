// Copyright 2026 The vwb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// vwb: command-line front end for the verification operations.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vwb/errors.hpp"
#include "vwb/runner.hpp"
#include "vwb/scenario.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 74;

struct Common {
  std::string backend;
  std::string tolerance;
  std::string format;
  std::string output;
  unsigned threads = 1;
  std::string r0, shrink;
  int depth = 0;
  std::vector<int> grid;
  std::string grid_mode;
  std::string scenario;
  std::string config;
};

// One operation flag: stored as text so rationals stay exact.
struct Flag {
  std::string param;
  std::string value;
  std::vector<std::string> list;
  CLI::Option* opt = nullptr;
  bool is_list = false;
};

class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& help, std::string op, std::string scenario)
      : sub_(app.add_subcommand(name, help)), op_(std::move(op)), default_scenario_(std::move(scenario)) {}

  Command& flag(const std::string& name, const std::string& param, const std::string& help) {
    flags_.push_back(std::make_unique<Flag>());
    Flag& f = *flags_.back();
    f.param = param;
    f.opt = sub_->add_option(name, f.value, help);
    return *this;
  }
  Command& list(const std::string& name, const std::string& param, const std::string& help) {
    flags_.push_back(std::make_unique<Flag>());
    Flag& f = *flags_.back();
    f.param = param;
    f.is_list = true;
    f.opt = sub_->add_option(name, f.list, help)->delimiter(',');
    return *this;
  }
  // Chooses the operation from a flag value, e.g. --mode for `epigraph`.
  Command& choose(const std::string& name, std::map<std::string, std::string> ops, const std::string& fallback) {
    choices_ = std::move(ops);
    choice_ = fallback;
    std::vector<std::string> keys;
    for (const auto& kv : choices_) keys.push_back(kv.first);
    sub_->add_option(name, choice_, "operation variant")->check(CLI::IsMember(keys));
    return *this;
  }

  CLI::App* app() const { return sub_; }
  const std::string& default_scenario() const { return default_scenario_; }

  vwb::OperationSpec spec() const {
    vwb::OperationSpec s;
    s.op = choices_.empty() ? op_ : choices_.at(choice_);
    for (const auto& f : flags_) {
      if (f->opt->count() == 0) continue;
      if (f->is_list) {
        s.params[f->param] = f->list;
      } else {
        s.params[f->param] = f->value;
      }
    }
    return s;
  }

 private:
  CLI::App* sub_;
  std::string op_;
  std::string default_scenario_;
  std::vector<std::unique_ptr<Flag>> flags_;
  std::map<std::string, std::string> choices_;
  std::string choice_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_common(const Common& c, vwb::ScenarioConfig& cfg) {
  if (!c.backend.empty()) cfg.backend = vwb::backend_from_string(c.backend);
  if (!c.tolerance.empty()) cfg.tolerance = std::stod(c.tolerance);
  if (!c.format.empty()) cfg.format = vwb::emit_format_from_string(c.format);
  if (!c.output.empty()) cfg.output_path = c.output;
  if (!c.r0.empty() || !c.shrink.empty() || c.depth > 0) {
    vwb::NeighborhoodSchedule s = cfg.schedule.value_or(vwb::NeighborhoodSchedule{});
    if (!c.r0.empty()) s.r0 = vwb::Real::parse(c.r0);
    if (!c.shrink.empty()) s.shrink = vwb::Real::parse(c.shrink);
    if (c.depth > 0) s.depth = c.depth;
    cfg.schedule = s;
  }
  if (!c.grid.empty()) cfg.grid.counts = c.grid;
  if (!c.grid_mode.empty()) cfg.grid.mode = vwb::sampling_mode_from_string(c.grid_mode);
}

vwb::ScenarioConfig base_config(const Common& c) {
  vwb::ScenarioConfig cfg;
  cfg.backend = vwb::default_backend();
  if (!c.config.empty()) cfg = vwb::parse_config_text(read_file(c.config));
  return cfg;
}

// Scenario that supplies the maps for a single-operation subcommand.
vwb::Scenario pick_scenario(const vwb::ScenarioConfig& cfg, const std::string& name) {
  for (const vwb::Scenario& s : cfg.scenarios)
    if (s.name == name) return s;
  if (name.empty() && !cfg.scenarios.empty()) return cfg.scenarios.front();
  return vwb::builtin_scenario(name);
}

int write_report(const vwb::Report& rep, const vwb::ScenarioConfig& cfg) {
  const std::string bytes = vwb::emit(rep, cfg.format);
  if (cfg.output_path) {
    std::ofstream out(*cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "vwb: cannot write " << *cfg.output_path << '\n';
      return kExitIo;
    }
    out << bytes;
  } else {
    std::cout << bytes;
  }
  return vwb::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tools for set-valued maps on the real line"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--backend", common.backend, "rational or float (default: $VWB_BACKEND, else rational)");
  app.add_option("--tolerance", common.tolerance, "tolerance of theorem bound checks (default 1e-6)")->check(CLI::PositiveNumber | CLI::IsMember({"0"}));
  app.add_option("--format", common.format, "canonical-object, witness-table or plot-data");
  app.add_option("-o,--output", common.output, "write the report to a file");
  app.add_option("--threads", common.threads, "worker threads (0: hardware concurrency)");
  app.add_option("--r0", common.r0, "initial neighborhood radius");
  app.add_option("--shrink", common.shrink, "radius shrink factor");
  app.add_option("--depth", common.depth, "number of radii");
  app.add_option("--grid", common.grid, "samples per axis")->delimiter(',');
  app.add_option("--grid-mode", common.grid_mode, "uniform or dyadic-refined");
  app.add_option("--scenario", common.scenario, "scenario providing the maps");
  app.add_option("--config", common.config, "scenario file (JSON)");

  std::vector<std::unique_ptr<Command>> cmds;
  auto add = [&](const std::string& name, const std::string& help, const std::string& op, const std::string& sc) -> Command& {
    cmds.push_back(std::make_unique<Command>(app, name, help, op, sc));
    return *cmds.back();
  };
  add("modulus", "regularity, Aubin or openness modulus", "modulus", "paper-counterexample")
      .flag("--map", "map", "map name, or a sum such as F+G")
      .flag("--kind", "kind", "metric-regularity, aubin or openness-rate")
      .flag("--x", "x", "reference point")
      .flag("--y", "y", "reference value");
  add("slope", "strong slope of the envelope x -> phi_F(x, y)", "slope", "affine-tight")
      .flag("--map", "map", "map name")
      .flag("--x", "x", "point")
      .flag("--y", "y", "value");
  add("envelope", "lower envelope phi_F(x, y)", "envelope", "affine-tight")
      .flag("--map", "map", "map name")
      .flag("--x", "x", "point")
      .flag("--y", "y", "value");
  add("sum-check", "sum theorem or sum-stability probe", "sum-check", "affine-tight")
      .choose("--mode", {{"theorem", "sum-check"}, {"stability", "sum-stability"}}, "theorem")
      .flag("--f", "f", "first map")
      .flag("--g", "g", "second map")
      .flag("--x", "x", "reference point")
      .flag("--k", "k", "value of G")
      .flag("--y", "y", "value of F+G (theorem) or of F (stability)")
      .flag("--z", "z", "value of G (stability)")
      .flag("--tau", "tau", "regularity modulus of F")
      .flag("--lambda", "lambda", "Lipschitz constant of G")
      .list("--eps", "eps", "stability radii, comma separated");
  add("epigraph", "epigraphical map E(x, k) = F(x) + k, k in G(x)", "epi-modulus", "affine-tight")
      .choose("--mode",
              {{"modulus", "epi-modulus"}, {"envelope", "epi-envelope"}, {"slope", "epi-slope"},
               {"zero-set", "zero-set"}, {"closedness", "closedness"}},
              "modulus")
      .flag("--f", "f", "first map")
      .flag("--g", "g", "second map")
      .flag("--map", "map", "map probed for closedness")
      .flag("--lambda", "lambda", "metric scale")
      .flag("--x", "x", "point")
      .flag("--k", "k", "value of G")
      .flag("--y", "y", "value")
      .list("--box", "box", "zero-set box x_lo,x_hi,k_lo,k_hi,y_lo,y_hi")
      .list("--region", "region", "closedness region x_lo,x_hi,y_lo,y_hi");
  add("coderivative", "coderivatives, kernel condition and slope bound", "coderivative", "affine-tight")
      .choose("--check",
              {{"value", "coderivative"}, {"kernel", "kernel"}, {"hypothesis", "hypothesis"},
               {"slope-bound", "slope-bound"}},
              "value")
      .flag("--map", "map", "map name")
      .flag("--f", "f", "first map")
      .flag("--g", "g", "second map")
      .flag("--x", "x", "point")
      .flag("--y", "y", "value")
      .flag("--k", "k", "value of G")
      .flag("--ystar", "ystar", "dual direction")
      .flag("--kind", "kind", "frechet or limiting")
      .flag("--delta", "delta", "slope-bound relaxation in [0, 1)")
      .flag("--lambda", "lambda", "metric scale of the compared slope");
  add("robinson", "parametric constants of 0 in F(x) + G(x, p)", "robinson", "affine-parametric")
      .choose("--check",
              {{"transfer", "robinson"}, {"solution-map", "solution-map"}, {"uniform", "parametric-epi"},
               {"paravasys", "paravasys"}, {"certify", "certify"}},
              "transfer")
      .flag("--theta", "theta", "localization radius")
      .flag("--m", "m", "slope premise constant")
      .flag("--gamma", "gamma", "envelope cap");

  CLI::App* scenario = app.add_subcommand("scenario", "built-in and file scenarios");
  scenario->require_subcommand(1);
  CLI::App* run = scenario->add_subcommand("run", "run scenarios and emit a report");
  std::vector<std::string> names;
  bool all = false;
  run->add_option("names", names, "built-in scenario names");
  run->add_flag("--all", all, "run every built-in scenario");
  CLI::App* list = scenario->add_subcommand("list", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const std::string& n : vwb::builtin_scenario_names())
        std::cout << n << '\t' << vwb::builtin_scenario(n).description << '\n';
      return 0;
    }
    vwb::ScenarioConfig cfg = base_config(common);
    if (run->parsed()) {
      if (all) names = vwb::builtin_scenario_names();
      if (!names.empty() || cfg.scenarios.empty()) {
        cfg.scenarios.clear();
        for (const std::string& n : names) cfg.scenarios.push_back(vwb::builtin_scenario(n));
      }
      if (cfg.scenarios.empty()) throw vwb::ValidationError("no scenarios given (names, --all or --config)");
    } else {
      for (const auto& c : cmds) {
        if (!c->app()->parsed()) continue;
        vwb::Scenario s = pick_scenario(cfg, common.scenario.empty() && common.config.empty() ? c->default_scenario()
                                                                                               : common.scenario);
        s.operations = {c->spec()};
        cfg.scenarios = {s};
      }
    }
    apply_common(common, cfg);
    const vwb::Report rep = vwb::run_scenario(cfg, vwb::RunOptions{common.threads});
    return write_report(rep, cfg);
  } catch (const vwb::Error& e) {
    std::cerr << "vwb: " << e.code() << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "vwb: " << e.what() << '\n';
    return kExitIo;
  }
}
