// Copyright 2026 The Stocore Authors.
//
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

#include "stocore/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "stocore/baselines.hpp"
#include "stocore/builtin_scenarios.hpp"
#include "stocore/core_analysis.hpp"
#include "stocore/csv.hpp"
#include "stocore/scenario_io.hpp"
#include "stocore/tatonnement.hpp"

namespace stocore {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario = "general-example";
  double alpha = 0.01;
  double epsilon = 0.01;
  std::size_t max_iters = 100000;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t draws = 100000;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("STOCORE_OUT_DIR"); env && *env) return env;
  return "stocore-out";
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  body(os);
}

class Run {
 public:
  Run(const Options& opt, std::string command, std::ostream& out)
      : opt_(opt), command_(std::move(command)), out_(out), scn_(load_scenario(opt.scenario)) {
    cfg_.alpha = opt.alpha;
    cfg_.epsilon = opt.epsilon;
    cfg_.max_iters = opt.max_iters;
    cfg_.validate();
    if (opt.draws == 0) throw std::invalid_argument("draws must be at least 1");
    seed_ = opt.seed.value_or(scn_->seed);
    dir_ = opt.out.empty() ? default_out_dir() : opt.out;
    fs::create_directories(dir_);
  }

  int solve() {
    eq_ = run_auction(scn_, cfg_);
    write_file(dir_ / "equilibrium_trace.csv", [&](std::ostream& os) { write_trace_csv(os, *eq_); });
    write_file(dir_ / "equilibrium_allocation.csv",
               [&](std::ostream& os) { write_allocation_csv(os, *eq_); });
    out_ << "auction " << (eq_->converged ? "converged" : "did not converge") << " after "
         << eq_->iterations << " iterations, max |z| = " << csv::real(eq_->max_abs_excess) << '\n';
    return eq_->converged ? kExitOk : kExitNoConvergence;
  }

  int core_check() {
    if (int code = ensure_solved(); code != kExitOk) return code;
    SscOptions options;
    options.blocking.seed = seed_;
    const SscReport report = check_ssc(scn_, eq_->shares, options);
    write_file(dir_ / "ssc_blocking.csv", [&](std::ostream& os) { write_ssc_csv(os, report); });
    write_file(dir_ / "ssc_strong.csv", [&](std::ostream& os) {
      os << "coalition,members,mode,status,min_gain\n";
      for (const StrongEntry& e : report.strong)
        os << e.coalition.mask() << ",\"" << e.coalition.label() << "\"," << e.mode.label() << ','
           << (e.result.converged ? "converged" : "inconclusive") << ','
           << csv::real(e.result.min_gain) << '\n';
    });
    out_ << "strong sequential core: " << (report.verdict ? "member" : "not a member")
         << " (weak predicate " << (report.weak_verdict ? "passes" : "fails") << ", strong predicate "
         << (report.strong_verdict ? "passes" : "fails") << ", clearing error "
         << csv::real(report.clearing_error) << ")\n";
    if (report.worst_offender) {
      const SscEntry& w = *report.worst_offender;
      out_ << "largest improvement " << csv::real(w.result.improvement) << " for agent "
           << w.target + 1 << " in " << w.coalition.label() << ", " << w.mode.label() << '\n';
    }
    return report.inconclusive ? kExitNoConvergence : kExitOk;
  }

  int baselines() {
    if (int code = ensure_solved(); code != kExitOk) return code;
    std::vector<BaselineAllocation> methods{{AllocationMethod::Walrasian, eq_->shares}};
    if (scn_.tasks() <= scn_.agents())
      methods.push_back(weighted_matching_allocation(scn_));
    else
      out_ << "weighted matching skipped: more tasks than agents\n";
    methods.push_back(random_allocation(scn_, seed_));
    methods.push_back(equal_allocation(scn_));
    const WelfareComparison report = welfare_report(scn_, methods);
    write_file(dir_ / "fig9_welfare.csv", [&](std::ostream& os) { write_welfare_csv(os, report); });
    write_file(dir_ / "fig5_efficiency.csv", [&](std::ostream& os) {
      write_efficiency_csv(os, efficiency_share_table(scn_, eq_->shares));
    });
    for (const WelfareRow& row : report.rows)
      out_ << "welfare " << to_string(row.method) << " = " << csv::real(row.welfare) << '\n';
    return kExitOk;
  }

  int simulate() {
    if (int code = ensure_solved(); code != kExitOk) return code;
    const auto rows = simulate_realized_utilities(scn_, eq_->shares, opt_.draws, seed_);
    write_file(dir_ / "fig4_indifference.csv",
               [&](std::ostream& os) { write_indifference_csv(os, rows); });
    for (std::size_t n = 0; n < rows.size(); ++n)
      out_ << "agent " << n + 1 << ": realized " << csv::real(rows[n].mean) << " +/- "
           << csv::real(rows[n].std_error) << ", predicted " << csv::real(rows[n].predicted) << '\n';
    return kExitOk;
  }

  int reproduce() {
    save_scenario(dir_ / "scenario.json", scn_.get());
    for (auto step : {&Run::solve, &Run::core_check, &Run::baselines, &Run::simulate})
      if (int code = (this->*step)(); code != kExitOk) return finish(code);
    return finish(kExitOk);
  }

  int finish(int code) {
    RunManifest manifest;
    manifest.command = command_;
    manifest.scenario_source = opt_.scenario;
    manifest.auction = cfg_;
    manifest.seed = seed_;
    manifest.draws = opt_.draws;
    manifest.output_dir = dir_.string();
    write_manifest(dir_, manifest);
    return code;
  }

 private:
  int ensure_solved() { return eq_ ? (eq_->converged ? kExitOk : kExitNoConvergence) : solve(); }

  const Options& opt_;
  std::string command_;
  std::ostream& out_;
  ValidatedScenario scn_;
  AuctionConfig cfg_;
  std::uint64_t seed_ = 0;
  fs::path dir_;
  std::optional<EquilibriumReport> eq_;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "built-in name or scenario JSON path")
      ->capture_default_str();
  cmd->add_option("--alpha", opt.alpha, "price adjustment factor")->capture_default_str();
  cmd->add_option("--epsilon", opt.epsilon, "clearing threshold on max |z|")->capture_default_str();
  cmd->add_option("--max-iters", opt.max_iters, "auction round limit")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "run seed (defaults to the scenario seed)");
  cmd->add_option("--out", opt.out, "output directory (default $STOCORE_OUT_DIR or stocore-out)");
  cmd->add_option("--draws", opt.draws, "Monte Carlo draws for simulate")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic task allocation by Walrasian auction", "stocore"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"solve", "run the auction and write the equilibrium trace and allocation"},
      {"core-check", "test the equilibrium allocation against every blocking coalition"},
      {"baselines", "compare welfare against matching, random and equal allocations"},
      {"simulate", "replay random arrivals under the equilibrium allocation"},
      {"reproduce", "run every step on one scenario"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Run run(opt, command, out);
    int code = kExitOk;
    if (command == "reproduce") code = run.reproduce();
    else if (command == "solve") code = run.solve();
    else if (command == "core-check") code = run.core_check();
    else if (command == "baselines") code = run.baselines();
    else if (command == "simulate") code = run.simulate();
    if (code == kExitNoConvergence) err << "error: auction or coalition programs did not converge\n";
    return command == "reproduce" ? code : run.finish(code);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }
}

}  // namespace stocore
