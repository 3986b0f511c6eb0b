#include "modsplit/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace modsplit;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> order;
  std::optional<double> tau;
  std::optional<long> steps;
  std::optional<std::string> out;
  bool full_state = false;
  std::optional<std::string> precision;
  std::vector<double> taus;
  std::vector<int> orders;
  std::vector<long> d_list;
  std::string in;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "experiment config (flat TOML)");
  cmd->add_option("--order", o.order, "scheme order (2, 4, 6 or 8)");
  cmd->add_option("--tau", o.tau, "timestep");
  cmd->add_option("--steps", o.steps, "number of steps");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--full-state", o.full_state, "write every coordinate column");
  cmd->add_option("--precision", o.precision, "state arithmetic")->check(CLI::IsMember({"standard", "extended"}));
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (o.order) c.order = *o.order;
  if (o.tau) c.tau = *o.tau;
  if (o.steps) c.steps = *o.steps;
  if (o.out) c.output = *o.out;
  if (o.full_state) c.full_state = true;
  if (o.precision) c.precision = *o.precision == "extended" ? Precision::extended : Precision::standard;
  if (!o.taus.empty()) c.taus = o.taus;
  if (!o.orders.empty()) c.orders = o.orders;
  if (!o.d_list.empty()) c.d_list = o.d_list;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kick-move-kick integrators of order 2-8 for separable Hamiltonians"};
  app.require_subcommand(1);
  Overrides o;

  auto* run = app.add_subcommand("run", "integrate one trajectory to CSV");
  add_common(run, o);
  auto* sweep = app.add_subcommand("order-sweep", "orders x timesteps with a reference and summary");
  add_common(sweep, o);
  sweep->add_option("--taus", o.taus, "timesteps")->delimiter(',');
  sweep->add_option("--orders", o.orders, "scheme orders")->delimiter(',');
  auto* fpu = app.add_subcommand("fpu", "global error on the FPU chain against an order-8 reference");
  add_common(fpu, o);
  fpu->add_option("--taus", o.taus, "timesteps")->delimiter(',');
  fpu->add_option("--orders", o.orders, "scheme orders")->delimiter(',');
  auto* bench = app.add_subcommand("bench", "time FPU integration per chain length and order");
  add_common(bench, o);
  bench->add_option("--d-list", o.d_list, "chain lengths")->delimiter(',');
  bench->add_option("--orders", o.orders, "scheme orders")->delimiter(',');
  auto* report = app.add_subcommand("report", "summarise a run CSV");
  add_common(report, o);
  report->add_option("--in", o.in, "run CSV to read")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  ExperimentConfig config;
  if (const int rc = guarded([&] { config = resolve(o); }, std::cerr); rc != exit_ok) return rc;

  if (*run) return cmd_run(config, std::cout, std::cerr);
  if (*sweep) return cmd_order_sweep(config, std::cout, std::cerr);
  if (*fpu) {
    config.model.name = "fpu";
    return cmd_fpu(config, std::cout, std::cerr);
  }
  if (*bench) return cmd_bench(config, std::cout, std::cerr);
  return cmd_report(config, o.in, std::cout, std::cerr);
}
