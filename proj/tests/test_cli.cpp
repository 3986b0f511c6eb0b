#include "modsplit/cli.hpp"
#include "modsplit/csv.hpp"
#include "modsplit/models.hpp"
#include "modsplit/svg.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace modsplit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("modsplit_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

ExperimentConfig quartic_config(const fs::path& out, int order = 4, long steps = 1000) {
  ExperimentConfig c;
  c.model.name = "quartic";
  c.order = order;
  c.tau = 0.1;
  c.steps = steps;
  c.output = out.string();
  return c;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(MODSPLIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("flat toml parsing") {
  const auto kv = parse_flat_toml(R"(# experiment
model = "fpu"   # chain
order = 6
tau = 2.5e-2
steps = 1_000
full_state = true
taus = [0.1, 0.05, +0.025]
)");
  CHECK(std::get<std::string>(kv.at("model")) == "fpu");
  CHECK(std::get<double>(kv.at("order")) == 6.0);
  CHECK(std::get<double>(kv.at("tau")) == 0.025);
  CHECK(std::get<double>(kv.at("steps")) == 1000.0);
  CHECK(std::get<bool>(kv.at("full_state")));
  CHECK(std::get<std::vector<double>>(kv.at("taus")) == std::vector<double>{0.1, 0.05, 0.025});

  CHECK_THROWS_AS(parse_flat_toml("[table]\n"), ConfigError);
  CHECK_THROWS_AS(parse_flat_toml("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_flat_toml("a = \"open\n"), ConfigError);
  CHECK_THROWS_AS(parse_flat_toml("novalue =\n"), ConfigError);
}

TEST_CASE("experiment config") {
  const ExperimentConfig c = parse_config("model = \"fpu\"\nd = 12\nbeta = 0.5\norder = 8\ntaus = [0.05, 0.025]\n");
  CHECK(c.model.name == "fpu");
  CHECK(c.model.d == 12);
  CHECK(c.model.beta == 0.5);
  CHECK(c.order == 8);
  CHECK(c.taus.size() == 2);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(parse_config("colour = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("order = 3\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("tau = -1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("order = \"four\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("steps = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("model = \"pendulum\"\n").validate(), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/modsplit.toml"), ConfigError);

  const ExperimentConfig base = quartic_config("x", 6);
  const ExperimentConfig layered = parse_config("tau = 0.2\n", base);
  CHECK(layered.order == 6);
  CHECK(layered.tau == 0.2);
}

TEST_CASE("models and initial states from config") {
  ExperimentConfig c;
  c.model.name = "quadratic";
  c.model.stiffness = {2.0, 0.5, 0.5, 1.0};
  c.model.mass_diag = {1.0, 0.5};
  const auto m = build_model(c.model);
  CHECK(m->dim() == 2);
  const PhaseState s = initial_state(c, *m);
  CHECK(s.p()[0] == 1.0);
  CHECK(s.p()[1] == 0.0);

  c.model.name = "fpu";
  c.model.d = 5;
  const auto fpu = build_model(c.model);
  CHECK(std::abs(fpu->hamiltonian(initial_state(c, *fpu)) - 1.425) <= 1e-12);

  c.q0 = {0.1, 0, 0, 0, 0};
  c.p0 = {0, 0, 0, 0, 0.2};
  const PhaseState given = initial_state(c, *fpu);
  CHECK(given.q()[0] == 0.1);
  CHECK(given.p()[4] == 0.2);
  c.p0 = {1.0};
  CHECK_THROWS_AS((void)initial_state(c, *fpu), ConfigError);

  c.model.name = "quadratic";
  c.model.stiffness = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)build_model(c.model), ConfigError);
}

TEST_CASE("run csv round trip") {
  const QuarticOscillator quartic;
  SchemeConfig sc;
  sc.order = 6;
  sc.tau = 0.1;
  const RunRecord rec = record_run(quartic, {Vector::Zero(1), Vector::Constant(1, 1.0)}, sc, 50, 1);
  std::stringstream ss;
  write_run_csv(ss, rec, {0.5, 0.1, 6});
  const std::string text = ss.str();
  CHECK(text.rfind("step,time,H,dH_scaled,push_iters,q_0,p_0\n", 0) == 0);
  const RunRecord back = read_run_csv(ss);
  REQUIRE(back.size() == rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(back.times[i] == rec.times[i]);
    CHECK(back.energies[i] == rec.energies[i]);
    CHECK(back.push_iterations[i] == rec.push_iterations[i]);
    CHECK(back.states[i].q() == rec.states[i].q());
    CHECK(back.states[i].p() == rec.states[i].p());
  }
  std::stringstream bad("step,time,H\n0,0,0\n");
  CHECK_THROWS_AS((void)read_run_csv(bad), ConfigError);
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(split_csv_line("a,,b").size() == 3);
}

TEST_CASE("coordinate columns are capped") {
  const FPUChain fpu({40, 0.0, 0.0, 1.0, false});
  SchemeConfig sc;
  sc.tau = 0.05;
  const RunRecord rec = record_run(fpu, fpu_initial_state(fpu, 1.0), sc, 3);
  std::stringstream capped, full;
  write_run_csv(capped, rec, {1.0, 0.05, 2});
  write_run_csv(full, rec, {1.0, 0.05, 2, 32, true});
  std::string h1, h2;
  std::getline(capped, h1);
  std::getline(full, h2);
  CHECK(split_csv_line(h1).size() == 5 + 2 * 32);
  CHECK(split_csv_line(h2).size() == 5 + 2 * 40);
}

TEST_CASE("run command") {
  const fs::path dir = scratch("run");
  std::ostringstream out, err;
  REQUIRE(cmd_run(quartic_config(dir), out, err) == exit_ok);
  const auto rows = lines_of(dir / "run.csv");
  CHECK(rows.size() == 1002);
  CHECK(rows[0] == "step,time,H,dH_scaled,push_iters,q_0,p_0");

  const fs::path dir0 = scratch("run0");
  REQUIRE(cmd_run(quartic_config(dir0, 4, 0), out, err) == exit_ok);
  CHECK(lines_of(dir0 / "run.csv").size() == 2);

  const fs::path bad = scratch("run_bad");
  CHECK(cmd_run(quartic_config(bad, 3), out, err) == exit_config);
  CHECK_FALSE(fs::exists(bad));
}

TEST_CASE("run output is deterministic") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream out, err;
  ExperimentConfig c = quartic_config(a, 8, 300);
  c.seed = 7;
  REQUIRE(cmd_run(c, out, err) == exit_ok);
  c.output = b.string();
  REQUIRE(cmd_run(c, out, err) == exit_ok);
  CHECK(slurp(a / "run.csv") == slurp(b / "run.csv"));
}

TEST_CASE("numerical failure exits with 3") {
  const fs::path dir = scratch("blowup");
  ExperimentConfig c = quartic_config(dir, 8, 10);
  c.tau = 3.0;
  c.q0 = {2.0};
  c.p0 = {2.0};
  std::ostringstream out, err;
  CHECK(cmd_run(c, out, err) == exit_numerical);
  CHECK_FALSE(err.str().empty());
}

TEST_CASE("order sweep") {
  const fs::path dir = scratch("sweep");
  ExperimentConfig c = quartic_config(dir);
  c.orders = {4};
  c.taus = {0.1};
  c.t_end = 2.0;
  std::ostringstream out, err;
  REQUIRE(cmd_order_sweep(c, out, err) == exit_ok);
  const auto rows = lines_of(dir / "summary.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "order,tau,max_abs_dH,eps_at_tend,fitted_slope");
  CHECK(fs::exists(dir / "summary_max_abs_dH.svg"));
  CHECK(slurp(dir / "summary_eps_at_tend.svg").find("<svg") != std::string::npos);

  c.taus.clear();
  CHECK(cmd_order_sweep(c, out, err) == exit_config);
}

TEST_CASE("order sweep slopes") {
  const fs::path dir = scratch("sweep_slopes");
  ExperimentConfig c = quartic_config(dir);
  c.orders = {2, 4, 6, 8};
  c.taus = {0.1, 0.05};
  c.t_end = 10.0;
  std::ostringstream out, err;
  REQUIRE(cmd_order_sweep(c, out, err) == exit_ok);
  const auto rows = lines_of(dir / "summary.csv");
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv_line(rows[i]);
    const double order = std::stod(cells[0]);
    const double slope = std::stod(cells[4]);
    INFO(rows[i]);
    CHECK(std::abs(slope - order) <= 0.5);
  }
}

TEST_CASE("fpu command") {
  const fs::path dir = scratch("fpu");
  ExperimentConfig c;
  c.model.name = "fpu";
  c.orders = {2, 4};
  c.taus = {0.1, 0.05};
  c.t_end = 1.0;
  c.output = dir.string();
  c.sample_dt = 0.5;
  c.reference.tau_ref = 1e-3;
  std::ostringstream out, err;
  const int code = cmd_fpu(c, out, err);
  INFO(err.str());
  REQUIRE(code == exit_ok);
  const auto rows = lines_of(dir / "fpu_summary.csv");
  CHECK(rows.size() == 5);
  CHECK(rows[0] == "order,tau,eps_at_tend,fitted_slope,growth_rate,linear_fit_residual");
  CHECK(fs::exists(dir / "error_order2.svg"));

  c.model.name = "quartic";
  CHECK(cmd_fpu(c, out, err) == exit_config);
}

TEST_CASE("bench command") {
  const fs::path dir = scratch("bench");
  ExperimentConfig c;
  c.model.name = "fpu";
  c.d_list = {9};
  c.orders = {2};
  c.steps = 100;
  c.output = dir.string();
  std::ostringstream out, err;
  REQUIRE(cmd_bench(c, out, err) == exit_ok);
  const auto rows = lines_of(dir / "bench.csv");
  CHECK(rows.size() == 2);
  CHECK(rows[0] == "d,order,seconds,seconds_per_step_per_particle");
  c.d_list.clear();
  CHECK(cmd_bench(c, out, err) == exit_config);
}

TEST_CASE("report command") {
  const fs::path dir = scratch("report");
  std::ostringstream out, err;
  ExperimentConfig c = quartic_config(dir, 8, 400);
  c.tau = 0.05;
  REQUIRE(cmd_run(c, out, err) == exit_ok);
  std::ostringstream rep;
  REQUIRE(cmd_report(c, (dir / "run.csv").string(), rep, err) == exit_ok);
  CHECK(rep.str().find("period") != std::string::npos);
  CHECK(fs::exists(dir / "report_energy.svg"));
  CHECK(cmd_report(c, (dir / "missing.csv").string(), rep, err) == exit_config);
}

TEST_CASE("svg charts") {
  const std::string svg = line_chart({{"a", {1, 2, 3}, {1, 4, 9}}, {"b", {1, 2}, {-1, std::nan("")}}},
                                     {"title", "x", "y", true, true});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("title") != std::string::npos);
}

TEST_CASE("executable exit codes") {
  const fs::path dir = scratch("exe");
  CHECK(shell("run --order 4 --tau 0.1 --steps 20 --out " + dir.string()) == 0);
  CHECK(lines_of(dir / "run.csv").size() == 22);
  CHECK(shell("run --order 3 --out " + (dir / "bad").string()) == 2);
  CHECK_FALSE(fs::exists(dir / "bad"));
  CHECK(shell("run --bogus-flag") == 2);
  CHECK(shell("run --precision double --out " + (dir / "prec").string()) == 2);
  CHECK(shell("run --precision extended --order 8 --tau 0.05 --steps 4 --out " + (dir / "wide").string()) == 0);
  CHECK(shell("order-sweep --taus '' --out " + (dir / "sweep").string()) == 2);
  CHECK(shell("run --config /nonexistent.toml") == 2);

  const fs::path cfg = dir / "exp.toml";
  std::ofstream(cfg) << "model = \"harmonic\"\norder = 2\nsteps = 5\n";
  CHECK(shell("run --config " + cfg.string() + " --out " + (dir / "cfg").string()) == 0);
  CHECK(lines_of(dir / "cfg" / "run.csv").size() == 7);
}
