#include "modsplit/cli.hpp"

#include "modsplit/csv.hpp"
#include "modsplit/models.hpp"
#include "modsplit/svg.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

namespace modsplit {
namespace fs = std::filesystem;
namespace {

long steps_for(double t_end, double tau) {
  const double r = t_end / tau;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, r) || n < 1)
    throw ConfigError(fmt::format("t_end = {} is not a whole number of steps of tau = {}", t_end, tau));
  return static_cast<long>(n);
}

std::string tau_tag(double tau) { return fmt::format("{:.6g}", tau); }

void prepare_output(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

double max_abs_drift(const RunRecord& rec) {
  double m = 0.0;
  for (double h : rec.energies) m = std::max(m, std::abs(h - rec.energies.front()));
  return m;
}

double endpoint_error(const RunRecord& run, const RunRecord& ref) {
  if (!run.extended_states.empty() && !ref.extended_states.empty())
    return distance(run.extended_states.back(), ref.extended_states.back());
  return (run.states.back().stacked() - ref.states.back().stacked()).norm();
}

double slope_or_nan(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nan("");
  for (const auto& [tau, e] : pts)
    if (!(e > 0.0)) return std::nan("");
  return convergence_order(pts);
}

std::vector<int> orders_or_default(const ExperimentConfig& c) {
  return c.orders.empty() ? std::vector<int>{c.order} : c.orders;
}

}  // namespace

int guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return exit_ok;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
}

int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        config.validate();
        const auto model = build_model(config.model);
        const PhaseState s0 = initial_state(config, *model);
        const SchemeConfig scheme = config.scheme();
        if (scheme.order > model->max_word_order_supported())
          throw ConfigError("model does not support order " + std::to_string(scheme.order));
        const RunRecord rec = record_run(*model, s0, scheme, config.steps, config.sample_stride, config.precision);
        prepare_output(config.output);
        const std::string path = (fs::path(config.output) / "run.csv").string();
        write_run_csv(path, rec, {rec.energies.front(), scheme.tau, scheme.order, 32, config.full_state});
        int max_iter = 0;
        for (int k : rec.push_iterations) max_iter = std::max(max_iter, k);
        out << fmt::format("{}: {} rows, max |H - H0| = {:.3e}, max push iterations = {}\n", path, rec.size(),
                           max_abs_drift(rec), max_iter);
      },
      err);
}

int cmd_order_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        config.validate();
        if (config.taus.empty()) throw ConfigError("order-sweep needs a non-empty taus list");
        const auto orders = orders_or_default(config);
        const auto model = build_model(config.model);
        const PhaseState s0 = initial_state(config, *model);
        for (double tau : config.taus)
          if (steps_for(config.t_end, tau) % config.sample_stride != 0)
            throw ConfigError("t_end / tau must be a multiple of sample_stride");
        ReferenceSettings ref_settings = config.reference;
        ref_settings.precision = config.precision;
        steps_for(config.t_end, ref_settings.tau_ref);
        prepare_output(config.output);

        const RunRecord ref = reference_trajectory(*model, s0, config.t_end, config.t_end, ref_settings);
        struct Row {
          int order;
          double tau, drift, eps;
        };
        std::vector<Row> rows;
        std::map<int, std::vector<std::pair<double, double>>> by_order;
        for (int order : orders) {
          for (double tau : config.taus) {
            SchemeConfig scheme = config.scheme();
            scheme.order = order;
            scheme.tau = tau;
            const long n = steps_for(config.t_end, tau);
            const RunRecord rec = record_run(*model, s0, scheme, n, config.sample_stride, config.precision);
            write_run_csv((fs::path(config.output) / fmt::format("run_order{}_tau{}.csv", order, tau_tag(tau))).string(),
                          rec, {rec.energies.front(), tau, order, 32, config.full_state});
            const double eps = endpoint_error(rec, ref);
            rows.push_back({order, tau, max_abs_drift(rec), eps});
            by_order[order].emplace_back(tau, eps);
          }
        }

        std::vector<std::vector<std::string>> table;
        std::map<int, Series> drift_series, eps_series;
        for (const auto& r : rows) {
          const double slope = slope_or_nan(by_order[r.order]);
          table.push_back({std::to_string(r.order), format_real(r.tau), format_real(r.drift), format_real(r.eps),
                           format_real(slope)});
          for (auto* m : {&drift_series, &eps_series}) {
            auto& s = (*m)[r.order];
            s.label = fmt::format("order {}", r.order);
            s.x.push_back(r.tau);
          }
          drift_series[r.order].y.push_back(r.drift);
          eps_series[r.order].y.push_back(r.eps);
          out << fmt::format("order {} tau {:<8g} max|dH| {:.3e}  eps(t_end) {:.3e}  slope {:.3f}\n", r.order, r.tau,
                             r.drift, r.eps, slope);
        }
        write_table((fs::path(config.output) / "summary.csv").string(),
                    {"order", "tau", "max_abs_dH", "eps_at_tend", "fitted_slope"}, table);
        const auto chart = [&](const std::map<int, Series>& m, const std::string& name, const std::string& ylabel) {
          std::vector<Series> v;
          for (const auto& [k, s] : m) v.push_back(s);
          write_text_file((fs::path(config.output) / name).string(),
                          line_chart(v, {ylabel + " vs tau", "tau", ylabel, true, true}));
        };
        chart(drift_series, "summary_max_abs_dH.svg", "max |H - H0|");
        chart(eps_series, "summary_eps_at_tend.svg", "eps(t_end)");
      },
      err);
}

int cmd_fpu(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        config.validate();
        if (config.model.name != "fpu") throw ConfigError("the fpu command needs model = \"fpu\"");
        const auto taus = config.taus.empty() ? std::vector<double>{1.0 / 20, 1.0 / 40, 1.0 / 80} : config.taus;
        const auto orders = config.orders.empty() ? std::vector<int>{2, 4, 6, 8} : config.orders;
        const auto model = build_model(config.model);
        const PhaseState s0 = initial_state(config, *model);
        steps_for(config.t_end, config.sample_dt);
        steps_for(config.sample_dt, config.reference.tau_ref);
        for (double tau : taus) steps_for(config.sample_dt, tau);
        prepare_output(config.output);

        ReferenceSettings ref_settings = config.reference;
        ref_settings.precision = config.precision;
        const RunRecord ref = reference_trajectory(*model, s0, config.t_end, config.sample_dt, ref_settings);

        std::vector<std::vector<std::string>> table;
        for (int order : orders) {
          std::vector<std::pair<double, double>> end_errors;
          std::vector<Series> curves;
          std::vector<LinearFit> fits;
          for (double tau : taus) {
            SchemeConfig scheme = config.scheme();
            scheme.order = order;
            scheme.tau = tau;
            const RunRecord rec = record_run(*model, s0, scheme, steps_for(config.t_end, tau),
                                             steps_for(config.sample_dt, tau), config.precision);
            const auto eps = global_error(rec, ref);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < eps.size(); ++i) rows.push_back({format_real(rec.times[i]), format_real(eps[i])});
            write_table((fs::path(config.output) / fmt::format("error_order{}_tau{}.csv", order, tau_tag(tau))).string(),
                        {"time", "eps"}, rows);
            end_errors.emplace_back(tau, eps.back());
            fits.push_back(fit_through_origin(rec.times, eps, config.t_end / 10.0, config.t_end));
            curves.push_back({fmt::format("tau {}", tau_tag(tau)), rec.times, eps});
          }
          const double slope = slope_or_nan(end_errors);
          for (std::size_t k = 0; k < taus.size(); ++k) {
            table.push_back({std::to_string(order), format_real(taus[k]), format_real(end_errors[k].second),
                             format_real(slope), format_real(fits[k].slope), format_real(fits[k].relative_residual)});
            out << fmt::format("order {} tau {:<8g} eps(t_end) {:.3e}  slope {:.3f}  linear-fit residual {:.3f}\n",
                               order, taus[k], end_errors[k].second, slope, fits[k].relative_residual);
          }
          write_text_file((fs::path(config.output) / fmt::format("error_order{}.svg", order)).string(),
                          line_chart(curves, {fmt::format("global error, order {}", order), "t", "eps", false, true}));
        }
        write_table((fs::path(config.output) / "fpu_summary.csv").string(),
                    {"order", "tau", "eps_at_tend", "fitted_slope", "growth_rate", "linear_fit_residual"}, table);
      },
      err);
}

int cmd_bench(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        config.validate();
        if (config.d_list.empty()) throw ConfigError("bench needs a non-empty d_list");
        if (config.steps < 1) throw ConfigError("bench needs steps >= 1");
        const auto orders = orders_or_default(config);
        prepare_output(config.output);
        std::vector<std::vector<std::string>> table;
        for (long d : config.d_list) {
          ModelSpec spec = config.model;
          spec.name = "fpu";
          spec.d = static_cast<std::size_t>(d);
          const FPUChain chain({spec.d, spec.omega2, spec.alpha, spec.beta, spec.periodic});
          const PhaseState s0 = fpu_initial_state(chain, spec.energy, std::min<int>(spec.mode, static_cast<int>(d) - 1));
          for (int order : orders) {
            SchemeConfig scheme = config.scheme();
            scheme.order = order;
            const auto t0 = std::chrono::steady_clock::now();
            integrate(s0, chain, scheme, config.steps);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const double per = secs / static_cast<double>(config.steps) / static_cast<double>(d);
            table.push_back({std::to_string(d), std::to_string(order), format_real(secs), format_real(per)});
            out << fmt::format("d {:<6} order {}  {:.4f} s  {:.3e} s/step/particle\n", d, order, secs, per);
          }
        }
        write_table((fs::path(config.output) / "bench.csv").string(),
                    {"d", "order", "seconds", "seconds_per_step_per_particle"}, table);
      },
      err);
}

int cmd_report(const ExperimentConfig& config, const std::string& csv_path, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (csv_path.empty()) throw ConfigError("report needs --in PATH");
        const RunRecord rec = read_run_csv(csv_path);
        if (rec.size() == 0) throw ConfigError("report: " + csv_path + " has no data rows");
        int max_iter = 0;
        for (int k : rec.push_iterations) max_iter = std::max(max_iter, k);
        out << fmt::format("rows            {}\n", rec.size());
        out << fmt::format("time span       [{}, {}]\n", rec.times.front(), rec.times.back());
        out << fmt::format("H(0)            {}\n", format_real(rec.energies.front()));
        out << fmt::format("max |H - H(0)|  {:.6e}\n", max_abs_drift(rec));
        out << fmt::format("max push iters  {}\n", max_iter);
        if (rec.states.front().dim() == 1) {
          try {
            out << fmt::format("period          {:.9f}\n", period_estimate(rec));
          } catch (const NumericalError&) {
            out << "period          n/a (too few zero crossings)\n";
          }
        }
        std::vector<double> drift;
        for (double h : rec.energies) drift.push_back(h - rec.energies.front());
        prepare_output(config.output);
        write_text_file((fs::path(config.output) / "report_energy.svg").string(),
                        line_chart({{"H - H(0)", rec.times, drift}}, {"energy error", "t", "H - H(0)", false, false}));
      },
      err);
}

}  // namespace modsplit
