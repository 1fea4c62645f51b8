// Command-line front end: evaluate measures on JSON states, run the
// Fig-style parameter sweeps, and run the property/falsification harness.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qres/qres.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_guaranteed_failure = 1;
constexpr int exit_validation = 2;
constexpr int exit_unsupported_dim = 3;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

struct MeasureArgs {
  std::string state_path;
  std::string name;
  double x = 0.0;
  bool has_x = false;
  int dichotomy = 1;
  bool json = false;
};

int run_measure(const MeasureArgs& args) {
  const qres::BipartiteState rho = qres::load_state(args.state_path);
  nlohmann::json detail;
  double value = 0.0;

  if (args.name == "linear-purity") {
    value = qres::linear_purity(rho.state());
  } else if (args.name == "hs-purity") {
    value = qres::hs_purity(rho.state());
  } else if (args.name == "fidelity-purity") {
    value = qres::fidelity_purity(rho.state());
  } else if (args.name == "coherence-f") {
    value = qres::coherence_fidelity(rho.state());
  } else if (args.name == "coherence-l1") {
    value = qres::coherence_l1(rho.state());
  } else if (args.name == "max-coherence") {
    value = qres::maximal_coherence(rho.state());
  } else if (args.name == "tau") {
    value = qres::tau_classifier(rho.state());
  } else if (args.name == "qcorr" || args.name == "fmin") {
    qres::OptimizerOptions opts;
    opts.constrain_marginal = false;
    if (args.name == "qcorr") {
      const qres::MeasurementOptimum opt = qres::quantum_correlation(rho, opts);
      value = opt.value;
      detail["argmin_params"] = opt.params;
      if (opt.params.size() == 2) {
        detail["argmin"] = {{"theta", opt.params[0]}, {"phi", opt.params[1]}};
      }
    } else {
      value = qres::fmin(rho, opts);
    }
  } else if (args.name == "weak-fidelity" || args.name == "weak-purity") {
    if (!args.has_x) {
      throw qres::ValidationError("strength", "measure '" + args.name +
                                                  "' requires --x <strength>");
    }
    const qres::WeakMeasurement w =
        qres::WeakMeasurement::split(rho.dim_a(), args.dichotomy, args.x);
    value = (args.name == "weak-fidelity") ? qres::weak_fidelity(rho, w)
                                           : qres::weak_purity(rho, w);
    detail["strength"] = args.x;
    detail["dichotomy"] = args.dichotomy;
  } else {
    throw qres::ValidationError(
        "measure-name",
        "unknown measure '" + args.name +
            "'; expected one of linear-purity, hs-purity, fidelity-purity, coherence-f, "
            "coherence-l1, max-coherence, tau, qcorr, fmin, weak-fidelity, weak-purity");
  }

  if (args.json) {
    nlohmann::json out;
    out["measure"] = args.name;
    out["value"] = value;
    for (auto& [k, v] : detail.items()) out[k] = v;
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << format_value(value) << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("QRES_MAX_DIM")) {
    const int v = std::atoi(cap);
    if (v >= 1) qres::set_max_dim(v);
  }

  CLI::App app{"fidelity-based purity, coherence, and quantum-correlation toolkit"};
  app.require_subcommand(1);

  MeasureArgs margs;
  CLI::App* measure = app.add_subcommand("measure", "evaluate a measure on a JSON state");
  measure->add_option("--state", margs.state_path, "state file (JSON)")->required();
  measure->add_option("--name", margs.name, "measure name")->required();
  CLI::Option* xopt = measure->add_option("--x", margs.x, "weak-measurement strength");
  measure->add_option("--dichotomy", margs.dichotomy,
                      "first k basis vectors form the first weak projector");
  measure->add_flag("--json", margs.json, "emit JSON with optimizer detail");

  std::string family;
  int sweep_d = 2, steps = 201;
  std::optional<double> from_opt, to_opt;
  std::string out_path;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over a state family (CSV)");
  sweep->add_option("--family", family, "bell or werner")->required();
  sweep->add_option("--d", sweep_d, "werner local dimension");
  sweep->add_option("--from", from_opt, "range start");
  sweep->add_option("--to", to_opt, "range end");
  sweep->add_option("--steps", steps, "number of rows");
  sweep->add_option("--out", out_path, "output CSV path")->required();

  std::string suite = "all";
  long trials = 500;
  std::uint64_t seed = 7;
  std::string report_path;
  CLI::App* harness = app.add_subcommand("harness", "run the property/falsification harness");
  harness->add_option("--suite", suite, "fidelity, purity, coherence, correlation, weak, all");
  harness->add_option("--trials", trials, "trials per property");
  harness->add_option("--seed", seed, "base seed");
  harness->add_option("--out", report_path, "also write the report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure->parsed()) {
      margs.has_x = xopt->count() > 0;
      return run_measure(margs);
    }
    if (sweep->parsed()) {
      std::vector<qres::SweepRow> rows;
      if (family == "bell") {
        rows = qres::bell_sweep(from_opt.value_or(0.0), to_opt.value_or(1.0), steps);
      } else if (family == "werner") {
        rows = qres::werner_sweep(sweep_d, from_opt.value_or(-1.0), to_opt.value_or(1.0), steps);
        std::cerr << qres::werner_sweep_note() << "\n";
      } else {
        throw qres::ValidationError("family", "unknown family '" + family +
                                                  "'; expected bell or werner");
      }
      qres::write_sweep_csv(rows, out_path);
      return exit_ok;
    }
    if (harness->parsed()) {
      const qres::HarnessReport report = qres::run_harness(suite, trials, seed);
      const std::string text = report.render();
      std::cout << text;
      if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open report file: " + report_path);
        out << text;
      }
      return report.guaranteed_pass() ? exit_ok : exit_guaranteed_failure;
    }
  } catch (const qres::UnsupportedDimension& e) {
    std::cerr << "error (unsupported dimension): " << e.what() << "\n";
    return exit_unsupported_dim;
  } catch (const qres::StateFormatError& e) {
    std::cerr << "error (invariant: " << e.invariant << "): " << e.what() << "\n";
    return exit_validation;
  } catch (const qres::ValidationError& e) {
    std::cerr << "error (invariant: " << e.invariant << "): " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_ok;
}
