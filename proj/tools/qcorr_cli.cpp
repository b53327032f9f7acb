/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end: parameter sweeps to CSV, inflection detection on
// an existing curve file, the d=2 complement matrix fixture, and the
// closed-form-vs-oracle verification report as JSON.

#include <qcorr/sweep.hpp>
#include <qcorr/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

void write_text(const std::optional<std::string>& outPath, const std::string& text) {
  if (!outPath) {
    std::cout << text;
    return;
  }
  std::ofstream out(*outPath, std::ios::binary);
  if (!out) throw qcorr::ConfigError("cannot open output file: " + *outPath);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qcorr::ConfigError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SweepArgs {
  std::string family = "werner-complement";
  int d = 2;
  std::optional<double> from;
  std::optional<double> to;
  int steps = 101;
  std::vector<std::string> measures = {"fef_closed", "fef_lower_bound", "discord_closed", "eof",
                                       "entropy"};
  std::optional<int> restarts;
  std::optional<int> maxIters;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

int run_sweep_command(const SweepArgs& args) {
  qcorr::SweepConfig cfg;
  cfg.family = qcorr::parse_family(args.family);
  cfg.d = args.d;
  cfg.from = args.from.value_or(qcorr::family_domain_min(cfg.family));
  cfg.to = args.to.value_or(qcorr::family_domain_max(cfg.family));
  cfg.steps = args.steps;
  cfg.measures.clear();
  for (const std::string& name : args.measures) cfg.measures.push_back(qcorr::parse_measure(name));

  bool wantsFef = false;
  bool wantsMeasurement = false;
  for (qcorr::Measure m : cfg.measures) {
    wantsFef = wantsFef || m == qcorr::Measure::FefNumeric;
    wantsMeasurement = wantsMeasurement || m == qcorr::Measure::DiscordOracle;
  }
  qcorr::OptimizerConfig opt = qcorr::OptimizerConfig::fef_defaults(cfg.d * cfg.d);
  if (wantsMeasurement) {
    const qcorr::OptimizerConfig meas = qcorr::OptimizerConfig::measurement_defaults();
    opt.maxIterations = std::max(opt.maxIterations, meas.maxIterations);
    opt.tolerance = wantsFef ? std::min(opt.tolerance, meas.tolerance) : meas.tolerance;
  }
  if (args.restarts) opt.restarts = *args.restarts;
  if (args.maxIters) opt.maxIterations = *args.maxIters;
  if (args.tol) opt.tolerance = *args.tol;
  opt.seed = qcorr::resolve_seed(args.seed);
  cfg.optimizer = opt;

  write_text(args.out, qcorr::curve_csv_text(run_sweep(cfg), cfg.measures));
  return 0;
}

int run_verify_command(const std::vector<int>& dList, std::optional<std::uint64_t> seedFlag,
                       const std::optional<std::string>& outPath) {
  const std::uint64_t seed = qcorr::resolve_seed(seedFlag);
  const std::vector<qcorr::CheckRecord> records = qcorr::verify_all(dList, seed);

  nlohmann::json arr = nlohmann::json::array();
  for (const qcorr::CheckRecord& rec : records) {
    arr.push_back({{"name", rec.name},
                   {"d", rec.d},
                   {"param", rec.param},
                   {"expected", rec.expected},
                   {"actual", rec.actual},
                   {"delta", rec.delta},
                   {"pass", rec.pass},
                   {"required", rec.required},
                   {"note", rec.note}});
  }
  write_text(outPath, arr.dump(2) + "\n");
  return qcorr::required_pass(records) ? 0 : 1;
}

int run_fixture_command(double x, const std::optional<std::string>& outPath) {
  const qcorr::Matrix m = qcorr::werner_complement_closed_form_d2(x);
  std::string text;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c > 0) text += ',';
      text += qcorr::format_number(m(r, c).real());
    }
    text += '\n';
  }
  write_text(outPath, text);
  return 0;
}

int run_inflect_command(const std::string& inPath, const std::string& measureName) {
  const qcorr::Measure measure = qcorr::parse_measure(measureName);
  std::istringstream in(read_text(inPath));
  const qcorr::ParsedCurve curve = qcorr::parse_curve_csv(in);
  const qcorr::InflectionReport report = qcorr::detect_inflections(curve.points, measure);
  std::cout << "measure " << qcorr::measure_name(measure) << ": " << report.locations.size()
            << " inflection(s), grid step " << qcorr::format_number(report.gridStep)
            << ", flank threshold " << qcorr::format_number(report.threshold) << "\n";
  for (double loc : report.locations) {
    std::cout << "  param = " << qcorr::format_number(loc) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Werner/isotropic complement-state correlation toolkit"};
  app.require_subcommand(1);

  SweepArgs sweepArgs;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate measures over a parameter grid, CSV out");
  sweep->add_option("--family", sweepArgs.family,
                    "state family: werner-complement or isotropic-complement");
  sweep->add_option("--d", sweepArgs.d, "local dimension of the d x d source state");
  sweep->add_option("--from", sweepArgs.from, "grid start (default: family domain minimum)");
  sweep->add_option("--to", sweepArgs.to, "grid end (default: family domain maximum)");
  sweep->add_option("--steps", sweepArgs.steps, "number of grid points");
  sweep->add_option("--measures", sweepArgs.measures, "comma list of measures")->delimiter(',');
  sweep->add_option("--restarts", sweepArgs.restarts, "optimizer restarts per point");
  sweep->add_option("--max-iters", sweepArgs.maxIters, "optimizer iteration cap");
  sweep->add_option("--tol", sweepArgs.tol, "optimizer convergence tolerance");
  sweep->add_option("--seed", sweepArgs.seed, "base RNG seed (overrides QCORR_SEED)");
  sweep->add_option("--out", sweepArgs.out, "output CSV path (default: stdout)");

  std::vector<int> verifyDims;
  std::optional<std::uint64_t> verifySeed;
  std::optional<std::string> verifyOut;
  CLI::App* verify = app.add_subcommand("verify", "run closed-form-vs-oracle checks, JSON out");
  verify->add_option("--d", verifyDims, "dimensions to check (2 and/or 3); empty checks nothing")
      ->delimiter(',');
  verify->add_option("--seed", verifySeed, "base RNG seed (overrides QCORR_SEED)");
  verify->add_option("--out", verifyOut, "output JSON path (default: stdout)");

  double fixtureX = 0.0;
  std::optional<std::string> fixtureOut;
  CLI::App* fixture = app.add_subcommand("fixture", "print the d=2 complement matrix for a given x");
  fixture->add_option("--x", fixtureX, "Werner parameter in [-1, 1]")->required();
  fixture->add_option("--out", fixtureOut, "output CSV path (default: stdout)");

  std::string inflectIn;
  std::string inflectMeasure;
  CLI::App* inflect = app.add_subcommand("inflect", "detect inflections in an existing curve CSV");
  inflect->add_option("--in", inflectIn, "input CSV path")->required();
  inflect->add_option("--measure", inflectMeasure, "measure column to analyze")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_command(sweepArgs);
    if (verify->parsed()) return run_verify_command(verifyDims, verifySeed, verifyOut);
    if (fixture->parsed()) return run_fixture_command(fixtureX, fixtureOut);
    if (inflect->parsed()) return run_inflect_command(inflectIn, inflectMeasure);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
