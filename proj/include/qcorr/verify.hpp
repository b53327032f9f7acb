/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_VERIFY_HPP
#define QCORR_VERIFY_HPP

#include <qcorr/fef.hpp>
#include <qcorr/linalg.hpp>
#include <qcorr/measures.hpp>
#include <qcorr/states.hpp>
#include <qcorr/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qcorr {

// tolerances and grid sizes of the release checklist, by criterion number
namespace crit {
inline constexpr double kFixtureTol = 1e-12;            // 1
inline constexpr double kFefOracleTolD2 = 1e-4;         // 2
inline constexpr double kFefOracleTolD3 = 1e-3;         // 3
inline constexpr double kDiscordOracleTol = 1e-3;       // 4
inline constexpr double kKwResidualTol = 1e-3;          // 5
inline constexpr double kPeakValueTol = 1e-9;           // 6
inline constexpr double kEquivalenceTol = 1e-12;        // 8
inline constexpr double kIsoEndpointFefTol = 1e-4;      // 9
inline constexpr double kIsoEndpointDiscordTol = 1e-12; // 9
inline constexpr double kTwoAngleValueTol = 2e-3;       // 10
inline constexpr double kTwoAngleDegenerateTol = 1e-12; // 10, flat case
inline constexpr double kBoundVsOracleTol = 1e-3;       // 11
inline constexpr double kGramTol = 1e-12;               // 12
inline constexpr int kFefGridD2 = 21;                   // 2
inline constexpr int kFefGridD3 = 11;                   // 3
inline constexpr int kDiscordGrid = 11;                 // 4
inline constexpr int kKwGrid = 7;                       // 5
inline constexpr int kWideGrid = 801;                   // 6, 7, 8
inline constexpr int kTwoAngleGrid = 721;               // 10
inline constexpr int kRandomTrials = 50;                // 11
}  // namespace crit

struct CheckRecord {
  std::string name;
  int d = 0;
  double param = 0.0;
  double expected = 0.0;
  double actual = 0.0;
  double delta = 0.0;
  bool pass = false;
  bool required = true;
  std::string note;
};

namespace detail {

inline CheckRecord tolerance_check(std::string name, int d, double param, double expected,
                                   double actual, double tol, bool required = true,
                                   std::string note = {}) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.d = d;
  rec.param = param;
  rec.expected = expected;
  rec.actual = actual;
  rec.delta = std::abs(actual - expected);
  rec.pass = rec.delta <= tol;
  rec.required = required;
  rec.note = std::move(note);
  return rec;
}

inline std::vector<double> uniform_grid(double from, double to, int steps) {
  std::vector<double> xs(steps);
  for (int i = 0; i < steps; ++i) xs[i] = grid_param(from, to, steps, i);
  return xs;
}

}  // namespace detail

inline bool all_pass(const std::vector<CheckRecord>& records) {
  for (const CheckRecord& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

inline bool required_pass(const std::vector<CheckRecord>& records) {
  for (const CheckRecord& r : records) {
    if (r.required && !r.pass) return false;
  }
  return true;
}

// 1: the constructed d=2 complement matches the rendered matrix template
inline std::vector<CheckRecord> check_fixture_match() {
  std::vector<CheckRecord> out;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const Matrix built = werner_complement({2, x}).mat;
    const Matrix rendered = werner_complement_closed_form_d2(x);
    const double diff = (built - rendered).cwiseAbs().maxCoeff();
    out.push_back(detail::tolerance_check("fixture_entrywise_max_diff", 2, x, 0.0, diff,
                                          crit::kFixtureTol));
  }
  return out;
}

// 2: d=2 Werner-complement closed form against the unitary-ascent oracle
inline std::vector<CheckRecord> check_fef_closed_vs_oracle_d2(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  OptimizerConfig cfg = OptimizerConfig::fef_defaults(4);
  cfg.seed = seed;
  for (double x : detail::uniform_grid(-1.0, 1.0, crit::kFefGridD2)) {
    const WernerParams p{2, x};
    const double closed = fef_werner_complement_closed(p);
    const double numeric = fef_numeric(werner_complement(p), cfg).value;
    out.push_back(detail::tolerance_check("fef_closed_vs_oracle", 2, x, closed, numeric,
                                          crit::kFefOracleTolD2));
  }
  out.push_back(detail::tolerance_check("fef_closed_exact_peak", 2, 0.5, 1.0,
                                        fef_werner_complement_closed({2, 0.5}), 0.0));
  out.push_back(detail::tolerance_check("fef_closed_exact_floor", 2, -1.0, 0.25,
                                        fef_werner_complement_closed({2, -1.0}), 0.0));
  return out;
}

// 3: the same comparison at d=3, looser tolerance, larger restart budget
inline std::vector<CheckRecord> check_fef_closed_vs_oracle_d3(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  OptimizerConfig cfg = OptimizerConfig::fef_defaults(9);
  cfg.seed = seed;
  std::vector<double> xs = detail::uniform_grid(-1.0, 1.0, crit::kFefGridD3);
  xs.push_back(1.0 / 3.0);  // the peak is not on the 11-point grid
  for (double x : xs) {
    const WernerParams p{3, x};
    const double closed = fef_werner_complement_closed(p);
    const double numeric = fef_numeric(werner_complement(p), cfg).value;
    out.push_back(detail::tolerance_check("fef_closed_vs_oracle", 3, x, closed, numeric,
                                          crit::kFefOracleTolD3));
  }
  out.push_back(detail::tolerance_check("fef_closed_peak", 3, 1.0 / 3.0, 1.0,
                                        fef_werner_complement_closed({3, 1.0 / 3.0}), 1e-12));
  return out;
}

// 4: d=2 Werner-complement discord closed form against the measurement oracle
inline std::vector<CheckRecord> check_discord_closed_vs_oracle_d2(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  OptimizerConfig cfg = OptimizerConfig::measurement_defaults();
  cfg.seed = seed;
  std::vector<double> xs = detail::uniform_grid(-1.0, 1.0, crit::kDiscordGrid);
  xs.push_back(0.5);  // the exact-peak parameter is not on the 11-point grid
  for (double x : xs) {
    const WernerParams p{2, x};
    const double closed = discord_werner_complement_closed(p);
    const double oracle = discord_oracle(werner_complement(p), cfg).discord;
    out.push_back(detail::tolerance_check("discord_closed_vs_oracle", 2, x, closed, oracle,
                                          crit::kDiscordOracleTol));
  }
  out.push_back(detail::tolerance_check("discord_closed_exact_peak", 2, 0.5, 1.0,
                                        discord_werner_complement_closed({2, 0.5}), 0.0));
  out.push_back(detail::tolerance_check("discord_closed_exact_floor", 2, -1.0, 0.0,
                                        discord_werner_complement_closed({2, -1.0}), 0.0));
  return out;
}

// 5: residual of the formation/classical-correlation trade-off, both families
inline std::vector<CheckRecord> check_kw_residual(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  OptimizerConfig cfg = OptimizerConfig::measurement_defaults();
  cfg.seed = seed;
  for (double x : detail::uniform_grid(-1.0, 1.0, crit::kKwGrid)) {
    const double residual = koashi_winter_residual(WernerParams{2, x}, cfg);
    out.push_back(detail::tolerance_check("kw_residual_werner", 2, x, 0.0, residual,
                                          crit::kKwResidualTol));
  }
  for (double f : detail::uniform_grid(0.0, 1.0, crit::kKwGrid)) {
    const double residual = koashi_winter_residual(IsotropicParams{2, f}, cfg);
    out.push_back(detail::tolerance_check("kw_residual_isotropic", 2, f, 0.0, residual,
                                          crit::kKwResidualTol));
  }
  return out;
}

// 6: closed-form FEF and discord peak together at x = 1/d, value log2(d)
inline std::vector<CheckRecord> check_peak_coincidence(int d) {
  std::vector<CheckRecord> out;
  const std::vector<double> xs = detail::uniform_grid(-1.0, 1.0, crit::kWideGrid);
  const double step = xs[1] - xs[0];
  int fefArg = 0;
  int discordArg = 0;
  double fefBest = -1.0;
  double discordBest = -1.0;
  for (int i = 0; i < crit::kWideGrid; ++i) {
    const WernerParams p{d, xs[i]};
    const double f = fef_werner_complement_closed(p);
    if (f > fefBest) {
      fefBest = f;
      fefArg = i;
    }
    const double q = discord_werner_complement_closed(p);
    if (q > discordBest) {
      discordBest = q;
      discordArg = i;
    }
  }
  const double target = 1.0 / d;
  CheckRecord fefRec = detail::tolerance_check("fef_argmax_at_1_over_d", d, xs[fefArg], target,
                                               xs[fefArg], step + 1e-12);
  fefRec.expected = target;
  out.push_back(fefRec);
  CheckRecord discRec = detail::tolerance_check("discord_argmax_at_1_over_d", d, xs[discordArg],
                                                target, xs[discordArg], step + 1e-12);
  out.push_back(discRec);
  out.push_back(detail::tolerance_check("discord_peak_value", d, target,
                                        std::log2(static_cast<double>(d)),
                                        discord_werner_complement_closed({d, target}),
                                        crit::kPeakValueTol));
  return out;
}

// 7: inflection structure of the closed-form discord curves
inline std::vector<CheckRecord> check_inflections(int d) {
  std::vector<CheckRecord> out;

  SweepConfig cfg;
  cfg.family = Family::WernerComplement;
  cfg.d = d;
  cfg.from = -1.0;
  cfg.to = 1.0;
  cfg.steps = crit::kWideGrid;
  cfg.measures = {Measure::DiscordClosed};
  const InflectionReport w = detect_inflections(run_sweep(cfg), Measure::DiscordClosed);

  double nearest = 1e300;
  for (double loc : w.locations) nearest = std::min(nearest, std::abs(loc));
  out.push_back(detail::tolerance_check("discord_inflection_near_zero", d,
                                        w.locations.empty() ? 0.0 : nearest, 0.0, nearest,
                                        w.gridStep + 1e-12));

  CheckRecord count;
  count.name = "discord_inflection_count";
  count.d = d;
  count.param = 0.0;
  count.expected = 2.0;
  count.actual = static_cast<double>(w.locations.size());
  count.delta = std::max(0.0, count.expected - count.actual);
  count.pass = w.locations.size() >= 2;
  out.push_back(count);

  if (d == 3) {
    SweepConfig iso;
    iso.family = Family::IsotropicComplement;
    iso.d = 3;
    iso.from = 0.0;
    iso.to = 1.0;
    iso.steps = crit::kWideGrid;
    iso.measures = {Measure::DiscordClosed};
    const InflectionReport r = detect_inflections(run_sweep(iso), Measure::DiscordClosed);
    double closest = 1e300;
    for (double loc : r.locations) closest = std::min(closest, std::abs(loc - 1.0 / 3.0));
    out.push_back(detail::tolerance_check("discord_inflection_near_third", 3, 1.0 / 3.0, 0.0,
                                          closest, r.gridStep + 1e-12));
  }
  return out;
}

// 8: the d=2 families coincide under f = (1 - x) / 2
inline std::vector<CheckRecord> check_family_equivalence() {
  double worst = 0.0;
  double worstX = -1.0;
  for (double x : detail::uniform_grid(-1.0, 1.0, crit::kWideGrid)) {
    const double diff = std::abs(discord_werner_complement_closed({2, x}) -
                                 discord_isotropic_complement_closed({2, (1.0 - x) / 2.0}));
    if (diff > worst) {
      worst = diff;
      worstX = x;
    }
  }
  return {detail::tolerance_check("discord_family_equivalence_max_diff", 2, worstX, 0.0, worst,
                                  crit::kEquivalenceTol)};
}

// 9: flat isotropic endpoint, oracle floor value and vanishing discord
inline std::vector<CheckRecord> check_isotropic_endpoint(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  OptimizerConfig cfg = OptimizerConfig::fef_defaults(9);
  cfg.seed = seed;
  const double numeric = fef_numeric(isotropic_complement({3, 1.0}), cfg).value;
  out.push_back(detail::tolerance_check("iso_endpoint_fef", 3, 1.0, 1.0 / 9.0, numeric,
                                        crit::kIsoEndpointFefTol));
  out.push_back(detail::tolerance_check("iso_endpoint_discord", 3, 1.0, 0.0,
                                        discord_isotropic_complement_closed({3, 1.0}),
                                        crit::kIsoEndpointDiscordTol));
  return out;
}

// 10: exhaustive two-angle scan against the closed form and its argmax
inline std::vector<CheckRecord> check_two_angle_scan() {
  std::vector<CheckRecord> out;
  const double pi = std::acos(-1.0);
  const double step = pi / (crit::kTwoAngleGrid - 1);
  for (double x : {-1.0, 0.0, 0.5, 1.0}) {
    const TwoAngleScanResult r = appendix_two_angle_scan(x, crit::kTwoAngleGrid);
    out.push_back(detail::tolerance_check("two_angle_value", 2, x,
                                          fef_werner_complement_closed({2, x}), r.value,
                                          crit::kTwoAngleValueTol));
    if (x == -1.0) {
      // flat objective: every angle pair is optimal, so pin the value at
      // the nominal candidate instead of the noise-determined argmax
      const WernerComplementAngles a = werner_complement_angles({2, x});
      const double c4 = std::cos(pi / 4.0);
      const double s4 = std::sin(pi / 4.0);
      const double f1 = a.cosAlpha + a.sinAlpha * (a.cosTheta * c4 + a.sinTheta * s4);
      const double f2 = a.cosAlpha + a.sinAlpha * (a.cosTheta * s4 + a.sinTheta * c4);
      const double candidate = (f1 * f1 + f2 * f2) / 4.0;
      out.push_back(detail::tolerance_check(
          "two_angle_degenerate_candidate_attains_max", 2, x, r.value, candidate,
          crit::kTwoAngleDegenerateTol, true,
          "objective is constant at this parameter; argmax location is unconstrained"));
    } else {
      out.push_back(detail::tolerance_check("two_angle_argmax_gamma", 2, x, 0.0, r.gammaStar,
                                            step + 1e-12));
      out.push_back(detail::tolerance_check("two_angle_argmax_gamma_prime", 2, x, pi / 4.0,
                                            r.gammaPrimeStar, step + 1e-12));
    }
  }
  return out;
}

// 11: FEF values stay in their admissible band; the isotropic bound stays
// under the oracle value of the state it bounds
inline std::vector<CheckRecord> check_bound_suite(const std::vector<int>& dList,
                                                  std::uint64_t seed) {
  std::vector<CheckRecord> out;
  if (dList.empty()) return out;
  std::mt19937_64 rng(seed_mix(seed, 0x11));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < crit::kRandomTrials; ++trial) {
    const int d = dList[trial % dList.size()];
    const bool isotropic = (trial / dList.size()) % 2 == 1;
    const double u = unit(rng);

    OptimizerConfig cfg = OptimizerConfig::fef_defaults(d * d);
    cfg.seed = seed_mix(seed, 1000 + static_cast<std::uint64_t>(trial));

    const double floor = 1.0 / (d * d);
    auto bandRecord = [&](const char* name, double param, double value) {
      CheckRecord rec;
      rec.name = name;
      rec.d = d;
      rec.param = param;
      rec.expected = floor;
      rec.actual = value;
      rec.delta = 0.0;
      rec.pass = value >= floor - kFefBandSlack && value <= 1.0 + kFefBandSlack;
      out.push_back(rec);
    };

    if (!isotropic) {
      const double x = -1.0 + 2.0 * u;
      bandRecord("fef_band_werner", x, fef_numeric(werner_complement({d, x}), cfg).value);
    } else {
      const IsotropicParams p{d, u};
      bandRecord("fef_band_isotropic", u, fef_numeric(isotropic_complement(p), cfg).value);
      const double bound = fef_isotropic_complement_lower_bound(p);
      const double oracleExplicit = fef_numeric(isotropic_complement_explicit(p), cfg).value;
      bandRecord("fef_band_isotropic_explicit", u, oracleExplicit);
      CheckRecord rec;
      rec.name = "iso_bound_below_oracle";
      rec.d = d;
      rec.param = u;
      rec.expected = oracleExplicit;
      rec.actual = bound;
      rec.delta = std::max(0.0, bound - oracleExplicit);
      rec.pass = bound <= oracleExplicit + crit::kBoundVsOracleTol;
      out.push_back(rec);
    }
  }
  return out;
}

// 12: documented non-orthonormality of the literal spectral basis
inline std::vector<CheckRecord> check_basis_discrepancy(int d) {
  std::vector<CheckRecord> out;
  const double expected = d == 2 ? 0.0 : 0.5;
  for (double f : {0.0, 0.5, 1.0}) {
    const SpectralBasisReport rep = spectral_basis_consistency({d, f});
    out.push_back(detail::tolerance_check("literal_basis_gram_deviation", d, f, expected,
                                          rep.gramDeviation, crit::kGramTol, false,
                                          "documented-discrepancy"));
  }
  return out;
}

struct CriterionRun {
  int id = 0;
  std::string title;
  std::vector<CheckRecord> records;
};

// the full release checklist in order, as run by the acceptance harness
inline std::vector<CriterionRun> run_all_criteria(std::uint64_t seed) {
  std::vector<CriterionRun> runs;
  runs.push_back({1, "d=2 complement matches the rendered matrix template", check_fixture_match()});
  runs.push_back({2, "d=2 FEF closed form vs oracle", check_fef_closed_vs_oracle_d2(seed)});
  runs.push_back({3, "d=3 FEF closed form vs oracle", check_fef_closed_vs_oracle_d3(seed)});
  runs.push_back({4, "d=2 discord closed form vs oracle", check_discord_closed_vs_oracle_d2(seed)});
  runs.push_back({5, "formation/classical-correlation residual", check_kw_residual(seed)});
  {
    CriterionRun r{6, "FEF and discord peak together at x=1/d", {}};
    for (int d : {2, 3}) {
      for (CheckRecord& rec : check_peak_coincidence(d)) r.records.push_back(std::move(rec));
    }
    runs.push_back(std::move(r));
  }
  {
    CriterionRun r{7, "discord curve inflection structure", {}};
    for (int d : {2, 3}) {
      for (CheckRecord& rec : check_inflections(d)) r.records.push_back(std::move(rec));
    }
    runs.push_back(std::move(r));
  }
  runs.push_back({8, "d=2 family equivalence under f=(1-x)/2", check_family_equivalence()});
  runs.push_back({9, "isotropic endpoint oracle and discord", check_isotropic_endpoint(seed)});
  runs.push_back({10, "two-angle scan argmax and value", check_two_angle_scan()});
  runs.push_back({11, "FEF band and lower-bound ordering", check_bound_suite({2, 3}, seed)});
  {
    CriterionRun r{12, "documented literal-basis discrepancy", {}};
    for (int d : {2, 3}) {
      for (CheckRecord& rec : check_basis_discrepancy(d)) r.records.push_back(std::move(rec));
    }
    runs.push_back(std::move(r));
  }
  return runs;
}

// the d-filtered flat record list used by the command-line verify report;
// each check carries its own pinned restart and iteration budget, so a
// caller-supplied optimizer config contributes only the base seed
inline std::vector<CheckRecord> verify_all(const std::vector<int>& dList, std::uint64_t seed) {
  for (int d : dList) {
    if (d != 2 && d != 3) throw ConfigError("verify: only d = 2 and d = 3 are covered");
  }
  const bool has2 = std::find(dList.begin(), dList.end(), 2) != dList.end();
  const bool has3 = std::find(dList.begin(), dList.end(), 3) != dList.end();

  std::vector<CheckRecord> out;
  auto add = [&out](std::vector<CheckRecord> recs) {
    for (CheckRecord& r : recs) out.push_back(std::move(r));
  };

  if (has2) {
    add(check_fixture_match());
    add(check_fef_closed_vs_oracle_d2(seed));
    add(check_discord_closed_vs_oracle_d2(seed));
    add(check_kw_residual(seed));
    add(check_peak_coincidence(2));
    add(check_inflections(2));
    add(check_family_equivalence());
    add(check_two_angle_scan());
    add(check_basis_discrepancy(2));
  }
  if (has3) {
    add(check_fef_closed_vs_oracle_d3(seed));
    add(check_peak_coincidence(3));
    add(check_inflections(3));
    add(check_isotropic_endpoint(seed));
    add(check_basis_discrepancy(3));
  }
  add(check_bound_suite(dList, seed));
  return out;
}

inline std::vector<CheckRecord> verify_all(const std::vector<int>& dList,
                                           const OptimizerConfig& cfg) {
  return verify_all(dList, cfg.seed);
}

}  // namespace qcorr

#endif  // QCORR_VERIFY_HPP
