/*
 * This code is part of qcorr.
 *
 * (C) Copyright 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCORR_SWEEP_HPP
#define QCORR_SWEEP_HPP

#include <qcorr/fef.hpp>
#include <qcorr/linalg.hpp>
#include <qcorr/measures.hpp>
#include <qcorr/states.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace qcorr {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// relative wobble tolerated when checking a grid for uniformity
inline constexpr double kUniformGridRelTol = 1e-9;
// flank cutoff for second-difference sign changes, as a fraction of the
// median second-difference magnitude
inline constexpr double kInflectionFlankFactor = 1e-3;
// seed used when neither flag nor environment provides one
inline constexpr std::uint64_t kDefaultSeed = 42;

enum class Family { WernerComplement, IsotropicComplement };

enum class Measure {
  FefClosed = 0,
  FefNumeric,
  FefLowerBound,
  DiscordClosed,
  DiscordOracle,
  Eof,
  Entropy,
};

inline constexpr int kMeasureCount = 7;

inline const char* measure_name(Measure m) {
  static constexpr std::array<const char*, kMeasureCount> names{
      "fef_closed",     "fef_numeric",   "fef_lower_bound", "discord_closed",
      "discord_oracle", "eof",           "entropy"};
  return names[static_cast<int>(m)];
}

inline Measure parse_measure(const std::string& name) {
  for (int i = 0; i < kMeasureCount; ++i) {
    if (name == measure_name(static_cast<Measure>(i))) return static_cast<Measure>(i);
  }
  throw ConfigError("unknown measure: " + name);
}

inline const char* family_name(Family f) {
  return f == Family::WernerComplement ? "werner-complement" : "isotropic-complement";
}

inline Family parse_family(const std::string& name) {
  if (name == "werner-complement") return Family::WernerComplement;
  if (name == "isotropic-complement") return Family::IsotropicComplement;
  throw ConfigError("unknown family: " + name);
}

inline bool measure_uses_oracle(Measure m) {
  return m == Measure::FefNumeric || m == Measure::DiscordOracle;
}

// closed forms that exist for one family only leave empty fields elsewhere
inline bool measure_applies(Family f, Measure m) {
  if (m == Measure::FefClosed) return f == Family::WernerComplement;
  if (m == Measure::FefLowerBound) return f == Family::IsotropicComplement;
  return true;
}

struct SweepConfig {
  Family family = Family::WernerComplement;
  int d = 2;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  std::vector<Measure> measures;
  OptimizerConfig optimizer;
};

struct CurvePoint {
  double param = 0.0;
  std::array<std::optional<double>, kMeasureCount> values;
  std::optional<int> restartsUsed;
  std::optional<bool> converged;
};

// requested measures in fixed column order, without duplicates
inline std::vector<Measure> canonical_measures(const std::vector<Measure>& requested) {
  std::array<bool, kMeasureCount> seen{};
  for (Measure m : requested) seen[static_cast<int>(m)] = true;
  std::vector<Measure> out;
  for (int i = 0; i < kMeasureCount; ++i) {
    if (seen[i]) out.push_back(static_cast<Measure>(i));
  }
  return out;
}

inline double family_domain_min(Family f) {
  return f == Family::WernerComplement ? -1.0 : 0.0;
}

inline double family_domain_max(Family /*f*/) { return 1.0; }

namespace detail {

inline void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.steps < 2) throw ConfigError("sweep: steps must be >= 2");
  if (!(cfg.from < cfg.to)) throw ConfigError("sweep: need from < to");
  if (cfg.from < family_domain_min(cfg.family) || cfg.to > family_domain_max(cfg.family)) {
    std::ostringstream oss;
    oss << "sweep: range [" << cfg.from << ", " << cfg.to << "] leaves the parameter domain ["
        << family_domain_min(cfg.family) << ", " << family_domain_max(cfg.family) << "]";
    throw ConfigError(oss.str());
  }
  if (cfg.d < 2) throw ConfigError("sweep: d must be >= 2");
  if (cfg.measures.empty()) throw ConfigError("sweep: no measures requested");
  const int envDim = cfg.d * cfg.d;
  for (Measure m : canonical_measures(cfg.measures)) {
    if (!measure_applies(cfg.family, m)) continue;
    if (m == Measure::FefNumeric && envDim > kMaxFefDim) {
      std::ostringstream oss;
      oss << "sweep: measure fef_numeric needs environment dimension " << envDim
          << " which exceeds " << kMaxFefDim;
      throw CapabilityError(oss.str());
    }
    if (m == Measure::DiscordOracle && envDim > kMaxMeasuredDim) {
      std::ostringstream oss;
      oss << "sweep: measure discord_oracle needs measured dimension " << envDim
          << " which exceeds " << kMaxMeasuredDim;
      throw CapabilityError(oss.str());
    }
  }
}

inline double grid_param(double from, double to, int steps, int i) {
  if (i == steps - 1) return to;
  return from + (to - from) * i / (steps - 1);
}

inline void require_finite(double v, Measure m) {
  if (!std::isfinite(v)) {
    std::ostringstream oss;
    oss << "sweep: measure " << measure_name(m) << " produced a non-finite value";
    throw StateError(oss.str());
  }
}

}  // namespace detail

// Evaluate the requested measures of the chosen complement family on an
// inclusive uniform grid. Oracle measures reseed per point from the base
// seed so point results do not depend on evaluation order.
inline std::vector<CurvePoint> run_sweep(const SweepConfig& cfg) {
  detail::validate_sweep_config(cfg);
  const std::vector<Measure> measures = canonical_measures(cfg.measures);

  bool needState = false;
  bool anyOracle = false;
  for (Measure m : measures) {
    if (!measure_applies(cfg.family, m)) continue;
    if (measure_uses_oracle(m)) anyOracle = true;
    if (measure_uses_oracle(m) || m == Measure::Entropy) needState = true;
  }

  std::vector<CurvePoint> points;
  points.reserve(cfg.steps);
  for (int i = 0; i < cfg.steps; ++i) {
    const double param = detail::grid_param(cfg.from, cfg.to, cfg.steps, i);
    CurvePoint pt;
    pt.param = param;

    OptimizerConfig opt = cfg.optimizer;
    opt.seed = seed_mix(cfg.optimizer.seed, static_cast<std::uint64_t>(i));

    std::optional<DensityOperator> state;
    if (needState) {
      state = cfg.family == Family::WernerComplement
                  ? werner_complement({cfg.d, param})
                  : isotropic_complement({cfg.d, param});
    }

    bool allConverged = true;
    for (Measure m : measures) {
      if (!measure_applies(cfg.family, m)) continue;
      double value = 0.0;
      switch (m) {
        case Measure::FefClosed:
          value = fef_werner_complement_closed({cfg.d, param});
          break;
        case Measure::FefNumeric: {
          const FefResult r = fef_numeric(*state, opt);
          value = r.value;
          allConverged = allConverged && r.report.converged;
          break;
        }
        case Measure::FefLowerBound:
          value = fef_isotropic_complement_lower_bound({cfg.d, param});
          break;
        case Measure::DiscordClosed:
          value = cfg.family == Family::WernerComplement
                      ? discord_werner_complement_closed({cfg.d, param})
                      : discord_isotropic_complement_closed({cfg.d, param});
          break;
        case Measure::DiscordOracle: {
          const DiscordResult r = discord_oracle(*state, opt);
          value = r.discord;
          allConverged = allConverged && r.report.converged;
          break;
        }
        case Measure::Eof:
          value = cfg.family == Family::WernerComplement
                      ? eof_werner({cfg.d, param})
                      : eof_isotropic({cfg.d, param}).value;
          break;
        case Measure::Entropy:
          value = von_neumann_entropy(state->mat);
          break;
      }
      detail::require_finite(value, m);
      pt.values[static_cast<int>(m)] = value;
    }
    if (anyOracle) {
      pt.restartsUsed = cfg.optimizer.restarts;
      pt.converged = allConverged;
    }
    points.push_back(std::move(pt));
  }
  return points;
}

// ---------------------------------------------------------------------------
// CSV emission and parsing
// ---------------------------------------------------------------------------

// 17 significant digits: enough for the printed text to reproduce the
// double bit pattern on parse
inline std::string format_number(double v) {
  char buf[64];
  const std::to_chars_result res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                            const std::vector<Measure>& requested) {
  const std::vector<Measure> measures = canonical_measures(requested);
  bool meta = false;
  for (const CurvePoint& pt : points) {
    if (pt.restartsUsed || pt.converged) meta = true;
  }

  out << "param";
  for (Measure m : measures) out << ',' << measure_name(m);
  if (meta) out << ",restarts,converged";
  out << '\n';

  for (const CurvePoint& pt : points) {
    out << format_number(pt.param);
    for (Measure m : measures) {
      out << ',';
      const std::optional<double>& v = pt.values[static_cast<int>(m)];
      if (v) out << format_number(*v);
    }
    if (meta) {
      out << ',';
      if (pt.restartsUsed) out << *pt.restartsUsed;
      out << ',';
      if (pt.converged) out << (*pt.converged ? '1' : '0');
    }
    out << '\n';
  }
}

inline std::string curve_csv_text(const std::vector<CurvePoint>& points,
                                  const std::vector<Measure>& requested) {
  std::ostringstream oss;
  write_curve_csv(oss, points, requested);
  return oss.str();
}

struct ParsedCurve {
  std::vector<Measure> measures;
  bool hasOptimizerMeta = false;
  std::vector<CurvePoint> points;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline double parse_csv_number(const std::string& field, const char* what) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const std::from_chars_result res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    throw ConfigError(std::string("csv: bad ") + what + " value: " + field);
  }
  return value;
}

}  // namespace detail

inline ParsedCurve parse_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: missing header");
  std::vector<std::string> header = detail::split_csv_line(line);
  if (header.empty() || header[0] != "param") {
    throw ConfigError("csv: first column must be param");
  }

  ParsedCurve curve;
  std::size_t measureEnd = header.size();
  if (header.size() >= 3 && header[header.size() - 2] == "restarts" &&
      header[header.size() - 1] == "converged") {
    curve.hasOptimizerMeta = true;
    measureEnd = header.size() - 2;
  }
  for (std::size_t i = 1; i < measureEnd; ++i) {
    curve.measures.push_back(parse_measure(header[i]));
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ConfigError("csv: row width does not match header");
    }
    CurvePoint pt;
    pt.param = detail::parse_csv_number(fields[0], "param");
    for (std::size_t i = 1; i < measureEnd; ++i) {
      if (fields[i].empty()) continue;
      pt.values[static_cast<int>(curve.measures[i - 1])] =
          detail::parse_csv_number(fields[i], measure_name(curve.measures[i - 1]));
    }
    if (curve.hasOptimizerMeta) {
      const std::string& restarts = fields[header.size() - 2];
      const std::string& converged = fields[header.size() - 1];
      if (!restarts.empty()) {
        pt.restartsUsed = static_cast<int>(detail::parse_csv_number(restarts, "restarts"));
      }
      if (!converged.empty()) {
        if (converged != "0" && converged != "1") {
          throw ConfigError("csv: converged flag must be 0 or 1");
        }
        pt.converged = converged == "1";
      }
    }
    curve.points.push_back(std::move(pt));
  }
  return curve;
}

// ---------------------------------------------------------------------------
// inflection detection
// ---------------------------------------------------------------------------

struct InflectionReport {
  std::vector<double> locations;
  double gridStep = 0.0;
  double threshold = 0.0;
};

// Sign changes of the raw central second difference, ignoring flanks whose
// magnitude falls under a fixed fraction of the median one; each location
// is the zero crossing of the linear interpolant between flanks. The median
// gives a curvature scale that endpoint log-singularities cannot inflate,
// so genuinely small curvature changes survive while rounding noise (many
// decades below the median) does not.
inline InflectionReport detect_inflections(const std::vector<CurvePoint>& points,
                                           Measure measure) {
  if (points.size() < 5) throw ConfigError("inflections: need at least 5 points");
  const double h = points[1].param - points[0].param;
  if (!(h > 0.0)) throw ConfigError("inflections: params must increase");
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double step = points[i].param - points[i - 1].param;
    if (std::abs(step - h) > kUniformGridRelTol * std::abs(h)) {
      throw ConfigError("inflections: grid is not uniform");
    }
  }
  std::vector<double> y(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::optional<double>& v = points[i].values[static_cast<int>(measure)];
    if (!v) {
      std::ostringstream oss;
      oss << "inflections: measure " << measure_name(measure) << " missing at param "
          << points[i].param;
      throw ConfigError(oss.str());
    }
    y[i] = *v;
  }

  std::vector<double> d2(points.size() - 2);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    d2[i - 1] = y[i - 1] - 2.0 * y[i] + y[i + 1];
  }
  std::vector<double> mags(d2.size());
  for (std::size_t i = 0; i < d2.size(); ++i) mags[i] = std::abs(d2[i]);
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());

  InflectionReport report;
  report.gridStep = h;
  report.threshold = kInflectionFlankFactor * mags[mags.size() / 2];
  for (std::size_t i = 0; i + 1 < d2.size(); ++i) {
    const double a = d2[i];
    const double b = d2[i + 1];
    if (a * b < 0.0 && std::abs(a) > report.threshold && std::abs(b) > report.threshold) {
      const double x = points[i + 1].param + h * a / (a - b);
      report.locations.push_back(x);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// seed resolution
// ---------------------------------------------------------------------------

// flag beats QCORR_SEED beats the built-in default
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flagSeed) {
  if (flagSeed) return *flagSeed;
  const char* env = std::getenv("QCORR_SEED");
  if (env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const char* last = env + std::string_view(env).size();
    const std::from_chars_result res = std::from_chars(env, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ConfigError(std::string("QCORR_SEED is not an unsigned integer: ") + env);
    }
    return value;
  }
  return kDefaultSeed;
}

}  // namespace qcorr

#endif  // QCORR_SWEEP_HPP
