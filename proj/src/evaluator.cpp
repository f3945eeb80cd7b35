#include "mathieu/evaluator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/radial_series.hpp"

namespace mathieu {

void EvaluatorConfig::validate() const {
  if (n0 < 1) throw ConfigError("EvaluatorConfig: n0 must be >= 1");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw ConfigError("EvaluatorConfig: eps0 must lie in (0, 1)");
  if (!(eps1 > 0.0 && eps1 < 1.0)) throw ConfigError("EvaluatorConfig: eps1 must lie in (0, 1)");
  if (!(fd_step > 0.0 && fd_step < 0.1)) throw ConfigError("EvaluatorConfig: fd_step must lie in (0, 0.1)");
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Series: return "series";
    case Branch::WkbInside: return "wkb_inside";
    case Branch::WkbTurning: return "wkb_turning";
  }
  return "?";
}

ModeEvaluator::ModeEvaluator(const CoefficientTable& table, const EvaluatorConfig& cfg, SymmetryClass c,
                             int n)
    : table_(&table), cfg_(cfg), class_(c), n_(n) {
  cfg_.validate();
  h_ = table.characteristic(c, n);
  const double th = table.theta;
  if (!(th > 0.0)) throw DomainError("evaluate: theta must be > 0");
  if (h_ > 2.0 * th) ctx_.emplace(h_, th);

  series_ = n < cfg_.n0 || 1.0 / h_ >= cfg_.eps0 || h_ <= 0.0 || !ctx_;
  if (!series_) {
    try {
      zero_ = eval(0.0);
    } catch (const PrecisionError& e) {
      diag::warn(std::string("evaluator: ") + to_string(c) + " mode " + std::to_string(n) +
                 " falls back to the series: " + e.what());
      series_ = true;
    }
  }
  if (!series_) {
    // Normalizer of the turning-point first-kind part, used whenever the
    // first-kind value at u comes from the Airy form.
    if (branch_at(0.0) == Branch::WkbTurning) {
      const WkbValue t = wkb_turning_scaled_imag(*ctx_, class_, 0.0);
      first_norm_ = (c == SymmetryClass::Even ? t.value : t.derivative).real();
    } else {
      double lk = -std::numeric_limits<double>::infinity();
      try {
        lk = log_wkb_coupling(table, c, n);
      } catch (const PrecisionError&) {
      }
      const double mag = std::exp(lk + 2.0 * ctx_->s_star());
      first_norm_ = c == SymmetryClass::Even ? -mag : mag;
    }
  }
  if (series_) {
    const SeriesResult s0 = radial_series(table, c, n, 0.0);
    series_norm_ = c == SymmetryClass::Even ? s0.raw_derivative : s0.raw_value;
    if (series_norm_ == 0.0) throw PrecisionError("evaluator: series normalizer vanishes");
    zero_ = eval_series(0.0);
  }
}

double ModeEvaluator::u_star() const {
  return ctx_ ? ctx_->u_star() : std::numeric_limits<double>::quiet_NaN();
}

Branch ModeEvaluator::branch_at(double u) const {
  if (series_) return Branch::Series;
  const double arg = cfg_.literal_cosh_u ? u : 2.0 * u;
  const double ratio = 2.0 * table_->theta * std::cosh(arg) / h_;
  // The inside formula is also restricted to u < u*, which only matters for
  // the literal cosh(u) reading.
  if (ratio < cfg_.eps1 && u < ctx_->u_star()) return Branch::WkbInside;
  return Branch::WkbTurning;
}

Evaluation ModeEvaluator::eval_series(double u) const {
  const SeriesResult s = radial_series(*table_, class_, n_, u);
  return {s.raw_value / series_norm_, s.raw_derivative / series_norm_, Branch::Series};
}

Evaluation ModeEvaluator::eval(double u) const {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("evaluate: u must be finite and >= 0");
  return eval_branch(u, branch_at(u));
}

Evaluation ModeEvaluator::eval_branch(double u, Branch b) const {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("evaluate: u must be finite and >= 0");
  if (b != Branch::Series && !ctx_) throw DomainError("evaluate: WKB branches need h > 2 theta");
  try {
    switch (b) {
      case Branch::Series: return eval_series(u);
      case Branch::WkbInside: {
        const WkbValue w = wkb_inside(*ctx_, *table_, class_, n_, u);
        return {w.value, w.derivative, b};
      }
      case Branch::WkbTurning: {
        const WkbValue w = wkb_turning(*ctx_, class_, u);
        return {w.value, w.derivative, b};
      }
    }
  } catch (const PrecisionError& e) {
    throw PrecisionError(std::string("[") + to_string(b) + "] " + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError(std::string("[") + to_string(b) + "] " + e.what(), e.last_term());
  }
  return {};
}

std::pair<double, double> ModeEvaluator::first_kind(double u) const {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("evaluate: u must be finite and >= 0");
  const Branch b = branch_at(u);
  if (b == Branch::Series) {
    const Evaluation e = eval_series(u);
    const double norm = (class_ == SymmetryClass::Even ? zero_.value : zero_.derivative).imag();
    return {e.value.imag() / norm, e.derivative.imag() / norm};
  }
  if (b == Branch::WkbInside) {
    const WkbValue w = wkb_inside_first_kind(*ctx_, class_, u);
    return {w.value.real(), w.derivative.real()};
  }
  if (!(first_norm_ != 0.0) || !std::isfinite(first_norm_))
    throw PrecisionError("evaluate: first-kind normalizer of mode " + std::to_string(n_) + " is out of range");
  const WkbValue w = wkb_turning_scaled_imag(*ctx_, class_, u);
  return {w.value.real() / first_norm_, w.derivative.real() / first_norm_};
}

Evaluation evaluate(const CoefficientTable& table, const EvaluatorConfig& cfg, SymmetryClass c, int n,
                    double u) {
  return ModeEvaluator(table, cfg, c, n).eval(u);
}

std::optional<double> residual_at(const ModeEvaluator& mode, const EvaluatorConfig& cfg, double theta,
                                  double u) {
  const double d = cfg.fd_step;
  const double q = mode.h() - 2.0 * theta * std::cosh(2.0 * u);
  if (std::abs(q) <= 1e-12 * std::abs(mode.h())) return std::nullopt;
  // All three samples use the branch in force at u.
  const Branch b = mode.branch_at(u);
  const double y0 = mode.eval_branch(u, b).value.imag();
  const double yp = mode.eval_branch(u + d, b).value.imag();
  double ym;
  if (u - d >= 0.0) {
    ym = mode.eval_branch(u - d, b).value.imag();
  } else if (u == 0.0) {
    // Ce is even and Se is odd in u.
    ym = mode.symmetry() == SymmetryClass::Even ? yp : -yp;
  } else {
    throw DomainError("residual: 0 < u < fd_step is not supported");
  }
  const double y2 = (yp - 2.0 * y0 + ym) / (d * d);
  const double y1 = (yp - ym) / (2.0 * d);
  const double envelope = std::sqrt(y0 * y0 + y1 * y1 / std::abs(q));
  if (!(std::abs(y0) > kResidualNodeTol * envelope)) return std::nullopt;
  return std::abs((y2 / y0 - q) / q);
}

std::vector<std::optional<double>> residual(const CoefficientTable& table, const EvaluatorConfig& cfg,
                                            SymmetryClass c, int n, const std::vector<double>& u_grid) {
  cfg.validate();
  for (size_t i = 1; i < u_grid.size(); ++i)
    if (!(u_grid[i] - u_grid[i - 1] >= 4.0 * cfg.fd_step * (1.0 - 1e-9)))
      throw ConfigError("residual: grid must be increasing with spacing >= 4 fd_step");
  const ModeEvaluator mode(table, cfg, c, n);
  std::vector<std::optional<double>> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u >= 0.0)) throw DomainError("residual: u must be >= 0");
    out.push_back(residual_at(mode, cfg, table.theta, u));
  }
  return out;
}

double radius_map(double theta, double u) {
  if (!(theta >= 0.0) || !(u >= 0.0)) throw DomainError("radius_map: needs theta >= 0 and u >= 0");
  return std::sqrt(theta) * std::exp(u);
}

}  // namespace mathieu
