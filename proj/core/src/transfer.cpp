#include "duelgrad/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duelgrad/error.hpp"

namespace duelgrad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive and finite");
  }
}

double sigmoid_magnitude(double omega, double ax) {
  const double e = std::exp(-omega * ax);
  return -std::expm1(-omega * ax) / (1.0 + e);
}

}  // namespace

const char* to_string(TransferKind kind) noexcept {
  switch (kind) {
    case TransferKind::kSign: return "sign";
    case TransferKind::kLinear: return "linear";
    case TransferKind::kSigmoid: return "sigmoid";
    case TransferKind::kPolyProxy: return "poly";
    case TransferKind::kSeriesDefined: return "series";
  }
  return "unknown";
}

TransferFunction TransferFunction::sign() { return {TransferKind::kSign, 1.0, 0.0, 0}; }

TransferFunction TransferFunction::linear(double c_rho) {
  require_positive(c_rho, "linear c_rho");
  return {TransferKind::kLinear, c_rho, 0.0, 1};
}

TransferFunction TransferFunction::sigmoid(double omega) {
  require_positive(omega, "sigmoid omega");
  return {TransferKind::kSigmoid, 0.0, omega, 1};
}

TransferFunction TransferFunction::poly_proxy(int p, double c_rho) {
  if (p < 1) {
    throw Error(ErrorCode::kInvalidArgument, "poly proxy degree must be >= 1 (p = 0 is sign)");
  }
  require_positive(c_rho, "poly c_rho");
  return {TransferKind::kPolyProxy, c_rho, 0.0, p};
}

TransferFunction TransferFunction::series(SeriesSpec spec) {
  const Admissibility adm = check_admissibility(spec);
  TransferFunction tf{TransferKind::kSeriesDefined, adm.lower_const / adm.p, 0.0, adm.p};
  tf.series_ = std::move(spec);
  return tf;
}

double TransferFunction::magnitude(double ax) const {
  switch (kind_) {
    case TransferKind::kSign:
      return ax > 0.0 ? 1.0 : 0.0;
    case TransferKind::kLinear:
      return c_rho_ * ax;
    case TransferKind::kSigmoid:
      return sigmoid_magnitude(omega_, ax);
    case TransferKind::kPolyProxy:
      return c_rho_ * std::pow(ax, p_);
    case TransferKind::kSeriesDefined: {
      double sum = 0.0;
      for (auto it = series_.coefficients.rbegin(); it != series_.coefficients.rend(); ++it) {
        sum += it->second * std::pow(ax, it->first);
      }
      return sum;
    }
  }
  return 0.0;
}

double TransferFunction::raw(double x) const {
  if (std::isnan(x)) throw Error(ErrorCode::kInvalidArgument, "transfer input is NaN");
  if (x > 0.0) return magnitude(x);
  if (x < 0.0) return -magnitude(-x);
  return 0.0;
}

double TransferFunction::operator()(double x) const {
  return std::clamp(raw(x), -1.0, 1.0);
}

double eval(const TransferFunction& tf, double x) { return tf(x); }

ProxyParams TransferFunction::proxy() const {
  switch (kind_) {
    case TransferKind::kSign:
      return {0, 1.0, kInf};
    case TransferKind::kLinear:
      return {1, c_rho_, 1.0 / c_rho_};
    case TransferKind::kSigmoid: {
      // rho' is decreasing on the positive axis, so its value at r bounds it on (0, r).
      const double r = 1.0 / omega_;
      const double t = std::tanh(0.5 * omega_ * r);
      return {1, 0.5 * omega_ * (1.0 - t * t), r};
    }
    case TransferKind::kPolyProxy:
      return {p_, c_rho_, std::pow(1.0 / c_rho_, 1.0 / p_)};
    case TransferKind::kSeriesDefined: {
      const Admissibility adm = check_admissibility(series_);
      return {adm.p, adm.lower_const / adm.p, adm.valid_radius};
    }
  }
  return {};
}

std::string TransferFunction::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case TransferKind::kSign: break;
    case TransferKind::kLinear: os << "(c_rho=" << c_rho_ << ')'; break;
    case TransferKind::kSigmoid: os << "(omega=" << omega_ << ')'; break;
    case TransferKind::kPolyProxy: os << "(p=" << p_ << ", c_rho=" << c_rho_ << ')'; break;
    case TransferKind::kSeriesDefined:
      os << "(p=" << p_ << ", terms=" << series_.coefficients.size() << ')';
      break;
  }
  return os.str();
}

double proxy_derivative(const ProxyParams& pp, double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "proxy derivative needs x >= 0");
  if (pp.p == 0) return 0.0;
  if (pp.p == 1) return pp.c_rho;
  return pp.c_rho * pp.p * std::pow(x, pp.p - 1);
}

Admissibility check_admissibility(const SeriesSpec& spec) {
  if (!(spec.radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "series radius must be > 0");
  if (!(spec.tail_bound >= 0.0) || !std::isfinite(spec.tail_bound)) {
    throw Error(ErrorCode::kInvalidArgument, "series tail bound must be finite and >= 0");
  }
  int p = 0;
  double a_p = 0.0;
  for (const auto& [n, a] : spec.coefficients) {
    if (!std::isfinite(a)) throw Error(ErrorCode::kInvalidArgument, "series coefficient not finite");
    if (a == 0.0) continue;
    if (n < 1) {
      throw Error(ErrorCode::kInadmissible, "series has a nonzero coefficient of degree < 1");
    }
    p = n;
    a_p = a;
    break;
  }
  if (p == 0) throw Error(ErrorCode::kInadmissible, "series has no nonzero coefficient");
  if (!(a_p > 0.0)) {
    throw Error(ErrorCode::kInadmissible, "leading series coefficient must be positive");
  }

  double m = spec.tail_bound;
  for (const auto& [n, a] : spec.coefficients) {
    if (n > p) m = std::max(m, std::abs(n * a));
  }

  Admissibility out;
  out.p = p;
  out.lower_const = 0.5 * p * a_p;
  if (m == 0.0) {
    out.valid_radius = spec.radius;
  } else {
    // The tail estimate sum |x|^n <= 1 / (1 - |x|) <= 2 needs |x| <= 1/2.
    out.valid_radius = std::min({spec.radius, p * a_p / (4.0 * m), 0.5});
  }
  return out;
}

ProxyBoundReport verify_proxy_bound(const TransferFunction& tf, const ProxyParams& pp,
                                    int grid_points) {
  if (tf.kind() == TransferKind::kSign) {
    throw Error(ErrorCode::kNotApplicable, "sign transfer has no derivative bound to verify");
  }
  if (grid_points < 1) throw Error(ErrorCode::kInvalidArgument, "grid_points must be >= 1");
  if (pp.p < 1) throw Error(ErrorCode::kInvalidArgument, "proxy degree must be >= 1");
  require_positive(pp.r, "proxy radius");

  const double h = 1e-6 * pp.r;
  const double log_span = std::log(1e-6);
  ProxyBoundReport report;
  report.grid_points = grid_points;
  report.holds = true;
  for (int i = 0; i < grid_points; ++i) {
    const double frac = 1.0 - static_cast<double>(i + 1) / (grid_points + 1);
    const double x = pp.r * std::exp(log_span * frac);
    const double deriv = (tf.raw(x + h) - tf.raw(x - h)) / (2.0 * h);
    const double required = proxy_derivative(pp, x);
    const double shortfall = required - deriv;
    if (shortfall > report.max_violation) {
      report.max_violation = shortfall;
      report.worst_x = x;
    }
    if (deriv < required - 1e-8) report.holds = false;
  }
  return report;
}

ProxyParams certify_proxy(const TransferFunction& tf, const ProxyParams& pp, int grid_points) {
  if (tf.kind() == TransferKind::kSign) {
    if (pp.p != 0) throw Error(ErrorCode::kInadmissible, "sign transfer only admits p = 0");
    return pp;
  }
  const ProxyBoundReport report = verify_proxy_bound(tf, pp, grid_points);
  if (!report.holds) {
    std::ostringstream os;
    os << "proxy bound fails for " << tf.describe() << " at x=" << report.worst_x
       << " (shortfall " << report.max_violation << ')';
    throw Error(ErrorCode::kInadmissible, os.str());
  }
  return pp;
}

SecantBound sigmoid_secant_constants(double omega) {
  require_positive(omega, "sigmoid omega");
  const double r = 1.0 / omega;
  return {sigmoid_magnitude(omega, r) / r, r};
}

}  // namespace duelgrad
