#pragma once

#include <map>
#include <optional>
#include <string>

namespace duelgrad {

enum class TransferKind { kSign, kLinear, kSigmoid, kPolyProxy, kSeriesDefined };

const char* to_string(TransferKind kind) noexcept;

/// Parameters of the p-th order proxy c_rho * sign(x) * |x|^p, valid on (-r, r).
struct ProxyParams {
  int p = 1;
  double c_rho = 1.0;
  double r = 1.0;
};

/// Leading coefficients a_n (n >= 1) of a power series about the origin,
/// together with its radius of convergence and a bound M >= |n a_n| for every
/// n above the leading degree.
struct SeriesSpec {
  std::map<int, double> coefficients;
  double radius = 1.0;
  double tail_bound = 0.0;
};

struct Admissibility {
  int p = 0;
  double lower_const = 0.0;
  double valid_radius = 0.0;
};

/// Maps a difference of objective values to an expected signed preference in
/// [-1, 1]. Immutable; every evaluation is anti-symmetric by construction
/// (sign(x) * g(|x|)).
class TransferFunction {
 public:
  static TransferFunction sign();
  static TransferFunction linear(double c_rho);
  static TransferFunction sigmoid(double omega);
  /// c_rho * sign(x) * |x|^p.
  static TransferFunction poly_proxy(int p, double c_rho);
  /// sign(x) * sum_n a_n |x|^n over the supplied coefficients.
  static TransferFunction series(SeriesSpec spec);

  TransferKind kind() const { return kind_; }

  /// Clamped response, always in [-1, 1]. Throws kInvalidArgument on NaN.
  double operator()(double x) const;

  /// The unclamped law (c_rho x for Linear, the polynomial for PolyProxy and
  /// series kinds). Equal to operator() wherever the law stays inside [-1, 1].
  double raw(double x) const;

  /// Proxy constants certified for this transfer. Sign reports p = 0,
  /// c_rho = 1. Sigmoid reports the derivative-certified slope on (0, 1/omega).
  ProxyParams proxy() const;

  double c_rho() const { return c_rho_; }
  double omega() const { return omega_; }
  int degree() const { return p_; }
  const SeriesSpec& series_spec() const { return series_; }

  std::string describe() const;

 private:
  TransferFunction(TransferKind kind, double c_rho, double omega, int p)
      : kind_(kind), c_rho_(c_rho), omega_(omega), p_(p) {}

  double magnitude(double ax) const;

  TransferKind kind_;
  double c_rho_;
  double omega_;
  int p_;
  SeriesSpec series_;
};

/// Free-function form of TransferFunction::operator().
double eval(const TransferFunction& tf, double x);

/// Derivative of the proxy on the non-negative axis: c_rho * p * x^(p-1).
/// p = 0 returns 0 (the sign proxy has no derivative law). Throws on x < 0.
double proxy_derivative(const ProxyParams& pp, double x);

/// Degree, derivative constant, and validity radius of a series-defined
/// transfer: p = least nonzero degree, lower_const = p a_p / 2,
/// valid_radius = min(delta, p a_p / (4 M)) (delta when M = 0).
Admissibility check_admissibility(const SeriesSpec& spec);

struct ProxyBoundReport {
  bool holds = false;
  double max_violation = 0.0;
  double worst_x = 0.0;
  int grid_points = 0;
};

/// Checks rho'(x) >= c_rho p x^(p-1) - 1e-8 on `grid_points` log-spaced
/// abscissae in (0, r), differentiating the unclamped law by central
/// differences with step 1e-6 r. Sign transfers throw kNotApplicable.
ProxyBoundReport verify_proxy_bound(const TransferFunction& tf, const ProxyParams& pp,
                                    int grid_points);

/// Validates `pp` against `tf` and returns it; throws kInadmissible if the
/// derivative bound fails anywhere on the grid.
ProxyParams certify_proxy(const TransferFunction& tf, const ProxyParams& pp,
                          int grid_points = 256);

/// Secant constants (c, r) with |rho(x)| >= c |x| on [-r, r] for the sigmoid:
/// r = 1/omega, c = rho(r) / r. Concavity of the sigmoid on the positive axis
/// makes the secant a lower bound.
struct SecantBound {
  double c_rho = 0.0;
  double r = 0.0;
};
SecantBound sigmoid_secant_constants(double omega);

}  // namespace duelgrad
