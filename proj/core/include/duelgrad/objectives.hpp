#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "duelgrad/geometry.hpp"

namespace duelgrad {

/// A test objective with certified constants. The solvers only ever call
/// value() through the comparison oracle; gradient() exists for diagnostics.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& w) const = 0;
  virtual Vector gradient(const Vector& w) const = 0;

  virtual double beta() const = 0;
  virtual double alpha() const = 0;
  virtual double lipschitz() const = 0;
  virtual const Vector& minimizer() const = 0;
  virtual const BallDomain& domain() const = 0;

  double min_value() const { return value(minimizer()); }
  double gap(const Vector& w) const { return value(w) - min_value(); }
  double dist_sq(const Vector& w) const { return (w - minimizer()).squaredNorm(); }
};

/// f(w) = 1/2 (w - w*)^T A (w - w*).
class QuadraticObjective final : public Objective {
 public:
  std::size_t dim() const override { return static_cast<std::size_t>(wstar_.size()); }
  double value(const Vector& w) const override;
  Vector gradient(const Vector& w) const override;

  double beta() const override { return beta_; }
  double alpha() const override { return alpha_; }
  double lipschitz() const override { return lipschitz_; }
  const Vector& minimizer() const override { return wstar_; }
  const BallDomain& domain() const override { return domain_; }

  const Matrix& hessian() const { return a_; }

  /// Copy that advertises different constants; used to exercise the
  /// property checkers against deliberately wrong claims.
  QuadraticObjective with_claimed_constants(double beta, double alpha) const;

 private:
  friend QuadraticObjective make_quadratic(const Matrix&, const Vector&, const BallDomain&,
                                           double);
  QuadraticObjective(Matrix a, Vector wstar, BallDomain domain)
      : a_(std::move(a)), wstar_(std::move(wstar)), domain_(std::move(domain)) {}

  Matrix a_;
  Vector wstar_;
  BallDomain domain_;
  double beta_ = 0.0;
  double alpha_ = 0.0;
  double lipschitz_ = 0.0;
};

/// beta = lambda_max(A), alpha = max(lambda_min(A), 0), L = beta (D + gamma_max).
/// Throws kInvalidArgument for non-symmetric A, an eigenvalue below -1e-10, or
/// a minimiser outside the domain.
QuadraticObjective make_quadratic(const Matrix& a, const Vector& wstar, const BallDomain& domain,
                                  double gamma_max = 0.0);

/// Diagonal-Hessian shorthand.
QuadraticObjective make_diagonal_quadratic(const std::vector<double>& eigenvalues,
                                           const Vector& wstar, const BallDomain& domain,
                                           double gamma_max = 0.0);

inline constexpr double kInequalitySlack = 1e-9;

struct InequalityCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;

  bool passed() const { return violations == 0; }
};

struct PropertyReport {
  std::vector<InequalityCheck> checks;

  bool passed() const;
  double max_violation() const;
  const InequalityCheck* find(const std::string& name) const;
};

/// Convexity, beta-smoothness and alpha-strong-convexity (first-order forms)
/// on `trials` random pairs in the domain plus coordinate-aligned pairs.
PropertyReport check_smooth_convex(const Objective& obj, std::size_t trials, Rng& rng);

/// (g(x)-g(y))^T(x-y) >= ab/(a+b) |x-y|^2 + 1/(a+b) |g(x)-g(y)|^2.
/// Throws kNotApplicable when alpha == 0.
PropertyReport check_strong_smooth_coercivity(const Objective& obj, std::size_t trials, Rng& rng);

/// Consequences measured against the minimiser: |g|^2 <= 2 beta gap,
/// gap <= beta/2 |x-x*|^2, and for alpha > 0 also alpha/2 |x-x*|^2 <= gap and
/// |g| >= alpha |x-x*|. Also checks g(x*) = 0 and f(x*) <= f(x).
PropertyReport check_minimizer_properties(const Objective& obj, std::size_t trials, Rng& rng);

/// Analytic gradient against central finite differences. max_violation holds
/// the worst relative error; a sample fails above 1e-5.
PropertyReport check_gradient(const Objective& obj, std::size_t trials, Rng& rng);

}  // namespace duelgrad
