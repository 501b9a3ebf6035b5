#include "duelgrad/objectives.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "duelgrad/error.hpp"

namespace duelgrad {

double QuadraticObjective::value(const Vector& w) const {
  const Vector diff = w - wstar_;
  return 0.5 * diff.dot(a_ * diff);
}

Vector QuadraticObjective::gradient(const Vector& w) const { return a_ * (w - wstar_); }

QuadraticObjective QuadraticObjective::with_claimed_constants(double beta, double alpha) const {
  QuadraticObjective copy = *this;
  copy.beta_ = beta;
  copy.alpha_ = alpha;
  return copy;
}

QuadraticObjective make_quadratic(const Matrix& a, const Vector& wstar, const BallDomain& domain,
                                  double gamma_max) {
  const auto d = static_cast<std::size_t>(wstar.size());
  if (d == 0) throw Error(ErrorCode::kInvalidDimension, "objective dimension must be >= 1");
  if (static_cast<std::size_t>(a.rows()) != d || static_cast<std::size_t>(a.cols()) != d) {
    throw Error(ErrorCode::kDimensionMismatch, "Hessian shape does not match the minimiser");
  }
  require_dim(domain.center(), d, "domain center");
  require_finite(wstar, "minimiser");
  if (!a.allFinite()) throw Error(ErrorCode::kInvalidArgument, "Hessian has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "Hessian is not symmetric");
  }
  if (!domain.contains(wstar)) {
    throw Error(ErrorCode::kInvalidArgument, "minimiser lies outside the domain");
  }
  if (!(gamma_max >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma_max must be >= 0");

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo < -1e-10) throw Error(ErrorCode::kInvalidArgument, "Hessian is not positive semidefinite");
  if (!(hi > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Hessian must be nonzero");

  QuadraticObjective obj(a, wstar, domain);
  obj.beta_ = hi;
  obj.alpha_ = lo <= 1e-12 * hi ? 0.0 : lo;
  obj.lipschitz_ = hi * (domain.diameter() + gamma_max);
  return obj;
}

QuadraticObjective make_diagonal_quadratic(const std::vector<double>& eigenvalues,
                                           const Vector& wstar, const BallDomain& domain,
                                           double gamma_max) {
  const Vector diag = Eigen::Map<const Vector>(eigenvalues.data(),
                                               static_cast<Eigen::Index>(eigenvalues.size()));
  return make_quadratic(diag.asDiagonal().toDenseMatrix(), wstar, domain, gamma_max);
}

bool PropertyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

double PropertyReport::max_violation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.max_violation);
  return worst;
}

const InequalityCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

void record(InequalityCheck& check, double violation) {
  ++check.samples;
  check.max_violation = std::max(check.max_violation, violation);
  if (violation > kInequalitySlack) ++check.violations;
}

/// Random pairs inside the domain followed by one pair straddling the centre
/// along each coordinate axis.
template <typename Fn>
void for_each_pair(const Objective& obj, std::size_t trials, Rng& rng, Fn&& fn) {
  const BallDomain& dom = obj.domain();
  for (std::size_t i = 0; i < trials; ++i) {
    const Vector x = sample_in_ball(dom.center(), dom.radius(), rng);
    const Vector y = sample_in_ball(dom.center(), dom.radius(), rng);
    fn(x, y);
  }
  for (std::size_t axis = 0; axis < obj.dim(); ++axis) {
    Vector offset = Vector::Zero(static_cast<Eigen::Index>(obj.dim()));
    offset[static_cast<Eigen::Index>(axis)] = 0.5 * dom.radius();
    fn(Vector(dom.center() + offset), Vector(dom.center() - offset));
  }
}

}  // namespace

PropertyReport check_smooth_convex(const Objective& obj, std::size_t trials, Rng& rng) {
  InequalityCheck convex{"convexity"};
  InequalityCheck smooth{"smoothness"};
  InequalityCheck strong{"strong-convexity"};
  const double beta = obj.beta();
  const double alpha = obj.alpha();
  for_each_pair(obj, trials, rng, [&](const Vector& x, const Vector& y) {
    const Vector delta = x - y;
    const double excess = obj.value(x) - obj.value(y) - obj.gradient(y).dot(delta);
    const double sq = delta.squaredNorm();
    record(convex, -excess);
    record(smooth, excess - 0.5 * beta * sq);
    record(strong, 0.5 * alpha * sq - excess);
  });
  return {{convex, smooth, strong}};
}

PropertyReport check_strong_smooth_coercivity(const Objective& obj, std::size_t trials,
                                              Rng& rng) {
  const double alpha = obj.alpha();
  const double beta = obj.beta();
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kNotApplicable, "coercivity check needs a strongly convex objective");
  }
  InequalityCheck check{"strong-smooth-coercivity"};
  for_each_pair(obj, trials, rng, [&](const Vector& x, const Vector& y) {
    const Vector delta = x - y;
    const Vector gdiff = obj.gradient(x) - obj.gradient(y);
    const double lhs = gdiff.dot(delta);
    const double rhs = alpha * beta / (alpha + beta) * delta.squaredNorm() +
                       gdiff.squaredNorm() / (alpha + beta);
    record(check, rhs - lhs);
  });
  return {{check}};
}

PropertyReport check_minimizer_properties(const Objective& obj, std::size_t trials, Rng& rng) {
  const double beta = obj.beta();
  const double alpha = obj.alpha();
  const Vector& xstar = obj.minimizer();
  const double fstar = obj.value(xstar);

  InequalityCheck optimality{"first-order-optimality"};
  record(optimality, obj.gradient(xstar).norm());

  InequalityCheck minimal{"minimizer-value"};
  InequalityCheck grad_gap{"gradient-norm-vs-gap"};
  InequalityCheck gap_upper{"gap-vs-distance-upper"};
  InequalityCheck gap_lower{"gap-vs-distance-lower"};
  InequalityCheck grad_dist{"gradient-norm-vs-distance"};
  const BallDomain& dom = obj.domain();
  for (std::size_t i = 0; i < trials; ++i) {
    const Vector x = sample_in_ball(dom.center(), dom.radius(), rng);
    const double gap = obj.value(x) - fstar;
    const double dist_sq = (x - xstar).squaredNorm();
    const Vector g = obj.gradient(x);
    record(minimal, -gap);
    record(grad_gap, g.squaredNorm() - 2.0 * beta * gap);
    record(gap_upper, gap - 0.5 * beta * dist_sq);
    if (alpha > 0.0) {
      record(gap_lower, 0.5 * alpha * dist_sq - gap);
      record(grad_dist, alpha * std::sqrt(dist_sq) - g.norm());
    }
  }
  PropertyReport report{{optimality, minimal, grad_gap, gap_upper}};
  if (alpha > 0.0) {
    report.checks.push_back(gap_lower);
    report.checks.push_back(grad_dist);
  }
  return report;
}

PropertyReport check_gradient(const Objective& obj, std::size_t trials, Rng& rng) {
  InequalityCheck check{"gradient-finite-difference"};
  const BallDomain& dom = obj.domain();
  const auto d = static_cast<Eigen::Index>(obj.dim());
  for (std::size_t i = 0; i < trials; ++i) {
    const Vector x = sample_in_ball(dom.center(), dom.radius(), rng);
    const double h = 1e-6 * std::max(1.0, x.norm());
    Vector fd(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector xp = x;
      Vector xm = x;
      xp[j] += h;
      xm[j] -= h;
      fd[j] = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
    }
    const Vector g = obj.gradient(x);
    const double rel = (g - fd).norm() / std::max(1.0, g.norm());
    ++check.samples;
    check.max_violation = std::max(check.max_violation, rel);
    if (rel > 1e-5) ++check.violations;
  }
  return {{check}};
}

}  // namespace duelgrad
