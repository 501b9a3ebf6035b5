#pragma once

#include <Eigen/Core>

#include <cstddef>

#include "duelgrad/random.hpp"

namespace duelgrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Uniform direction on the unit sphere S_d(1), by normalising a standard
/// Gaussian draw. Draws with norm below 1e-300 are resampled.
Vector sample_unit_sphere(std::size_t dim, Rng& rng);

/// In-place variant for hot loops; `out` must already have the target size.
void sample_unit_sphere(Rng& rng, Eigen::Ref<Vector> out);

/// Uniform point in the ball of the given centre and radius.
Vector sample_in_ball(const Vector& center, double radius, Rng& rng);

/// A closed convex feasible set with Euclidean projection.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::size_t dim() const = 0;
  virtual double diameter() const = 0;
  virtual bool contains(const Vector& point) const = 0;
  virtual Vector project(const Vector& point) const = 0;
};

class BallDomain final : public Domain {
 public:
  BallDomain(Vector center, double radius);

  std::size_t dim() const override { return static_cast<std::size_t>(center_.size()); }
  double diameter() const override { return 2.0 * radius_; }
  bool contains(const Vector& point) const override;

  /// Closest point of the ball. Interior points come back unchanged, and the
  /// result of projecting an exterior point is itself a fixed point, so
  /// project(project(x)) == project(x) bit for bit.
  Vector project(const Vector& point) const override;

  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vector center_;
  double radius_;
};

/// Lower bound gap/dist on the gradient norm of a convex function at a point
/// whose suboptimality is `gap` and which lies `dist` away from a minimiser.
double gradient_norm_lower_bound(double gap, double dist);

/// Throws kInvalidArgument unless every entry is finite.
void require_finite(const Vector& v, const char* what);

void require_dim(const Vector& v, std::size_t dim, const char* what);

}  // namespace duelgrad
