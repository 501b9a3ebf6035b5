#include "duelgrad/geometry.hpp"

#include <cmath>
#include <string>

#include "duelgrad/error.hpp"

namespace duelgrad {

void sample_unit_sphere(Rng& rng, Eigen::Ref<Vector> out) {
  if (out.size() == 0) throw Error(ErrorCode::kInvalidDimension, "sphere dimension must be >= 1");
  for (;;) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.normal();
    const double norm = out.norm();
    if (norm >= 1e-300) {
      out /= norm;
      return;
    }
  }
}

Vector sample_unit_sphere(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorCode::kInvalidDimension, "sphere dimension must be >= 1");
  Vector u(static_cast<Eigen::Index>(dim));
  sample_unit_sphere(rng, u);
  return u;
}

Vector sample_in_ball(const Vector& center, double radius, Rng& rng) {
  Vector u = sample_unit_sphere(static_cast<std::size_t>(center.size()), rng);
  const double scale = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(center.size()));
  return center + scale * u;
}

BallDomain::BallDomain(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw Error(ErrorCode::kInvalidDimension, "ball dimension must be >= 1");
  require_finite(center_, "ball center");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw Error(ErrorCode::kInvalidArgument, "ball radius must be positive and finite");
  }
}

bool BallDomain::contains(const Vector& point) const {
  require_dim(point, dim(), "point");
  return (point - center_).norm() <= radius_;
}

Vector BallDomain::project(const Vector& point) const {
  require_dim(point, dim(), "point");
  const Vector offset = point - center_;
  const double dist = offset.norm();
  if (dist <= radius_) return point;
  Vector scaled = offset * (radius_ / dist);
  // Rounding can leave the rescaled point a few ulps outside; shrink until the
  // same membership test used above accepts it.
  Vector result = center_ + scaled;
  while ((result - center_).norm() > radius_) {
    scaled *= 1.0 - 0x1.0p-52;
    result = center_ + scaled;
  }
  return result;
}

double gradient_norm_lower_bound(double gap, double dist) {
  if (!(gap > 0.0) || !(dist > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gap and distance must be positive");
  }
  return gap / dist;
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " has non-finite entries");
  }
}

void require_dim(const Vector& v, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(dim));
  }
}

}  // namespace duelgrad
