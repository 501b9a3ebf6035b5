#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include "duelgrad/error.hpp"
#include "duelgrad/geometry.hpp"
#include "test_support.hpp"

using namespace duelgrad;
using duelgrad::testing::vec;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no duelgrad::Error thrown";
  return ErrorCode::kIo;
}

}  // namespace

TEST(Sphere, ZeroDimensionRejected) {
  Rng rng(1);
  EXPECT_EQ(code_of([&] { sample_unit_sphere(0, rng); }), ErrorCode::kInvalidDimension);
}

TEST(Sphere, UnitNormForManyDimensionsAndSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    for (std::size_t d : {1, 2, 3, 7, 50, 500}) {
      const Vector u = sample_unit_sphere(d, rng);
      ASSERT_EQ(u.size(), static_cast<Eigen::Index>(d));
      ASSERT_LE(std::abs(u.norm() - 1.0), 1e-12);
    }
  }
}

TEST(Sphere, OneDimensionIsAFairSign) {
  Rng rng(3);
  const int n = 100000;
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    const Vector u = sample_unit_sphere(1, rng);
    ASSERT_EQ(std::abs(u[0]), 1.0);
    plus += u[0] > 0 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, 4.0 * 0.5 / std::sqrt(n));
}

TEST(Sphere, SecondMomentIsIdentityOverD) {
  Rng rng(11);
  const int n = 1000000;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Vector3d sq = Eigen::Vector3d::Zero();
  Vector u(3);
  for (int i = 0; i < n; ++i) {
    sample_unit_sphere(rng, u);
    mean += u;
    sq += u.cwiseProduct(u);
  }
  mean /= n;
  sq /= n;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(mean[i], 0.0, 0.005);
    EXPECT_NEAR(sq[i], 1.0 / 3.0, 0.005);
  }
}

TEST(Sphere, RotationInvarianceOfMoments) {
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1.0, -2.0, 0.5).normalized()).toRotationMatrix();
  Rng rng(5);
  const int n = 1000000;
  Eigen::Vector3d m1 = Eigen::Vector3d::Zero(), m2 = Eigen::Vector3d::Zero();
  Eigen::Matrix3d c1 = Eigen::Matrix3d::Zero(), c2 = Eigen::Matrix3d::Zero();
  Vector u(3);
  for (int i = 0; i < n; ++i) {
    sample_unit_sphere(rng, u);
    const Eigen::Vector3d a = u;
    const Eigen::Vector3d b = rot * a;
    m1 += a;
    m2 += b;
    c1 += a * a.transpose();
    c2 += b * b.transpose();
  }
  EXPECT_LE((m1 - m2).cwiseAbs().maxCoeff() / n, 0.01);
  EXPECT_LE((c1 - c2).cwiseAbs().maxCoeff() / n, 0.01);
}

TEST(Sphere, InPlaceMatchesAllocatingVersion) {
  Rng a(9), b(9);
  Vector out(4);
  for (int i = 0; i < 100; ++i) {
    sample_unit_sphere(a, out);
    ASSERT_EQ(out, sample_unit_sphere(4, b));
  }
}

TEST(Ball, SampleInBallStaysInside) {
  Rng rng(2);
  const Vector c = vec({1.0, -2.0, 0.5});
  const BallDomain ball(c, 0.3);
  for (int i = 0; i < 10000; ++i) ASSERT_TRUE(ball.contains(sample_in_ball(c, 0.3, rng)));
}

TEST(Ball, ProjectionExamples) {
  const BallDomain unit = duelgrad::testing::unit_ball(2);
  const Vector p = unit.project(vec({3.0, 4.0}));
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
  EXPECT_TRUE(unit.contains(p));

  const Vector inside = vec({0.2, -0.1});
  EXPECT_EQ(unit.project(inside), inside);

  const BallDomain shifted(vec({1.0, 1.0}), 2.0);
  const Vector q = shifted.project(vec({1.0, 5.0}));
  EXPECT_EQ(q[0], 1.0);
  EXPECT_NEAR(q[1], 3.0, 1e-15);
}

TEST(Ball, DiameterIsTwiceRadius) {
  EXPECT_EQ(BallDomain(vec({0.0, 0.0}), 1.5).diameter(), 3.0);
}

TEST(Ball, InvalidConstruction) {
  EXPECT_THROW(BallDomain(vec({0.0}), 0.0), Error);
  EXPECT_THROW(BallDomain(vec({0.0}), -1.0), Error);
  EXPECT_THROW(BallDomain(vec({std::nan("")}), 1.0), Error);
}

TEST(Ball, DimensionMismatchOnProject) {
  const BallDomain unit = duelgrad::testing::unit_ball(2);
  EXPECT_EQ(code_of([&] { unit.project(vec({1.0, 2.0, 3.0})); }), ErrorCode::kDimensionMismatch);
}

// Property: idempotence (bitwise), feasibility, contraction toward interior
// points, and the variational inequality of the Euclidean projection.
TEST(Ball, ProjectionProperties) {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + trial % 6;
    Vector center(d);
    for (auto& c : center) c = 4.0 * rng.uniform() - 2.0;
    const double radius = 0.01 + 3.0 * rng.uniform();
    const BallDomain ball(center, radius);

    Vector x(d);
    const double scale = std::pow(10.0, 4.0 * rng.uniform() - 1.0);
    for (auto& xi : x) xi = scale * rng.normal();
    x += center;

    const Vector p = ball.project(x);
    ASSERT_TRUE(ball.contains(p));
    ASSERT_EQ(ball.project(p), p);

    const Vector interior = sample_in_ball(center, radius, rng);
    ASSERT_LE((p - interior).norm(), (x - interior).norm() + 1e-12);
    ASSERT_LE((x - p).dot(interior - p), 1e-9 * (1.0 + x.norm()));

    const Vector y = sample_in_ball(center, 3.0 * radius, rng);
    ASSERT_LE((ball.project(y) - p).norm(), (y - x).norm() + 1e-12);
  }
}

TEST(GradientBound, Examples) {
  EXPECT_DOUBLE_EQ(gradient_norm_lower_bound(0.1, 2.0), 0.05);
  EXPECT_EQ(gradient_norm_lower_bound(1.0, 1.0), 1.0);
  const double eps = 0.01, D = 2.0;
  EXPECT_EQ(gradient_norm_lower_bound(eps, D), eps / D);
}

TEST(GradientBound, NonPositiveInputsRejected) {
  EXPECT_THROW(gradient_norm_lower_bound(0.0, 1.0), Error);
  EXPECT_THROW(gradient_norm_lower_bound(1.0, 0.0), Error);
  EXPECT_THROW(gradient_norm_lower_bound(-1.0, 1.0), Error);
}

// Convexity bound: for f(x) = |x|^2 / 2 + b.x, gap / dist never exceeds |grad f|.
TEST(GradientBound, IsALowerBoundOnConvexQuadratics) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Vector xs = sample_in_ball(Vector::Zero(3), 1.0, rng);
    const Vector x = sample_in_ball(Vector::Zero(3), 1.0, rng);
    const double gap = 0.5 * (x - xs).squaredNorm();
    const double dist = (x - xs).norm();
    if (dist == 0.0) continue;
    ASSERT_LE(gradient_norm_lower_bound(gap, dist), (x - xs).norm() + 1e-15);
  }
}

TEST(Validation, RequireHelpers) {
  EXPECT_NO_THROW(require_finite(vec({1.0, 2.0}), "x"));
  EXPECT_EQ(code_of([] { require_finite(vec({1.0, INFINITY}), "x"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { require_dim(vec({1.0}), 2, "x"); }), ErrorCode::kDimensionMismatch);
}
