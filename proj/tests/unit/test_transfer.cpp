#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "duelgrad/error.hpp"
#include "duelgrad/random.hpp"
#include "duelgrad/transfer.hpp"

using namespace duelgrad;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<TransferFunction> builtins() {
  SeriesSpec atan_like;
  atan_like.coefficients = {{1, 1.0}, {3, -1.0 / 3.0}, {5, 0.2}};
  atan_like.radius = 1.0;
  atan_like.tail_bound = 1.0;
  return {TransferFunction::sign(),          TransferFunction::linear(0.5),
          TransferFunction::linear(3.0),     TransferFunction::sigmoid(0.3),
          TransferFunction::sigmoid(5.0),    TransferFunction::poly_proxy(2, 0.7),
          TransferFunction::poly_proxy(3, 2.0), TransferFunction::series(atan_like)};
}

std::vector<double> grid() {
  std::vector<double> xs{0.0, 1e-300, 1e-12, 1e-6, 0.01, 0.3, 0.5, 0.999, 1.0, 1.5, 7.0, 1e6};
  Rng rng(12);
  for (int i = 0; i < 200; ++i) xs.push_back(std::exp(20.0 * rng.uniform() - 14.0));
  return xs;
}

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

TEST(Transfer, SignExamples) {
  const auto tf = TransferFunction::sign();
  EXPECT_EQ(eval(tf, 0.3), 1.0);
  EXPECT_EQ(eval(tf, -0.3), -1.0);
  EXPECT_EQ(eval(tf, 0.0), 0.0);
}

TEST(Transfer, LinearExampleAndClamp) {
  const auto tf = TransferFunction::linear(0.5);
  EXPECT_DOUBLE_EQ(eval(tf, 0.4), 0.2);
  EXPECT_EQ(eval(tf, 3.0), 1.0);
  EXPECT_EQ(eval(tf, -3.0), -1.0);
  EXPECT_EQ(tf.raw(3.0), 1.5);
}

TEST(Transfer, SigmoidHalfAtLogThreeOverOmega) {
  for (double omega : {0.1, 1.0, 2.0, 37.0}) {
    EXPECT_NEAR(eval(TransferFunction::sigmoid(omega), std::log(3.0) / omega), 0.5, 1e-15);
  }
}

TEST(Transfer, SigmoidMatchesHyperbolicTangent) {
  // (1 - e^{-wx}) / (1 + e^{-wx}) = tanh(wx / 2)
  const auto tf = TransferFunction::sigmoid(2.5);
  for (double x : {1e-9, 0.01, 0.4, 3.0, 40.0}) {
    EXPECT_NEAR(tf(x), std::tanh(1.25 * x), 1e-15);
  }
}

TEST(Transfer, NanRejected) {
  for (const auto& tf : builtins()) {
    EXPECT_EQ(code_of([&] { eval(tf, std::nan("")); }), ErrorCode::kInvalidArgument);
  }
}

TEST(Transfer, InvalidParametersRejected) {
  EXPECT_THROW(TransferFunction::linear(0.0), Error);
  EXPECT_THROW(TransferFunction::linear(-1.0), Error);
  EXPECT_THROW(TransferFunction::sigmoid(0.0), Error);
  EXPECT_THROW(TransferFunction::poly_proxy(0, 1.0), Error);
  EXPECT_THROW(TransferFunction::poly_proxy(2, 0.0), Error);
}

// Property: every built-in is bounded, exactly anti-symmetric, zero at zero
// and sign preserving.
TEST(Transfer, BuiltinInvariants) {
  for (const auto& tf : builtins()) {
    EXPECT_EQ(tf(0.0), 0.0) << tf.describe();
    for (double x : grid()) {
      const double v = tf(x);
      ASSERT_LE(std::abs(v), 1.0) << tf.describe() << " x=" << x;
      ASSERT_EQ(v, -tf(-x)) << tf.describe() << " x=" << x;
      // Skip abscissae where a power law underflows to zero.
      if (x > 1e-100 && tf.kind() != TransferKind::kSeriesDefined) {
        ASSERT_GT(v, 0.0) << tf.describe() << " x=" << x;
      }
    }
  }
}

TEST(Transfer, ProxyConstantsPerKind) {
  const ProxyParams s = TransferFunction::sign().proxy();
  EXPECT_EQ(s.p, 0);
  EXPECT_EQ(s.c_rho, 1.0);

  const ProxyParams l = TransferFunction::linear(0.25).proxy();
  EXPECT_EQ(l.p, 1);
  EXPECT_EQ(l.c_rho, 0.25);
  EXPECT_EQ(l.r, 4.0);

  const ProxyParams q = TransferFunction::poly_proxy(2, 4.0).proxy();
  EXPECT_EQ(q.p, 2);
  EXPECT_EQ(q.c_rho, 4.0);
  EXPECT_DOUBLE_EQ(q.r, 0.5);

  // Derivative of tanh(wx/2) at x = 1/w.
  const double omega = 3.0;
  const ProxyParams g = TransferFunction::sigmoid(omega).proxy();
  const double sech = 1.0 / std::cosh(0.5);
  EXPECT_EQ(g.p, 1);
  EXPECT_NEAR(g.c_rho, 0.5 * omega * sech * sech, 1e-15);
  EXPECT_DOUBLE_EQ(g.r, 1.0 / omega);
}

TEST(Transfer, BuiltinProxiesCertify) {
  for (const auto& tf : builtins()) {
    if (tf.kind() == TransferKind::kSign) continue;
    const ProxyParams pp = tf.proxy();
    const auto report = verify_proxy_bound(tf, pp, 512);
    EXPECT_TRUE(report.holds) << tf.describe() << " violation " << report.max_violation;
    EXPECT_NO_THROW(certify_proxy(tf, pp));
  }
}

TEST(Transfer, SigmoidSecantConstants) {
  const double omega = 2.0;
  const auto sec = sigmoid_secant_constants(omega);
  const auto tf = TransferFunction::sigmoid(omega);
  EXPECT_DOUBLE_EQ(sec.r, 0.5);
  EXPECT_NEAR(sec.c_rho, tf(0.5) / 0.5, 1e-15);
  // Concavity: the secant bounds |rho| from below on [0, r].
  for (int i = 1; i <= 1000; ++i) {
    const double x = sec.r * i / 1000.0;
    ASSERT_GE(tf(x), sec.c_rho * x - 1e-15);
  }
}

TEST(ProxyDerivative, Examples) {
  EXPECT_EQ(proxy_derivative({1, 1.0, 1.0}, 7.0), 1.0);
  EXPECT_DOUBLE_EQ(proxy_derivative({2, 1.0, 1.0}, 0.5), 1.0);
  EXPECT_EQ(proxy_derivative({2, 0.3, 1.0}, 0.0), 0.0);
  EXPECT_EQ(proxy_derivative({0, 1.0, kInf}, 0.5), 0.0);
  EXPECT_EQ(code_of([] { proxy_derivative({1, 1.0, 1.0}, -0.1); }), ErrorCode::kInvalidArgument);
}

TEST(ProxyDerivative, MonotoneForPositiveDegree) {
  for (int p = 1; p <= 6; ++p) {
    const ProxyParams pp{p, 0.7, 1.0};
    double prev = proxy_derivative(pp, 0.0);
    for (int i = 1; i <= 2000; ++i) {
      const double cur = proxy_derivative(pp, i / 500.0);
      ASSERT_GE(cur, prev);
      prev = cur;
    }
  }
}

TEST(Admissibility, ArctanSeries) {
  SeriesSpec spec;
  spec.coefficients = {{1, 1.0}, {3, -1.0 / 3.0}, {5, 1.0 / 5.0}, {7, -1.0 / 7.0}};
  spec.radius = 1.0;
  spec.tail_bound = 1.0;
  const Admissibility a = check_admissibility(spec);
  EXPECT_EQ(a.p, 1);
  EXPECT_EQ(a.lower_const, 0.5);
  EXPECT_EQ(a.valid_radius, 0.25);
}

TEST(Admissibility, PureCubic) {
  SeriesSpec spec;
  spec.coefficients = {{3, 2.0}};
  spec.radius = kInf;
  spec.tail_bound = 0.0;
  const Admissibility a = check_admissibility(spec);
  EXPECT_EQ(a.p, 3);
  EXPECT_EQ(a.lower_const, 3.0);
  EXPECT_EQ(a.valid_radius, kInf);
}

TEST(Admissibility, SmallLeadingCoefficient) {
  SeriesSpec spec;
  spec.coefficients = {{1, 0.01}, {2, 0.5}};
  spec.radius = 0.5;
  spec.tail_bound = 1.0;
  const Admissibility a = check_admissibility(spec);
  EXPECT_EQ(a.p, 1);
  EXPECT_DOUBLE_EQ(a.lower_const, 0.005);
  EXPECT_DOUBLE_EQ(a.valid_radius, 0.0025);
}

TEST(Admissibility, Rejections) {
  SeriesSpec negative;
  negative.coefficients = {{1, 0.0}, {2, -1.0}, {3, 1.0}};
  EXPECT_EQ(code_of([&] { check_admissibility(negative); }), ErrorCode::kInadmissible);

  SeriesSpec constant;
  constant.coefficients = {{0, 0.1}, {1, 1.0}};
  EXPECT_EQ(code_of([&] { check_admissibility(constant); }), ErrorCode::kInadmissible);

  SeriesSpec empty;
  EXPECT_EQ(code_of([&] { check_admissibility(empty); }), ErrorCode::kInadmissible);

  SeriesSpec zeros;
  zeros.coefficients = {{1, 0.0}, {2, 0.0}};
  EXPECT_EQ(code_of([&] { check_admissibility(zeros); }), ErrorCode::kInadmissible);
}

// Property: inside the valid radius the derivative of the truncated series
// stays above lower_const |x|^(p-1) - 2 M |x|^p.
TEST(Admissibility, DerivativeBoundOnRandomSeries) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    SeriesSpec spec;
    const int p = 1 + static_cast<int>(rng() % 3);
    const double a_p = 0.05 + 2.0 * rng.uniform();
    spec.coefficients[p] = a_p;
    double m = 0.0;
    const int terms = 1 + static_cast<int>(rng() % 5);
    for (int n = p + 1; n <= p + terms; ++n) {
      const double a = (2.0 * rng.uniform() - 1.0) / n;
      spec.coefficients[n] = a;
      m = std::max(m, std::abs(n * a));
    }
    spec.tail_bound = m;
    spec.radius = 0.2 + rng.uniform();
    const Admissibility adm = check_admissibility(spec);
    ASSERT_EQ(adm.p, p);
    ASSERT_NEAR(adm.lower_const, 0.5 * p * a_p, 1e-15);
    ASSERT_LE(adm.valid_radius, spec.radius);

    const auto tf = TransferFunction::series(spec);
    for (int i = 1; i < 100; ++i) {
      const double x = adm.valid_radius * i / 100.0;
      const double h = 1e-7 * adm.valid_radius;
      const double deriv = (tf.raw(x + h) - tf.raw(x - h)) / (2.0 * h);
      const double bound = adm.lower_const * std::pow(x, p - 1) - 2.0 * m * std::pow(x, p);
      ASSERT_GE(deriv, bound - 1e-6) << "trial " << trial << " x " << x;
    }
  }
}

TEST(ProxyBound, LinearExact) {
  const auto report = verify_proxy_bound(TransferFunction::linear(1.0), {1, 1.0, 10.0}, 256);
  EXPECT_TRUE(report.holds);
  EXPECT_LE(report.max_violation, 1e-9);
}

// rho'(x) = sech^2(x) for omega = 2 drops to 0.41997 at x = 1, below the
// claimed 0.5; c = 0.4 holds on the whole interval. The largest log-spaced
// abscissa of a 256-point grid on (0, 1) is 1e-6^(1/257).
TEST(ProxyBound, SigmoidOmegaTwo) {
  const auto tf = TransferFunction::sigmoid(2.0);
  const auto half = verify_proxy_bound(tf, {1, 0.5, 1.0}, 256);
  EXPECT_FALSE(half.holds);
  const double x_top = std::pow(1e-6, 1.0 / 257.0);
  const double sech = 1.0 / std::cosh(x_top);
  EXPECT_NEAR(half.worst_x, x_top, 1e-12);
  EXPECT_NEAR(half.max_violation, 0.5 - sech * sech, 1e-6);

  EXPECT_TRUE(verify_proxy_bound(tf, {1, 0.4, 1.0}, 256).holds);
  EXPECT_FALSE(verify_proxy_bound(tf, {1, 1.01, 1.0}, 256).holds);
  EXPECT_THROW(certify_proxy(tf, {1, 1.01, 1.0}), Error);
}

TEST(ProxyBound, SignNotApplicable) {
  EXPECT_EQ(code_of([] { verify_proxy_bound(TransferFunction::sign(), {0, 1.0, 1.0}, 16); }),
            ErrorCode::kNotApplicable);
}

TEST(ProxyBound, PolynomialDegreeThree) {
  const auto tf = TransferFunction::poly_proxy(3, 0.5);
  EXPECT_TRUE(verify_proxy_bound(tf, {3, 0.5, 1.0}, 256).holds);
  EXPECT_FALSE(verify_proxy_bound(tf, {3, 0.6, 1.0}, 256).holds);
}
