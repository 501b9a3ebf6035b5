#include <gtest/gtest.h>

#include <cmath>

#include "duelgrad/error.hpp"
#include "duelgrad/tuning.hpp"

using namespace duelgrad;

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

void expect_rel(double actual, double expected, double tol = 1e-9) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected))
      << "actual " << actual << " expected " << expected;
}

// Reference smooth tuning evaluated in long double.
struct RefSmooth {
  long double gamma, eta, rounds;
};
RefSmooth ref_smooth(long double eps, long double beta, long double d, long double D, int p,
                     long double c, long double ct) {
  const long double cp = std::pow(ct, 2.0L * p - 1.0L);
  return {ct * eps / (beta * std::sqrt(d) * D),
          p * c * cp * std::pow(eps, 2.0L * p) /
              (std::pow(d, (2.0L * p + 1.0L) / 2.0L) * std::pow(beta, (long double)p) *
               std::pow(D, 2.0L * p - 1.0L)),
          std::pow(d, 2.0L * p + 1.0L) * std::pow(beta, 2.0L * p) * std::pow(D, 4.0L * p) /
              (p * p * (cp * c) * (cp * c) * std::pow(eps, 4.0L * p))};
}

}  // namespace

TEST(CeilCount, Behaviour) {
  EXPECT_EQ(ceil_count(8000.0), 8000u);
  EXPECT_EQ(ceil_count(8000.000000000001), 8000u);
  EXPECT_EQ(ceil_count(8000.01), 8001u);
  EXPECT_EQ(ceil_count(0.2), 1u);
  EXPECT_EQ(ceil_count(0.0), 0u);
  EXPECT_EQ(ceil_count(-3.0), 0u);
  EXPECT_THROW(ceil_count(std::nan("")), Error);
  EXPECT_EQ(code_of([] { ceil_count(1e30); }), ErrorCode::kCounterOverflow);
}

TEST(TuneSmooth, GoldenPEqualsOne) {
  const TunedParams t = tune_smooth(0.1, 1.0, 2, 1.0, 1, 1.0, 0.05);
  expect_rel(t.gamma, 0.05 * 0.1 / std::sqrt(2.0));
  expect_rel(t.gamma, 3.5355339059327e-3, 1e-12);
  expect_rel(t.eta, 0.05 * 0.01 / std::pow(2.0, 1.5));
  expect_rel(t.eta, 1.7677669529664e-4, 1e-12);
  EXPECT_EQ(t.budget, 32000001u);
}

TEST(TuneSmooth, AllOnes) {
  const TunedParams t = tune_smooth(1.0, 1.0, 1, 1.0, 1, 1.0, 1.0);
  EXPECT_EQ(t.gamma, 1.0);
  EXPECT_EQ(t.eta, 1.0);
  EXPECT_EQ(t.budget, 2u);
}

TEST(TuneSmooth, DoublingEpsDividesRoundsBySixteen) {
  const TunedParams a = tune_smooth(0.1, 1.0, 2, 1.0, 1, 1.0, 0.05);
  const TunedParams b = tune_smooth(0.2, 1.0, 2, 1.0, 1, 1.0, 0.05);
  EXPECT_EQ(a.budget - 1, 16 * (b.budget - 1));
}

TEST(TuneSmooth, SignDegreeRedirected) {
  EXPECT_EQ(code_of([] { tune_smooth(0.1, 1.0, 2, 1.0, 0, 1.0); }), ErrorCode::kUseSignTuning);
  EXPECT_THROW(tune_smooth(0.0, 1.0, 2, 1.0, 1, 1.0), Error);
  EXPECT_THROW(tune_smooth(0.1, 1.0, 0, 1.0, 1, 1.0), Error);
}

// Property: random settings agree with a long-double evaluation.
TEST(TuneSmooth, MatchesReferenceOnRandomSettings) {
  unsigned state = 12345;
  auto next = [&] {
    state = state * 1103515245u + 12345u;
    return ((state >> 8) & 0xffff) / 65536.0;
  };
  for (int i = 0; i < 200; ++i) {
    const double eps = 0.05 + next();
    const double beta = 0.5 + 4.0 * next();
    const int d = 1 + static_cast<int>(10 * next());
    const double D = 0.5 + 3.0 * next();
    const int p = 1 + static_cast<int>(3 * next());
    const double c = 0.1 + next();
    const double ct = 0.05 + 0.95 * next();
    const RefSmooth r = ref_smooth(eps, beta, d, D, p, c, ct);
    if (r.rounds > 1e18L) continue;
    const TunedParams t = tune_smooth(eps, beta, d, D, p, c, ct);
    expect_rel(t.gamma, static_cast<double>(r.gamma));
    expect_rel(t.eta, static_cast<double>(r.eta));
    const long double rounds = std::ceil(r.rounds * (1.0L - 1e-12L)) + 1.0L;
    EXPECT_LE(std::abs(static_cast<long double>(t.budget) - rounds), 1.0L + 1e-9L * rounds);
  }
}

TEST(TuneLinear, Golden) {
  const TunedParams t = tune_linear(0.1, 1.0, 2, 1.0, 1.0);
  expect_rel(t.gamma, std::sqrt(0.05));
  expect_rel(t.gamma, 0.22360679774998, 1e-12);
  expect_rel(t.eta, std::pow(0.1, 1.5) / (2.0 * std::sqrt(2.0)));
  expect_rel(t.eta, 0.011180339887499, 1e-12);
  EXPECT_EQ(t.budget, 8000u);
}

TEST(TuneLinear, Scalings) {
  EXPECT_DOUBLE_EQ(tune_linear(2.0, 1.0, 3, 1.0, 1.0).gamma, 1.0);
  EXPECT_DOUBLE_EQ(tune_linear(6.0, 3.0, 3, 1.0, 1.0).gamma, 1.0);
  const auto full = tune_linear(0.1, 1.0, 2, 1.0, 1.0);
  const auto half = tune_linear(0.1, 1.0, 2, 1.0, 0.5);
  EXPECT_EQ(half.budget, 4 * full.budget);
}

TEST(TuneSign, Defaults) {
  const TunedParams t = tune_sign(0.01, 1.0, 2, 2.0);
  EXPECT_EQ(t.budget, 160000u);
  expect_rel(t.gamma, 0.01 / (10.0 * std::sqrt(2.0) * 2.0));
  expect_rel(t.eta, 0.05 * 0.01 / (std::sqrt(2.0) * 2.0));
}

TEST(TuneSign, ScalingAndUnitCase) {
  EXPECT_EQ(tune_sign(0.02, 1.0, 2, 2.0).budget, 80000u);
  EXPECT_EQ(tune_sign(1.0, 1.0, 1, 1.0, 1.0).budget, 1u);
}

TEST(TuneEpoch, Golden) {
  const EpochSchedule s = tune_epoch(0.5, 0.5, 1.0, 2, 2.0, 1, 1.0, 0.05);
  expect_rel(s.B, (2.0 / 1.5) * (0.0625 * 0.05 / std::pow(2.0, 1.5)));
  expect_rel(s.B, 1.0 / (480.0 * std::sqrt(2.0)));
  expect_rel(s.B, 1.4731391274720e-3, 1e-12);
  EXPECT_EQ(s.k_eps, 5);
  ASSERT_EQ(s.epochs.size(), 5u);
  EXPECT_EQ(s.epochs[0].radius, 2.0);
  expect_rel(s.epochs[1].radius, std::sqrt(3.0));
  // 1 / (2 B^2 16) = 480^2 * 2 / 32 = 14400 exactly.
  EXPECT_EQ(s.epochs[0].budget, 14400u);
  expect_rel(s.epochs[0].eta, s.B * 8.0);
  expect_rel(s.epochs[0].gamma, 0.05 * 0.5 * 2.0 / (2.0 * std::sqrt(2.0)));
  std::uint64_t sum = 0;
  for (const auto& e : s.epochs) sum += e.budget;
  EXPECT_EQ(s.total_queries(), sum);
}

TEST(TuneEpoch, EpochCountIsCeilOfLog) {
  for (double eps : {0.5, 0.3, 0.1, 0.01, 1e-4}) {
    const EpochSchedule s = tune_epoch(eps, 0.5, 1.0, 2, 2.0, 1, 1.0);
    const double k = std::ceil(std::log(4.0 / (2.0 * eps) * 1.0 / 1.0 * 1.0) / std::log(4.0 / 3.0));
    EXPECT_EQ(s.k_eps, static_cast<int>(k)) << eps;
    for (std::size_t i = 1; i < s.epochs.size(); ++i) {
      expect_rel(s.epochs[i].radius, s.epochs[i - 1].radius * std::sqrt(0.75));
      EXPECT_GE(s.epochs[i].budget, s.epochs[i - 1].budget);
    }
  }
}

TEST(TuneEpoch, ExactIntegerRatioDoesNotOvershoot) {
  // beta D^2 / 2 eps = 4/3 exactly gives one epoch.
  const EpochSchedule s = tune_epoch(1.5, 0.5, 1.0, 2, 2.0, 1, 1.0);
  EXPECT_EQ(s.k_eps, 1);
}

TEST(TuneEpoch, TrivialWhenEpsCoversDomain) {
  const EpochSchedule s = tune_epoch(2.0, 0.5, 1.0, 2, 2.0, 1, 1.0);
  EXPECT_TRUE(s.trivial);
  EXPECT_TRUE(s.epochs.empty());
  EXPECT_EQ(s.total_queries(), 0u);
  EXPECT_TRUE(tune_epoch(5.0, 0.5, 1.0, 2, 2.0, 1, 1.0).trivial);
}

TEST(TuneEpoch, Rejections) {
  EXPECT_THROW(tune_epoch(0.1, 2.0, 1.0, 2, 2.0, 1, 1.0), Error);
  EXPECT_EQ(code_of([] { tune_epoch(0.1, 0.5, 1.0, 2, 2.0, 0, 1.0); }), ErrorCode::kUseSignTuning);
  EXPECT_THROW(tune_epoch(0.1, 0.0, 1.0, 2, 2.0, 1, 1.0), Error);
}

TEST(TuneEpoch, GeometricSumIdentity) {
  for (int p : {1, 2}) {
    for (double eps : {0.5, 0.05, 0.005}) {
      // p = 2 at the smallest eps needs more than 2^64 queries.
      if (p == 2 && eps < 0.01) continue;
      const EpochSchedule s = tune_epoch(eps, 0.5, 1.0, 2, 2.0, p, 1.0);
      double unrounded = 0.0;
      for (const auto& e : s.epochs) {
        unrounded += 1.0 / (2.0 * s.B * s.B * std::pow(e.radius, 4.0 * p));
      }
      expect_rel(epoch_budget_geometric_sum(s), unrounded, 1e-10);
      const double total = static_cast<double>(s.total_queries());
      EXPECT_GE(total, unrounded * (1.0 - 1e-12));
      EXPECT_LE(total, unrounded + s.k_eps);
    }
  }
}

TEST(TuneEpoch, ClaimedBoundClosedForm) {
  const EpochSchedule s = tune_epoch(0.5, 0.5, 1.0, 2, 2.0, 1, 1.0);
  const double expected = (1.0 / (4.0 * s.B * s.B * 16.0)) * (16.0 - 1.0);
  expect_rel(epoch_budget_claimed_bound(s), expected);
}
