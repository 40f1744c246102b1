#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vilenkin/means.hpp"

using namespace vilenkin;
using testutil::random_function;
using testutil::walsh;

namespace {
GroupFunction constant(const GroupSpec& s, Complex c) {
  GroupFunction f(s);
  for (auto& v : f.values) v = c;
  return f;
}
}  // namespace

TEST(Weight, Values) {
  const WeightFunction w = WeightFunction::log_squared();
  EXPECT_NEAR(w(1), 1.0, 1e-15);
  EXPECT_NEAR(w(3), 4.0, 1e-15);
  EXPECT_NEAR(w(7), 9.0, 1e-15);
  const WeightFunction ln = WeightFunction::log_squared(LogBase::natural);
  EXPECT_NEAR(ln(1), std::log(2.0) * std::log(2.0), 1e-15);
  EXPECT_EQ(WeightFunction::one()(12345), 1.0);
  EXPECT_NEAR(WeightFunction::log_power(3)(3), 8.0, 1e-14);
  EXPECT_THROW(w(0), Error);
}

TEST(Weight, NondecreasingForLogForms) {
  for (const WeightFunction& w : {WeightFunction::log_squared(), WeightFunction::log_power(0.5), WeightFunction::one()}) {
    for (std::uint64_t n = 1; n < 2000; ++n) EXPECT_LE(w(n), w(n + 1));
  }
}

TEST(Weight, Table) {
  const WeightFunction t = WeightFunction::table({1, 2, 2, 5});
  EXPECT_EQ(t(1), 1.0);
  EXPECT_EQ(t(4), 5.0);
  EXPECT_EQ(t(100), 5.0);
  EXPECT_THROW(WeightFunction::table({1, 0.5}), Error);
  EXPECT_THROW(WeightFunction::table({2, 1}), Error);
  EXPECT_THROW(WeightFunction::table({}), Error);
}

TEST(Weight, Parse) {
  EXPECT_EQ(parse_weight("log2sq").name(), "log2sq");
  EXPECT_EQ(parse_weight("lnsq").name(), "lnsq");
  EXPECT_EQ(parse_weight("one").name(), "one");
  EXPECT_NEAR(parse_weight("logpow:1.5")(3), std::pow(2.0, 1.5), 1e-14);
  EXPECT_THROW(parse_weight("logpow:"), Error);
  EXPECT_THROW(parse_weight("logpow:1x"), Error);
  EXPECT_THROW(parse_weight("cubic"), Error);
}

TEST(PartialSum, Zero) {
  const GroupSpec s({3, 2, 4}, 3);
  for (const auto& v : partial_sum(random_function(s, 1), 0).values) EXPECT_EQ(v, Complex(0));
}

TEST(PartialSum, SpectralMatchesKernel) {
  for (const GroupSpec& s : {GroupSpec({3, 2, 4}, 3), walsh(6), GroupSpec({5, 2, 2, 5}, 4)}) {
    const GroupFunction f = random_function(s, 2);
    for (std::uint64_t n = 0; n <= s.size(); n += s.size() / 7 + 1) {
      EXPECT_LE(max_abs_diff(partial_sum(f, n), partial_sum_by_kernel(f, n)), 1e-10) << s.id() << " " << n;
    }
  }
}

TEST(PartialSum, PowerIndexIsConditionalExpectation) {
  const GroupSpec s({3, 2, 4, 2}, 4);
  const GroupFunction f = random_function(s, 3);
  for (int n = 0; n <= s.resolution(); ++n) {
    EXPECT_LE(max_abs_diff(partial_sum(f, s.order(n)), conditional_expectation(f, n)), 1e-12);
  }
  EXPECT_LE(max_abs_diff(partial_sum(f, s.size()), f), 1e-12);
}

TEST(FejerMean, SigmaOneIsZero) {
  const GroupSpec s({3, 2, 4}, 3);
  for (const auto& v : fejer_mean(random_function(s, 4), 1).values) EXPECT_NEAR(std::abs(v), 0, 1e-14);
  EXPECT_THROW(fejer_mean(random_function(s, 4), 0), Error);
}

TEST(FejerMean, MatchesDirectAverageAndKernel) {
  const GroupSpec s({3, 2, 4}, 3);
  const GroupFunction f = random_function(s, 5);
  for (std::uint64_t n : {2u, 5u, 11u, 24u}) {
    GroupFunction avg(s);
    for (std::uint64_t k = 0; k < n; ++k) avg += partial_sum(f, k);
    avg *= 1.0 / static_cast<double>(n);
    EXPECT_LE(max_abs_diff(fejer_mean(f, n), avg), 1e-10);
    EXPECT_LE(max_abs_diff(fejer_mean_by_kernel(f, n), avg), 1e-10);
  }
}

TEST(FejerMean, TailFormula) {
  const GroupSpec s({3, 2, 4}, 3);
  const GroupFunction f = random_function(s, 6);
  const std::uint64_t M = s.size();
  GroupFunction half = fejer_mean(f, M) + f;
  half *= 0.5;
  EXPECT_LE(max_abs_diff(fejer_mean(f, 2 * M), half), 1e-12);
  // direct average beyond M_N, where S_k f = f
  GroupFunction avg(s);
  for (std::uint64_t k = 0; k < M + 5; ++k) avg += k <= M ? partial_sum(f, k) : f;
  avg *= 1.0 / static_cast<double>(M + 5);
  EXPECT_LE(max_abs_diff(fejer_mean(f, M + 5), avg), 1e-10);
}

TEST(Maximal, ConstantOne) {
  const GroupSpec s({3, 2}, 2);
  const GroupFunction one = constant(s, 1);
  for (std::uint64_t n_max : {6u, 10u, 40u}) {
    const MaximalField m = maximal(one, WeightFunction::one(), n_max);
    const double expect = static_cast<double>(n_max - 1) / static_cast<double>(n_max);
    for (double v : m.values) EXPECT_NEAR(v, expect, 1e-12);
    EXPECT_NEAR(m.tail_bound, 1.0, 1e-12);
  }
}

TEST(Maximal, TruncationUnsound) {
  const GroupSpec s = walsh(3);
  try {
    maximal(constant(s, 1), WeightFunction::one(), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation_unsound);
  }
}

TEST(Maximal, DominatesEverySingleMean) {
  const GroupSpec s({3, 2, 4}, 3);
  const GroupFunction f = random_function(s, 7);
  const WeightFunction w = WeightFunction::log_squared();
  const MaximalField m = maximal(f, w, 60);
  for (std::uint64_t n : {1u, 2u, 17u, 24u, 25u, 60u}) {
    const GroupFunction sn = fejer_mean(f, n);
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_GE(m.values[x] + 1e-12, std::abs(sn[x]) / w(n));
  }
}

TEST(Maximal, MatchesSupOfMeans) {
  const GroupSpec s({3, 2, 4}, 3);
  const GroupFunction f = random_function(s, 8);
  const WeightFunction w = WeightFunction::log_squared();
  const MaximalField m = maximal(f, w, 40);
  std::vector<double> sup(f.size(), 0.0);
  for (std::uint64_t n = 1; n <= 40; ++n) {
    const GroupFunction sn = fejer_mean(f, n);
    for (std::size_t x = 0; x < f.size(); ++x) sup[x] = std::max(sup[x], std::abs(sn[x]) / w(n));
  }
  for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(m.values[x], sup[x], 1e-12);
}

TEST(Maximal, TailBoundHoldsBeyondNMax) {
  const GroupSpec s({3, 2, 4}, 3);
  const GroupFunction f = random_function(s, 9);
  const WeightFunction w = WeightFunction::log_squared();
  const MaximalField m = maximal(f, w, 24);
  for (std::uint64_t n : {25u, 30u, 100u, 1000u, 100000u}) {
    const GroupFunction sn = fejer_mean(f, n);
    for (std::size_t x = 0; x < f.size(); ++x) EXPECT_LE(std::abs(sn[x]) / w(n), m.tail_bound + 1e-12);
  }
}

TEST(Maximal, MeanZeroOnCosetKillsLowMeans) {
  // an I_N-measurable function, mean zero on I_2: sigma_n vanishes for n <= M_2
  const GroupSpec s = walsh(4);
  GroupFunction a(s);
  a[0] = 16;
  a[4] = -16;
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const GroupFunction sn = fejer_mean(a, n);
    EXPECT_NEAR(sn.max_abs(), 0.0, 1e-12) << n;
  }
}
