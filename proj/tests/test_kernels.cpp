#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"
#include "vilenkin/kernels.hpp"

using namespace vilenkin;
using testutil::walsh;

namespace {
Point P(std::vector<int> d) { return Point{std::move(d)}; }

// Brute force D_n(x) from characters evaluated by angle products.
Complex brute_dirichlet(std::uint64_t n, const Point& x, const GroupSpec& s) {
  Complex acc = 0;
  for (std::uint64_t k = 0; k < n; ++k) acc += character(k, x, s);
  return acc;
}
Complex brute_fejer(std::uint64_t n, const Point& x, const GroupSpec& s) {
  Complex acc = 0;
  for (std::uint64_t k = 0; k < n; ++k) acc += brute_dirichlet(k, x, s);
  return acc / static_cast<double>(n);
}
}  // namespace

TEST(Dirichlet, DOneIsOne) {
  const GroupSpec s({3, 2, 4}, 3);
  for (const auto& v : dirichlet(1, s).values) EXPECT_NEAR(std::abs(v - Complex(1)), 0, 1e-13);
}

TEST(Dirichlet, WalshDTwo) {
  const GroupSpec s = walsh(3);
  const GroupFunction d = dirichlet(2, s);
  for (std::size_t x = 0; x < s.size(); ++x) {
    EXPECT_NEAR(d[x].real(), decode(s, x).digits[0] == 0 ? 2.0 : 0.0, 1e-13);
  }
}

TEST(Dirichlet, SpectralMatchesBruteForce) {
  const GroupSpec s({3, 2, 4}, 3);
  for (std::uint64_t n = 0; n <= s.size(); n += 5) {
    const GroupFunction d = dirichlet(n, s);
    const GroupFunction dd = dirichlet_direct(n, s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      EXPECT_NEAR(std::abs(d[x] - brute_dirichlet(n, decode(s, x), s)), 0, 1e-11);
      EXPECT_NEAR(std::abs(dd[x] - d[x]), 0, 1e-11);
    }
  }
  EXPECT_THROW(dirichlet(s.size() + 1, s), Error);
}

TEST(Dirichlet, PowerIndexIsScaledCosetIndicator) {
  for (const GroupSpec& s : {GroupSpec({3, 2, 4, 2, 3, 2}, 6), GroupSpec({5, 2, 2, 5}, 4), walsh(6)}) {
    const CharacterTable table(s);
    for (int n = 0; n <= s.resolution(); ++n) {
      const std::uint64_t Mn = s.order(n);
      const ExactFunction d = exact_dirichlet(Mn, table);
      for (std::size_t x = 0; x < d.size(); ++x) {
        const auto expect = CyclotomicInt::integer(table.field(), x % Mn == 0 ? static_cast<std::int64_t>(Mn) : 0);
        ASSERT_EQ(d[x], expect) << s.id() << " n=" << n << " x=" << x;
      }
    }
  }
}

TEST(Fejer, SmallCases) {
  const GroupSpec s = walsh(3);
  for (const auto& v : fejer(1, s).values) EXPECT_NEAR(std::abs(v), 0, 1e-14);
  for (const auto& v : fejer(2, s).values) EXPECT_NEAR(std::abs(v - Complex(0.5)), 0, 1e-14);
  const GroupFunction k3 = fejer(3, s);
  for (std::size_t x = 0; x < s.size(); ++x) {
    EXPECT_NEAR(k3[x].real(), x % 2 == 0 ? 1.0 : 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(k3[x].imag(), 0.0, 1e-14);
  }
}

TEST(Fejer, ZeroIsUndefined) {
  const GroupSpec s = walsh(2);
  try {
    fejer(0, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined_kernel);
  }
  EXPECT_THROW(fejer_direct(0, s), Error);
}

TEST(Fejer, SpectralMatchesBruteAndDirect) {
  const GroupSpec s({3, 2, 4}, 3);
  for (std::uint64_t n = 1; n <= s.size(); n += 4) {
    const GroupFunction k = fejer(n, s);
    const GroupFunction kd = fejer_direct(n, s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      EXPECT_NEAR(std::abs(k[x] - brute_fejer(n, decode(s, x), s)), 0, 1e-11);
      EXPECT_NEAR(std::abs(kd[x] - k[x]), 0, 1e-11);
    }
  }
}

TEST(Fejer, ExactScaledMatchesFloat) {
  const GroupSpec s({3, 2, 4}, 3);
  const CharacterTable table(s);
  for (std::uint64_t n : {1u, 2u, 7u, 13u, 24u}) {
    const ExactFunction e = exact_fejer_scaled(n, table);
    const GroupFunction k = fejer(n, s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      EXPECT_NEAR(std::abs(e[x].to_complex() / static_cast<double>(n) - k[x]), 0, 1e-11);
    }
  }
}

TEST(Fejer, IntegralIsOneMinusOneOverN) {
  const GroupSpec s({5, 2, 2, 5}, 4);
  for (std::uint64_t n : {1u, 2u, 9u, 50u, 100u}) {
    EXPECT_NEAR(std::abs(fejer(n, s).integral() - Complex(1.0 - 1.0 / static_cast<double>(n))), 0, 1e-12);
  }
}

TEST(ClosedForm, WalshExamples) {
  const GroupSpec s = walsh(3);
  EXPECT_TRUE(in_closed_form_domain(2, P({1, 0, 0})));
  EXPECT_NEAR(std::abs(fejer_MA_closed(2, P({1, 0, 0}), s) - Complex(0.5)), 0, 1e-15);
  EXPECT_NEAR(std::abs(fejer_MA_closed(2, P({1, 1, 0}), s)), 0, 1e-15);
  const GroupFunction k4 = fejer(4, s);
  EXPECT_NEAR(std::abs(k4[encode(s, P({1, 0, 0}))] - Complex(0.5)), 0, 1e-14);
  EXPECT_NEAR(std::abs(k4[encode(s, P({1, 1, 0}))]), 0, 1e-14);
}

TEST(ClosedForm, TernaryExample) {
  const GroupSpec s({3, 2, 4}, 3);
  const Complex expect = 1.0 / (1.0 - std::polar(1.0, 2 * std::numbers::pi / 3));
  EXPECT_NEAR(std::abs(fejer_MA_closed(2, P({1, 0, 0}), s) - expect), 0, 1e-14);
  EXPECT_NEAR(std::abs(brute_fejer(6, P({1, 0, 0}), s) - expect), 0, 1e-13);
}

TEST(ClosedForm, InsideIaFallsBackToSummation) {
  // on I_A the kernel equals (M_A - 1)/2
  for (const GroupSpec& s : {walsh(4), GroupSpec({3, 2, 4}, 3)}) {
    for (int A = 0; A <= s.resolution(); ++A) {
      const Point z = zero_point(s);
      EXPECT_FALSE(in_closed_form_domain(A, z));
      const double MA = static_cast<double>(s.order(A));
      EXPECT_NEAR(std::abs(fejer_MA_closed(A, z, s) - Complex((MA - 1) / 2)), 0, 1e-12);
    }
  }
}

TEST(L1Norm, Basics) {
  const GroupSpec s = walsh(10);
  EXPECT_EQ(l1_norm(fejer(1, s)), 0.0);
  double worst = 0;
  for (int n = 0; n <= 10; ++n) worst = std::max(worst, l1_norm(fejer(s.order(n), s)));
  EXPECT_LE(worst, 2.0);
  EXPECT_GT(worst, 0.9);
}

TEST(CosetIndicator, ExactOnMatrix) {
  for (const auto& s : {walsh(5), GroupSpec({3, 2, 4, 2, 3, 2}, 6), GroupSpec({5, 2, 2, 5}, 4)}) {
    const KernelReport r = check_eq3(s);
    EXPECT_TRUE(r.pass) << s.id();
    EXPECT_EQ(r.lhs.size(), static_cast<std::size_t>(s.resolution() + 1));
    for (double v : r.lhs) EXPECT_EQ(v, 0.0);
  }
}

TEST(FejerL1, MaxNormMatchesIndependentOracle) {
  // values from an independent numpy Walsh-Paley evaluation
  const KernelReport r6 = check_eq4(walsh(6), 64);
  EXPECT_NEAR(r6.empirical_constant, 1.0857558139534884, 1e-12);
  const KernelReport r8 = check_eq4(walsh(8), 256);
  EXPECT_NEAR(r8.empirical_constant, 1.119426169590643, 1e-12);
  EXPECT_EQ(r8.lhs.size(), 256u);
  EXPECT_EQ(r8.lhs[0], 0.0);
  EXPECT_NEAR(r8.lhs[1], 0.5, 1e-14);
  EXPECT_TRUE(r8.pass);
}

TEST(FejerL1, NormsMatchFejer) {
  const GroupSpec s({3, 2, 4}, 3);
  const KernelReport r = check_eq4(s, s.size());
  for (std::uint64_t n = 1; n <= s.size(); ++n) EXPECT_NEAR(r.lhs[n - 1], l1_norm(fejer(n, s)), 1e-12);
  EXPECT_THROW(check_eq4(s, 0), Error);
  EXPECT_THROW(check_eq4(s, s.size() + 1), Error);
}

TEST(FejerDomination, PowerIndexHasConstantAtMostOne) {
  const GroupSpec s = walsh(6);
  for (int A = 1; A <= 6; ++A) {
    const KernelReport r = check_eq5(s, s.order(A));
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.empirical_constant, 1.0 + 1e-12);
  }
}

TEST(FejerDomination, WalshNThree) {
  for (int N = 3; N <= 8; ++N) {
    const KernelReport r = check_eq5(walsh(N), 3);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.empirical_constant, 3.0, 1e-12);
  }
}

TEST(FejerDomination, MixedRandomNFiniteFromFirstRadix) {
  const GroupSpec s({3, 2, 4, 2}, 4);
  for (std::uint64_t n = s.order(1); n <= s.size(); n += 5) {
    const KernelReport r = check_eq5(s, n);
    EXPECT_TRUE(r.pass) << n;
    EXPECT_TRUE(std::isfinite(r.empirical_constant));
    EXPECT_GT(r.empirical_constant, 0.0);
  }
}

TEST(FejerDomination, ViolationBelowFirstRadix) {
  // 2 <= n < m_0 has |n| = 0, the dominating sum is M_0 |K_1| = 0
  const GroupSpec s({3, 2, 4}, 3);
  const KernelReport r = check_eq5(s, 2);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.parameters.at("violations"), 0);
  EXPECT_EQ(r.rhs[0], 0.0);
}

TEST(FejerDomination, SweepAggregates) {
  const GroupSpec s = walsh(5);
  const KernelReport r = check_eq5_sweep(s, {3, 5, 17});
  EXPECT_EQ(r.lhs.size(), 3u);
  EXPECT_NEAR(r.lhs[0], 3.0, 1e-12);
  EXPECT_EQ(r.empirical_constant, *std::max_element(r.lhs.begin(), r.lhs.end()));
  EXPECT_TRUE(r.pass);
}

TEST(QKernelLowerBound, WalshAThreeFirstPair) {
  const KernelReport r = check_lemma2(walsh(6), 3);
  EXPECT_EQ(r.parameters.at("q"), 21);
  ASSERT_EQ(r.lhs.size(), 1u);
  EXPECT_EQ(r.rhs[0], 4.0);
  EXPECT_GE(r.lhs[0], 4.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.empirical_constant, 1.5, 1e-12);
}

TEST(QKernelLowerBound, WalshAFourAllPairs) {
  const KernelReport r = check_lemma2(walsh(8), 4);
  EXPECT_EQ(r.lhs.size(), 3u);  // (0,2) (0,3) (1,3)
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.empirical_constant, 1.34375, 1e-12);
}

TEST(QKernelLowerBound, MixedPeriodic) {
  const KernelReport r = check_lemma2(GroupSpec({3, 2, 3, 2, 3, 2}, 6), 3);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.empirical_constant, 1.0);
}

TEST(QKernelLowerBound, Preconditions) {
  EXPECT_THROW(check_lemma2(walsh(6), 2), Error);
  EXPECT_THROW(check_lemma2(walsh(5), 3), Error);
}

TEST(PowerKernelClosedForm, ClosedFormMatches) {
  for (const auto& s : {walsh(6), GroupSpec({3, 2, 4, 2}, 4), GroupSpec({5, 2, 2, 5}, 4)}) {
    const KernelReport r = check_lemma3(s);
    EXPECT_TRUE(r.pass) << s.id();
    EXPECT_LE(r.empirical_constant, 1e-12);
    EXPECT_GT(r.parameters.at("points_checked"), 0);
  }
}

TEST(CosetTailIntegral, Examples) {
  const GroupSpec fine = walsh(5);
  const KernelReport a = check_lemma4(fine, 3, 8, 0, 1);
  EXPECT_TRUE(a.pass);
  EXPECT_TRUE(std::isfinite(a.empirical_constant));
  const KernelReport b = check_lemma4(fine, 3, 11, 0, 3);
  EXPECT_TRUE(b.pass);
  EXPECT_NEAR(b.rhs[0], 1.0 / 8.0, 1e-15);
  EXPECT_TRUE(std::isfinite(b.empirical_constant));
}

TEST(CosetTailIntegral, Preconditions) {
  const GroupSpec fine = walsh(5);
  try {
    check_lemma4(fine, 3, 7, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
  EXPECT_THROW(check_lemma4(fine, 3, 33, 0, 1), Error);
  EXPECT_THROW(check_lemma4(fine, 5, 32, 0, 1), Error);
}

TEST(CosetTailIntegral, GridCoversBothBranches) {
  const KernelReport r = check_lemma4_grid(walsh(5), 3, 11);
  EXPECT_EQ(r.parameters.at("pairs"), 6);  // (k,l) with 0 <= k < l <= 3
  EXPECT_TRUE(r.pass);
}

TEST(Shift, WalshExact) {
  for (int t : {1, 2}) EXPECT_TRUE(check_shift(walsh(6), t).pass);
  EXPECT_TRUE(check_shift(GroupSpec({3, 2, 4, 2, 3}, 5), 1).pass);
  EXPECT_THROW(check_shift(walsh(4), 2), Error);
}

TEST(Partition, DisjointUnions) {
  for (const auto& s : {walsh(5), GroupSpec({3, 2, 4, 2}, 4)}) {
    const KernelReport r = check_partition(s, s.resolution());
    EXPECT_TRUE(r.pass) << s.id();
    EXPECT_EQ(r.lhs, (std::vector<double>{0.0, 0.0}));
  }
  const KernelReport inner = check_partition(walsh(6), 4);
  EXPECT_TRUE(inner.pass);
}
