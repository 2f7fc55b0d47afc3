#include <gtest/gtest.h>

#include <random>

#include "nahm/series.hpp"

using namespace nahm;

namespace {

// Naive oracle: truncated int64 series arithmetic with generic inversion of each denominator.
std::vector<long long> naive_sum(std::size_t N, std::size_t step) {
  std::vector<long long> total(N + 1, 0);
  for (std::size_t n = 0; n * (n + 1) / 2 <= N; ++n) {
    std::vector<long long> den(N + 1, 0);
    den[0] = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      std::vector<long long> next(den);
      for (std::size_t i = step * j; i <= N; ++i) next[i] += den[i - step * j];
      den = next;
    }
    std::vector<long long> inv(N + 1, 0);
    inv[0] = 1;
    for (std::size_t i = 1; i <= N; ++i) {
      long long s = 0;
      for (std::size_t k = 1; k <= i; ++k) s += den[k] * inv[i - k];
      inv[i] = -s;
    }
    const std::size_t sh = n * (n + 1) / 2;
    for (std::size_t i = sh; i <= N; ++i) total[i] += inv[i - sh];
  }
  return total;
}

std::vector<long long> as_ll(const IntSeries& s) {
  std::vector<long long> v;
  for (const auto& c : s.coeffs()) v.push_back(c.get_si());
  return v;
}

ComplexVal richardson_limit(const std::function<ComplexVal(double)>& f) {
  // f(h) = L + a h + b h^2 sampled at h, h/10, h/100
  const double h = 1e-3;
  const ComplexVal f1 = f(h), f2 = f(h / 10), f3 = f(h / 100);
  const ComplexVal g1 = (10.0 * f2 - f1) / 9.0;
  const ComplexVal g2 = (10.0 * f3 - f2) / 9.0;
  return (100.0 * g2 - g1) / 99.0;
}

}  // namespace

TEST(V1Coefficients, ZeroOrder) { EXPECT_EQ(as_ll(v1_coefficients(0)), (std::vector<long long>{1})); }

TEST(V1Coefficients, OrderSix) {
  EXPECT_EQ(as_ll(v1_coefficients(6)), (std::vector<long long>{1, 1, 0, 0, 0, 0, 1}));
  EXPECT_EQ(as_ll(v1_coefficients(6)), naive_sum(6, 2));
}

TEST(V1Coefficients, MatchesNaiveOracle) { EXPECT_EQ(as_ll(v1_coefficients(200)), naive_sum(200, 2)); }

TEST(V1Coefficients, PrefixStability) {
  const auto big = v1_coefficients(3000);
  for (std::size_t M : {0u, 1u, 17u, 500u, 2999u}) EXPECT_EQ(big.prefix(M), v1_coefficients(M)) << M;
}

TEST(V1Coefficients, BlockSigns546To702) {
  const auto c = v1_coefficients(1000);
  const std::string pat = "+--+";
  for (std::size_t n = 546; n <= 702; ++n) {
    if (c[n] == 0) continue;
    EXPECT_EQ(sgn(c[n]) > 0, pat[(n - 1) % 4] == '+') << n;
  }
}

TEST(V1Coefficients, DenominatorUnitRoundTrip) {
  // Rebuild each summand and multiply back by its denominator: the numerator q^{n(n+1)/2} returns.
  const std::size_t N = 300;
  for (std::size_t n : {1u, 5u, 12u, 20u}) {
    IntSeries t(N);
    t[0] = 1;
    for (std::size_t j = 1; j <= n; ++j) t.divide_one_plus(2 * j);
    t.shift_up(n * (n + 1) / 2);
    for (std::size_t j = 1; j <= n; ++j) t.multiply_one_plus(2 * j);
    IntSeries expect(N);
    expect[n * (n + 1) / 2] = 1;
    EXPECT_EQ(t, expect) << n;
  }
}

TEST(SigmaCoefficients, SmallOrders) {
  EXPECT_EQ(as_ll(sigma_coefficients(0)), (std::vector<long long>{1}));
  EXPECT_EQ(as_ll(sigma_coefficients(3)), (std::vector<long long>{1, 1, -1, 2}));
  EXPECT_EQ(as_ll(sigma_coefficients(150)), naive_sum(150, 1));
}

TEST(SigmaCoefficients, HasZerosBelow1000) {
  const auto s = sigma_coefficients(1000);
  std::size_t zeros = 0;
  for (std::size_t n = 1; n <= 1000; ++n) zeros += s[n] == 0;
  EXPECT_GT(zeros, 0u);
}

TEST(IntSeriesOps, ProductAndSum) {
  IntSeries a(std::vector<mpz_class>{1, 2, 3});
  IntSeries b(std::vector<mpz_class>{4, 5, 6, 7});
  EXPECT_EQ(a * b, IntSeries(std::vector<mpz_class>{4, 13, 28}));
  EXPECT_EQ(a + b, IntSeries(std::vector<mpz_class>{5, 7, 9}));
  EXPECT_THROW(a.prefix(3), std::out_of_range);
  EXPECT_THROW(IntSeries(std::vector<mpz_class>{}), std::invalid_argument);
}

TEST(V1Eval, Origin) { EXPECT_EQ(v1_eval<double>(ComplexVal(0), 1e-15), ComplexVal(1)); }

TEST(V1Eval, AgreesWithPolynomial) {
  const auto c = v1_coefficients(60);
  EXPECT_NEAR(std::abs(v1_eval<double>(ComplexVal(0.1), 1e-16) - c.evaluate<double>(ComplexVal(0.1))), 0.0, 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto c2 = v1_coefficients(400);
  for (int k = 0; k < 20; ++k) {
    const ComplexVal q(u(rng), u(rng));
    EXPECT_NEAR(std::abs(v1_eval<double>(q, 1e-16) - c2.evaluate<double>(q)), 0.0, 1e-12);
  }
}

TEST(V1Eval, TailBoundHolds) {
  const ComplexVal q = std::polar(0.9, 0.3);
  const auto coarse = v1_eval_bounded<double>(q, 1e-6);
  const auto fine = v1_eval_bounded<double>(q, 1e-17);
  EXPECT_LE(std::abs(coarse.value - fine.value), coarse.tail_bound + 1e-15);
}

TEST(V1Eval, Errors) {
  EXPECT_THROW(v1_eval<double>(ComplexVal(1.0), 1e-10), std::domain_error);
  EXPECT_THROW(v1_eval<double>(ComplexVal(0, -1.2), 1e-10), std::domain_error);
  EXPECT_THROW(v1_eval<double>(ComplexVal(0.5), 0.0), std::invalid_argument);
  EXPECT_THROW(v1_eval<double>(ComplexVal(0.9999), 1e-16, 10), std::runtime_error);
}

TEST(RootOfUnity, TrivialRoot) { EXPECT_NEAR(std::abs(v1_root_of_unity(1, 1) - 2.0), 0.0, 1e-14); }

TEST(RootOfUnity, MatchesRadialLimit) {
  for (std::int64_t m : {1, 2, 3, 5, 6, 7, 10}) {
    for (std::int64_t l = 1; l < std::max<std::int64_t>(m, 2); ++l) {
      if (gcd64(l, m) != 1) continue;
      const ComplexVal zeta = e_frac(l, m);
      const auto lim = richardson_limit([&](double h) { return v1_eval<double>(zeta * std::exp(-h), 1e-17); });
      // the linear regime starts at smaller h for larger m
      EXPECT_NEAR(std::abs(lim - v1_root_of_unity(l, m)), 0.0, m <= 6 ? 1e-6 : 2e-5) << l << "/" << m;
    }
  }
}

TEST(RootOfUnity, Errors) {
  EXPECT_THROW(v1_root_of_unity(1, 4), std::invalid_argument);
  EXPECT_THROW(v1_root_of_unity(1, 8), std::invalid_argument);
  EXPECT_THROW(v1_root_of_unity(2, 6), std::invalid_argument);
  EXPECT_THROW(v1_root_of_unity(1, 0), std::invalid_argument);
}

TEST(PhiSeries, EvenPartOrderFour) {
  const auto p = phi_series(0, 4);
  const std::vector<GaussRational> expect = {
      {0, 0}, {0, -4}, {-48, 0}, {0, mpq_class(2878, 3)}, {26704, 0}};
  EXPECT_EQ(p.coeffs(), expect);
}

TEST(PhiSeries, OddPartOrderFour) {
  const auto p = phi_series(1, 4);
  const std::vector<GaussRational> expect = {
      {2, 0}, {0, 8}, {-96, 0}, {0, mpq_class(-5708, 3)}, {52640, 0}};
  EXPECT_EQ(p.coeffs(), expect);
}

TEST(PhiSeries, HigherCoefficients) {
  // Every odd summand up to 2K contributes; the numeric check below confirms these values.
  const auto p0 = phi_series(0, 9);
  EXPECT_EQ(p0[5], GaussRational(0, mpq_class(-28574401, 30)));
  EXPECT_EQ(p0[6], GaussRational(mpq_class(-207245984, 5)));
  EXPECT_EQ(p0[9], GaussRational(0, mpq_class(mpz_class("-768005626895809921"), mpz_class(90720))));
  const auto p1 = phi_series(1, 9);
  EXPECT_EQ(p1[5], GaussRational(0, mpq_class(28056121, 15)));
  EXPECT_EQ(p1[6], GaussRational(mpq_class(-405909568, 5)));
  EXPECT_EQ(p1[7], GaussRational(0, mpq_class(mpz_class("-2622584263067"), mpz_class(630))));
  EXPECT_EQ(p1[8], GaussRational(mpq_class(mpz_class("5171242573856"), mpz_class(21))));
  EXPECT_EQ(p1[9], GaussRational(0, mpq_class(mpz_class("748741881749741041"), mpz_class(45360))));
}

TEST(PhiSeries, PrefixStableAndParity) {
  for (int n0 : {0, 1}) {
    const auto big = phi_series(n0, 12);
    const auto small = phi_series(n0, 6);
    for (std::size_t k = 0; k <= 12; ++k) {
      if (k <= 6) EXPECT_EQ(big[k], small[k]);
      if (k % 2 == 0)
        EXPECT_EQ(big[k].im, 0) << n0 << " " << k;
      else
        EXPECT_EQ(big[k].re, 0) << n0 << " " << k;
    }
  }
}

TEST(PhiSeries, MatchesResidueSumNumerically) {
  // Direct summation of the defining sums at small real z, stopped near the smallest term.
  const double z = 0.005;
  for (int n0 : {0, 1}) {
    const ComplexVal q = ComplexVal(0, 1) * std::exp(-z);
    ComplexVal sum(0), poch(1);
    for (int m = 1; m <= 50; ++m) {
      poch *= 1.0 + std::pow(q, 2 * m);
      if ((m % 2 == 1) == (n0 == 0)) sum += 2.0 * poch * std::pow(q, -m * (m + 1) / 2);
    }
    if (n0 == 1) sum += 2.0;
    EXPECT_NEAR(std::abs(sum - phi_series(n0, 12).evaluate<double>(ComplexVal(z))), 0.0, 1e-8) << n0;
  }
}

TEST(Cauchy, Examples) {
  EXPECT_NEAR(std::abs(cauchy_coefficient(0, 0.5, 64) - 1.0), 0.0, 1e-10);
  const auto c = v1_coefficients(50);
  EXPECT_EQ(std::lround(cauchy_coefficient(10, 0.7, 512).real()), c[10].get_si());
  EXPECT_EQ(std::lround(cauchy_coefficient(50, 0.8, 4096).real()), c[50].get_si());
}

TEST(Cauchy, ConvergesAsKDoubles) {
  const auto c = v1_coefficients(50);
  for (double r : {0.6, 0.8}) {
    for (std::size_t n : {3u, 19u, 37u, 50u}) {
      // rounding in the samples is amplified by r^{-n}
      const double floor = 1e-14 * std::pow(r, -static_cast<double>(n));
      double prev = 1e300;
      for (std::size_t K = 256; K <= 4096; K *= 2) {
        const double err = std::abs(cauchy_coefficient(n, r, K) - ComplexVal(c[n].get_d()));
        EXPECT_LE(err, std::max(prev, floor)) << r << " " << n << " " << K;
        prev = err;
      }
      EXPECT_LT(prev, 0.5);
    }
  }
}

TEST(Cauchy, Errors) {
  EXPECT_THROW(cauchy_coefficient(1, 1.0, 64), std::invalid_argument);
  EXPECT_THROW(cauchy_coefficient(1, 0.0, 64), std::invalid_argument);
  EXPECT_THROW(cauchy_coefficient(20, 0.5, 64), std::invalid_argument);
}
