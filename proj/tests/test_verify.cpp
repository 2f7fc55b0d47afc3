#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nahm/verify.hpp"

using namespace nahm;

namespace {

const IntSeries& coeffs2200() {
  static const IntSeries c = v1_coefficients(2200);
  return c;
}

IntSeries negated(const IntSeries& c) {
  std::vector<mpz_class> v(c.coeffs());
  for (auto& x : v) x = -x;
  return IntSeries(std::move(v));
}

}  // namespace

TEST(Sections, PaperBlocks) {
  const auto s = sign_sections(coeffs2200().prefix(1000));
  auto has = [&](std::size_t a, std::size_t b, const std::string& p) {
    return std::any_of(s.begin(), s.end(), [&](const SignSection& x) { return x.start == a && x.end == b && x.pattern == p; });
  };
  EXPECT_TRUE(has(546, 702, "+--+"));
  EXPECT_TRUE(has(703, 877, "++--"));
}

TEST(Sections, PartitionAndAdjacency) {
  const auto s = sign_sections(coeffs2200());
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.front().start, 1u);
  EXPECT_EQ(s.back().end, 2200u);
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_EQ(s[i].start, s[i - 1].end + 1);
    if (s[i].end - s[i].start >= 8 && s[i - 1].end - s[i - 1].start >= 8 && s[i - 1].start > 200)
      EXPECT_EQ(s[i].pattern, next_pattern(s[i - 1].pattern)) << s[i].start;
  }
}

TEST(Sections, Degenerate) {
  const auto s = sign_sections(IntSeries(std::vector<mpz_class>(50, mpz_class(3))));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].degenerate);
  EXPECT_EQ(s[0].start, 1u);
  EXPECT_EQ(s[0].end, 49u);
}

TEST(Sections, BoundariesNearTransitions) {
  const auto s = sign_sections(coeffs2200());
  for (const auto& t : detect_triples(coeffs2200())) {
    if (!t.j || *t.j > 14) continue;
    const bool near = std::any_of(s.begin() + 1, s.end(), [&](const SignSection& x) {
      return std::labs(static_cast<long>(x.start) - static_cast<long>(t.Nj_detected)) <= 3;
    });
    EXPECT_TRUE(near) << t.Nj_detected;
  }
}

TEST(Triples, TableOne) {
  const auto t = detect_triples(coeffs2200().prefix(2100));
  std::vector<std::size_t> N;
  std::vector<long> floors, js;
  for (const auto& x : t)
    if (x.j) {
      N.push_back(x.Nj_detected);
      floors.push_back(*x.theta_floor);
      js.push_back(*x.j);
      EXPECT_LE(std::labs(*x.offset), 2);
      EXPECT_GE(x.Nj_detected, static_cast<std::size_t>(10 * *x.j * *x.j));
      EXPECT_EQ(*x.offset_last, *x.offset + 2);
    }
  EXPECT_EQ(N, (std::vector<std::size_t>{293, 410, 545, 702, 877, 1072, 1285, 1518, 1771, 2044}));
  EXPECT_EQ(floors, (std::vector<long>{294, 410, 546, 702, 877, 1072, 1286, 1519, 1772, 2044}));
  EXPECT_EQ(js, (std::vector<long>{5, 6, 7, 8, 9, 10, 11, 12, 13, 14}));
  ASSERT_FALSE(t.empty());
  EXPECT_FALSE(t.front().j.has_value());  // early irregular region
}

TEST(Triples, ChunkIndependent) {
  const auto whole = detect_triples(coeffs2200());
  const auto part = detect_triples(coeffs2200().prefix(1100));
  for (const auto& p : part) {
    if (p.Nj_detected + 2 > 1100) continue;
    const bool found = std::any_of(whole.begin(), whole.end(), [&](const TransitionReport& w) { return w.Nj_detected == p.Nj_detected; });
    EXPECT_TRUE(found) << p.Nj_detected;
  }
  EXPECT_EQ(detect_triples(coeffs2200()).size(), whole.size());
}

TEST(Triples, ZerosBreakTriples) {
  IntSeries c(std::vector<mpz_class>{1, 1, 1, 0, 1, 1, -1, -1, -1});
  const auto t = detect_triples(c);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].Nj_detected, 6u);
}

TEST(Theta, Predictions) {
  EXPECT_EQ(theta_prediction(5).second, 294);
  EXPECT_EQ(theta_prediction(8).second, 702);
  EXPECT_EQ(theta_prediction(14).second, 2044);
  EXPECT_THROW(theta_prediction(4), std::invalid_argument);
  const double a = consts().absV, pi = std::numbers::pi;
  for (long j = 5; j < 200; ++j) {
    const double d = theta_prediction(j + 1).first - theta_prediction(j).first;
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(d, pi * pi * (2.0 * j + 2) / (8 * a), 1e-9 * d);
  }
}

TEST(Theta, NearestIndex) {
  for (long j = 0; j < 100; ++j) EXPECT_EQ(nearest_theta_index(theta_value(j)), j);
  EXPECT_EQ(nearest_theta_index(115), 3);
}

TEST(Rates, TwoPlusTwoMinusWindows) {
  const auto& c = coeffs2200();
  const double w = conjecture4_rate(c, 1, 1000);
  const double s = conjecture4_rate(c, 1, 1000, ZeroPolicy::strict);
  EXPECT_GT(w, 0.93);
  EXPECT_LE(s, w);
  EXPECT_EQ(conjecture4_rate(negated(c), 1, 1000), w);
  EXPECT_EQ(conjecture4_rate(negated(c), 1, 1000, ZeroPolicy::strict), s);
  EXPECT_EQ(conjecture4_rate(IntSeries(std::vector<mpz_class>(100, mpz_class(-2))), 1, 90), 0.0);
  EXPECT_THROW(conjecture4_rate(c, 1, 2198), std::invalid_argument);
}

TEST(Rates, Growth) {
  const auto c = v1_coefficients(10000);
  EXPECT_GT(growth_scan(c), 0.9);
  std::size_t zeros = 0;
  for (std::size_t n = 1; n <= c.order(); ++n) zeros += c[n] == 0;
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_DOUBLE_EQ(growth_scan(c, [&](std::size_t) { return -inf; }), 1.0 - static_cast<double>(zeros) / 10000.0);
  EXPECT_EQ(growth_scan(c, [&](std::size_t) { return inf; }), 0.0);
}

TEST(Normalized, Properties) {
  const auto& c = coeffs2200();
  const auto v = normalized_sequence(c);
  EXPECT_EQ(v[0], 0.0);
  for (std::size_t n = 1; n <= c.order(); ++n) EXPECT_EQ(v[n] > 0, sgn(c[n]) > 0);
  // exact reference from the big-integer value at moderate n
  const double ref = c[300].get_d() * std::exp(-std::sqrt(2 * consts().absV * 300)) * std::sqrt(300.0);
  EXPECT_NEAR(v[300], ref, 1e-12 * std::fabs(ref));
}

TEST(LogAbs, Conversion) {
  const mpz_class big("123456789012345678901234567890123456789012345678901234567890123456789");
  EXPECT_NEAR(log_abs(big), std::log(1.23456789012345678) + 68 * std::log(10.0), 1e-12);
  EXPECT_NEAR(log_abs(-big), log_abs(big), 0.0);
  EXPECT_EQ(log_abs(mpz_class(0)), -std::numeric_limits<double>::infinity());
}

TEST(Discrepancy, Basics) {
  for (std::size_t N : {1u, 2u, 64u, 1024u, 131072u}) {
    std::vector<double> pts;
    for (std::size_t k = 0; k < N; ++k) pts.push_back(static_cast<double>(k) / static_cast<double>(N));
    EXPECT_EQ(star_discrepancy(pts).DN, 1.0 / static_cast<double>(N));
  }
  // non-dyadic k/N is rounded on input
  for (std::size_t N : {7u, 49u, 100000u}) {
    std::vector<double> pts;
    const double dN = static_cast<double>(N);
    for (std::size_t k = 0; k < N; ++k) pts.push_back(static_cast<double>(k) / dN);
    EXPECT_LE(std::fabs(star_discrepancy(pts).DN * dN - 1.0), dN * 0x1p-52) << N;
  }
  EXPECT_EQ(star_discrepancy({0.0}).DN, 1.0);
  EXPECT_THROW(star_discrepancy({0.5, 1.0}), std::domain_error);
  EXPECT_THROW(star_discrepancy({}), std::invalid_argument);
}

TEST(Discrepancy, PermutationInvariantAndBucketBound) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts(5000);
  for (auto& p : pts) p = u(rng);
  const auto a = star_discrepancy(pts);
  std::shuffle(pts.begin(), pts.end(), rng);
  EXPECT_EQ(star_discrepancy(pts).DN, a.DN);
  const auto b = star_discrepancy(pts, false);
  EXPECT_GE(b.DN + 1e-15, a.DN);
  EXPECT_LE(b.DN, a.DN + 1.0 / 5000 + 1e-15);
  EXPECT_LE(a.plain_bound, 2 * a.DN + 1e-15);
}

TEST(Discrepancy, SqrtSequenceScaled) {
  std::vector<double> s;
  for (std::size_t N : {1000u, 10000u, 100000u}) s.push_back(star_discrepancy(sqrt_sequence(N)).scaled);
  EXPECT_LE(s[1], 10.0);
  EXPECT_GE(s[0], s[1]);
  EXPECT_GE(s[1], s[2]);
}

TEST(Gap, LocalMinima) {
  const auto& c = coeffs2200();
  EXPECT_TRUE(transition_gap_check(c, 5).local_min);
  EXPECT_TRUE(transition_gap_check(c, 8).local_min);
  const auto g = transition_gap_check(c, 5);
  EXPECT_GT(g.threshold, 0.0);
  EXPECT_LE(std::min(g.F_plus, g.F_minus), std::sqrt(2.0));
  std::vector<mpz_class> mono;
  for (int k = 0; k < 100; ++k) mono.emplace_back(100 - k);
  EXPECT_FALSE(transition_gap_check_at(IntSeries(mono), 50).local_min);
  EXPECT_THROW(transition_gap_check(c, 40), std::invalid_argument);
}
