#pragma once
// Dilogarithms (principal, Bloch-Wigner, rotated branch), negative-index
// polylogarithms, Bernoulli numbers and polynomials, Dedekind sums, q-Pochhammer
// asymptotics at roots of unity and the Euler-Maclaurin expansion of (wq;q)_inf.

#include "nahm/core.hpp"

#include <limits>
#include <mutex>
#include <vector>

namespace nahm {

using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials (B_1 = -1/2).

namespace detail {

struct BernoulliTable {
  std::mutex mu;
  std::vector<mpq_class> b{mpq_class(1)};
};

inline BernoulliTable& bernoulli_table() {
  static BernoulliTable t;
  return t;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace detail

/** Exact B_n; the table grows on demand (initially filled to index 64). */
inline mpq_class bernoulli_number(std::size_t n) {
  auto& t = detail::bernoulli_table();
  std::lock_guard lock(t.mu);
  const std::size_t target = std::max<std::size_t>(n, 64);
  while (t.b.size() <= target) {
    const std::size_t m = t.b.size();
    mpq_class s = 0;
    for (std::size_t k = 0; k < m; ++k) s += mpq_class(detail::binomial(m + 1, k)) * t.b[k];
    mpq_class bm = -s / mpq_class(static_cast<unsigned long>(m + 1));
    bm.canonicalize();
    t.b.push_back(bm);
  }
  return t.b[n];
}

/** B_n(x) = sum_k C(n,k) B_k x^{n-k}. */
inline Rational bernoulli_poly(std::size_t n, const Rational& x) {
  Rational acc = 0;
  Rational xp = 1;  // x^{n-k}, built from k = n downwards
  for (std::size_t k = n + 1; k-- > 0;) {
    acc += mpq_class(detail::binomial(n, k)) * bernoulli_number(k) * xp;
    xp *= x;
  }
  acc.canonicalize();
  return acc;
}

// ---------------------------------------------------------------------------
// Principal dilogarithm.

namespace detail {

// Li2 = u - u^2/4 + sum_{k>=1} B_{2k} u^{2k+1}/(2k+1)!, u = -log(1-z), valid for |u| < 2 pi.
template <class Real>
Complex<Real> li2_bernoulli(const Complex<Real>& z) {
  using std::abs;
  using std::log;
  const Complex<Real> u = -log(Real(1) - z);
  const Complex<Real> u2 = u * u;
  Complex<Real> sum = u - u2 / Real(4);
  Complex<Real> up = u;  // u^{2k+1}
  const Real eps = std::numeric_limits<Real>::epsilon();
  mpz_class fact = 1;  // (2k+1)!
  for (std::size_t k = 1; k < 400; ++k) {
    up *= u2;
    fact *= static_cast<unsigned long>((2 * k) * (2 * k + 1));
    Real coef;
    if constexpr (std::same_as<Real, double>) {
      static const std::vector<double> table = [] {
        std::vector<double> c;
        mpz_class f = 1;
        for (std::size_t j = 1; j < 60; ++j) {
          f *= static_cast<unsigned long>((2 * j) * (2 * j + 1));
          c.push_back(mpq_class(bernoulli_number(2 * j) / mpq_class(f)).get_d());
        }
        return c;
      }();
      if (k - 1 < table.size())
        coef = table[k - 1];
      else
        coef = to_real<Real>(bernoulli_number(2 * k) / mpq_class(fact));
    } else {
      coef = to_real<Real>(bernoulli_number(2 * k) / mpq_class(fact));
    }
    const Complex<Real> term = coef * up;
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/**
 * Principal Li2 on C \ (1, inf). On the cut the value from below (Im z -> 0-) is returned.
 * Reduction: inversion to |z| <= 1, reflection to Re z <= 1/2, then the Bernoulli series.
 */
template <class Real = double>
Complex<Real> li2(const Complex<Real>& z) {
  using std::abs;
  using std::log;
  const Real pi = pi_v<Real>();
  const Real x = z.real(), y = z.imag();
  if (x == 0 && y == 0) return {0, 0};
  const Real zeta2 = pi * pi / 6;
  if (y == 0 && x == 1) return {zeta2, 0};
  if (y == 0 && x > 1) {
    const Real lx = log(x);
    const Complex<Real> inv = li2<Real>(Complex<Real>(Real(1) / x, 0));
    return {Real(2 * zeta2 - lx * lx / 2 - inv.real()), Real(-pi * lx)};
  }
  const Complex<Real> one(1);
  if (abs(z) > 1) {
    const Complex<Real> l = log(-z);
    return Complex<Real>(-zeta2) - l * l / Real(2) - li2<Real>(one / z);
  }
  if (x > Real(0.5)) {
    return zeta2 - log(z) * log(one - z) - detail::li2_bernoulli<Real>(one - z);
  }
  return detail::li2_bernoulli<Real>(z);
}

/** D(z) = Im Li2(z) + arg(1-z) log|z|, arg in (-pi, pi]. Zero on the real line. */
template <class Real = double>
Real bloch_wigner(const Complex<Real>& z) {
  using std::abs;
  using std::arg;
  using std::log;
  if (z.imag() == 0) {
    if (z.real() == 0 || z.real() == 1) throw std::domain_error("bloch_wigner: undefined at 0 and 1");
    return Real(0);
  }
  return li2<Real>(z).imag() + arg(Real(1) - z) * log(abs(z));
}

// ---------------------------------------------------------------------------
// Li_m for m <= 1.

namespace detail {

// Li_{-k}(z) = P_k(z) / (1-z)^{k+1} with integer P_k; P_0 = z.
struct EulerianTable {
  std::mutex mu;
  std::vector<std::vector<mpz_class>> p{{mpz_class(0), mpz_class(1)}};
};

inline EulerianTable& eulerian_table() {
  static EulerianTable t;
  return t;
}

// z d/dz [P/(1-z)^{k+1}] = [z P' (1-z) + (k+1) z P] / (1-z)^{k+2}
inline std::vector<mpz_class> eulerian_poly(std::size_t k) {
  auto& t = eulerian_table();
  std::lock_guard lock(t.mu);
  while (t.p.size() <= k) {
    const auto& P = t.p.back();
    const std::size_t kk = t.p.size() - 1;
    std::vector<mpz_class> next(P.size() + 1);
    for (std::size_t i = 1; i < P.size(); ++i) {
      const mpz_class d = P[i] * static_cast<unsigned long>(i);  // coefficient of z^{i-1} in P'
      next[i] += d;                                             // z P'
      next[i + 1] -= d;                                         // -z^2 P'
    }
    for (std::size_t i = 0; i < P.size(); ++i) next[i + 1] += P[i] * static_cast<unsigned long>(kk + 1);
    t.p.push_back(std::move(next));
  }
  return t.p[k];
}

}  // namespace detail

/** Li_m(z) for m <= 1: rational functions for m <= 0, -log(1-z) (principal) for m = 1. */
template <class Real = double>
Complex<Real> polylog_neg(int m, const Complex<Real>& z) {
  using std::log;
  if (m > 1) throw std::invalid_argument("polylog_neg: m must be <= 1");
  if (z == Complex<Real>(1)) throw std::domain_error("polylog_neg: singular at z = 1");
  if (m == 1) return -log(Real(1) - z);
  const std::size_t k = static_cast<std::size_t>(-m);
  const auto P = detail::eulerian_poly(k);
  Complex<Real> num(0);
  for (std::size_t i = P.size(); i-- > 0;) num = num * z + Complex<Real>(to_real<Real>(mpq_class(P[i])));
  Complex<Real> den = std::pow(Real(1) - z, static_cast<int>(k + 1));
  return num / den;
}

// ---------------------------------------------------------------------------
// Rotated branches.

/** Ray direction phi, |phi| = 1 and |arg phi| < pi/2, rotating the cuts of Li_s(e^{-iv}). */
struct BranchSpec {
  ComplexVal phi;

  explicit BranchSpec(ComplexVal p = {1.0, 0.0}) : phi(p) {
    if (std::abs(std::abs(phi) - 1.0) > 1e-14) throw std::invalid_argument("BranchSpec: |phi| must be 1");
    if (!(std::abs(std::arg(phi)) < std::numbers::pi / 2))
      throw std::invalid_argument("BranchSpec: |arg phi| must be < pi/2");
  }

  static BranchSpec from_angle(double a) { return BranchSpec(std::polar(1.0, a)); }
};

namespace detail {

// The cuts of Li_s^phi(e^{-iv}) are the rays 2 pi n + i phi t, t >= 0. The principal cuts
// are the vertical rays 2 pi n + i t. Each wedge between a vertical ray and its rotated
// image that contains v contributes a jump; we return the crossed offsets u = v - 2 pi n.
template <class Real>
std::vector<Complex<Real>> crossed_cuts(const Complex<Real>& v, const BranchSpec& b) {
  using std::abs;
  using std::ceil;
  using std::floor;
  using std::tan;
  std::vector<Complex<Real>> out;
  const Real alpha = static_cast<Real>(std::arg(b.phi));
  const Real twopi = 2 * pi_v<Real>();
  const Real x = v.real(), y = v.imag();
  if (!(y > 0)) return out;
  const Complex<Real> dir(static_cast<Real>(b.phi.real()), static_cast<Real>(b.phi.imag()));
  // distance to the nearby rotated rays
  const Real spread = y * abs(tan(alpha)) + twopi;
  const auto nlo = static_cast<long>(floor((x - spread) / twopi));
  const auto nhi = static_cast<long>(ceil((x + spread) / twopi));
  for (long n = nlo; n <= nhi; ++n) {
    const Complex<Real> u = v - twopi * Real(n);
    // component of u along i*phi and across it
    const Complex<Real> w = u / (Complex<Real>(0, 1) * dir);
    if (w.real() >= 0 && abs(w.imag()) < Real(1e-10))
      throw std::domain_error("rotated branch: argument lies on a rotated cut");
    if (alpha == 0) continue;
    const bool in_wedge = alpha > 0 ? (u.real() < 0 && w.imag() < 0) : (u.real() >= 0 && w.imag() > 0);
    if (in_wedge && u.imag() > 0) out.push_back(u);
  }
  return out;
}

}  // namespace detail

/** Li2^phi(e^{-iv}): principal value plus -+2 pi u for every crossed cut (sign follows arg phi). */
template <class Real = double>
Complex<Real> li2_rotated(const Complex<Real>& v, const BranchSpec& b) {
  using std::exp;
  Complex<Real> val = li2<Real>(exp(Complex<Real>(0, -1) * v));
  const Real s = std::arg(b.phi) > 0 ? Real(-1) : Real(1);
  for (const auto& u : detail::crossed_cuts<Real>(v, b)) val += s * 2 * pi_v<Real>() * u;
  return val;
}

/** Li1^phi(e^{-iv}) = -log(1 - e^{-iv}) on the rotated branch. */
template <class Real = double>
Complex<Real> li1_rotated(const Complex<Real>& v, const BranchSpec& b) {
  using std::exp;
  using std::log;
  Complex<Real> val = -log(Real(1) - exp(Complex<Real>(0, -1) * v));
  const Real s = std::arg(b.phi) > 0 ? Real(-1) : Real(1);
  const auto crossed = detail::crossed_cuts<Real>(v, b);
  val += s * Complex<Real>(0, 2 * pi_v<Real>()) * Real(crossed.size());
  return val;
}

// ---------------------------------------------------------------------------
// Dedekind sums and Pochhammer asymptotics.

/** s(r,m) = sum_{l=1}^{m-1} (l/m)(rl/m - floor(rl/m) - 1/2), exactly. */
inline Rational dedekind_sum(std::int64_t r, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("dedekind_sum: m must be >= 1");
  mpz_class acc = 0;  // scaled by 2 m^2
  for (std::int64_t l = 1; l < m; ++l) {
    const std::int64_t frac_num = mod64(static_cast<std::int64_t>((static_cast<__int128>(r) * l) % m), m);
    // (l/m)(frac_num/m - 1/2) = l (2 frac_num - m) / (2 m^2)
    acc += mpz_class(static_cast<long>(l)) * mpz_class(static_cast<long>(2 * frac_num - m));
  }
  Rational s(acc, mpz_class(static_cast<long>(2 * m)) * mpz_class(static_cast<long>(m)));
  s.canonicalize();
  return s;
}

/** Leading asymptotic of (q;q)_inf at q = e(r/m) e^{-z}: e^{-pi^2/(6 m^2 z)} sqrt(2 pi/(m z)) e(s(-r,m)/2). */
inline ComplexVal pochhammer_infty_asym(std::int64_t r, std::int64_t m, ComplexVal z) {
  if (m < 1) throw std::invalid_argument("pochhammer_infty_asym: m must be positive");
  if (!(z.real() > 0)) throw std::domain_error("pochhammer_infty_asym: requires Re z > 0");
  if (gcd64(r, m) != 1) throw std::invalid_argument("pochhammer_infty_asym: gcd(r, m) must be 1");
  const double pi = std::numbers::pi;
  const double md = static_cast<double>(m);
  return std::exp(-pi * pi / (6.0 * md * md * z)) * std::sqrt(2.0 * pi / (md * z)) *
         e_rat(dedekind_sum(-r, m) / 2);
}

/** Q(zeta) = e((s(-r, m/2) - s(-r, m))/2) for zeta = e(r/m), m even. */
inline ComplexVal q_factor(std::int64_t r, std::int64_t m) {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("q_factor: m must be even");
  if (gcd64(r, m) != 1) throw std::invalid_argument("q_factor: gcd(r, m) must be 1");
  return e_rat((dedekind_sum(-r, m / 2) - dedekind_sum(-r, m)) / 2);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin expansion of (wq;q)_inf at q = zeta e^{-z/m}, zeta = e(r/m).

struct EMExpansion {
  ComplexVal leading_coeff;            // coefficient of 1/z
  ComplexVal const_terms;              // z^0 part
  std::vector<ComplexVal> psi_coeffs;  // coefficients of z^1 .. z^{N-1}

  /** log (wq;q)_inf predicted by the expansion at z. */
  ComplexVal log_value(ComplexVal z) const {
    ComplexVal acc = leading_coeff / z + const_terms;
    ComplexVal zp = z;
    for (const auto& c : psi_coeffs) {
      acc += c * zp;
      zp *= z;
    }
    return acc;
  }
};

/**
 * log (wq;q)_inf = -Li2(w^m)/(m z) - Li1(w^m)/2 + sum_t (t/m) Li1(zeta^t w) + psi(z),
 * psi(z) = -sum_{s=2}^N sum_{t=1}^m B_s(1-t/m) Li_{2-s}(zeta^t w) z^{s-1}/s!.
 * Logarithmic branches follow the rotated cuts for w = e^{iv}, v = -i log w.
 */
inline EMExpansion em_expansion(ComplexVal w, std::int64_t r, std::int64_t m, std::size_t N, const BranchSpec& branch) {
  if (m < 1) throw std::invalid_argument("em_expansion: m must be positive");
  if (N < 1) throw std::invalid_argument("em_expansion: N must be positive");
  const ComplexVal wm = std::pow(w, static_cast<int>(m));
  if (std::abs(wm - 1.0) < 1e-12) throw std::domain_error("em_expansion: w^m = 1 is singular");
  const ComplexVal v = ComplexVal(0, -1) * std::log(w);  // w = e^{iv}
  const double md = static_cast<double>(m);
  EMExpansion out;
  out.leading_coeff = -li2_rotated<double>(-md * v, branch) / md;
  ComplexVal c = -0.5 * li1_rotated<double>(-md * v, branch);
  std::vector<ComplexVal> shifted(static_cast<std::size_t>(m));
  for (std::int64_t t = 1; t <= m; ++t) {
    // zeta^t w = e^{-i v_t}, v_t = -(v + 2 pi r t / m)
    const ComplexVal vt = -(v + 2.0 * std::numbers::pi * static_cast<double>(mod64(r * t, m)) / md);
    c += (static_cast<double>(t) / md) * li1_rotated<double>(vt, branch);
    shifted[static_cast<std::size_t>(t - 1)] = e_frac(r * t, m) * w;
  }
  out.const_terms = c;
  mpz_class fact = 1;
  for (std::size_t s = 2; s <= N; ++s) {
    fact *= static_cast<unsigned long>(s);
    ComplexVal acc(0);
    for (std::int64_t t = 1; t <= m; ++t) {
      const double b = bernoulli_poly(s, Rational(m - t, m)).get_d();
      acc += b * polylog_neg<double>(2 - static_cast<int>(s), shifted[static_cast<std::size_t>(t - 1)]);
    }
    out.psi_coeffs.push_back(-acc / mpq_class(fact).get_d());
  }
  return out;
}

}  // namespace nahm
