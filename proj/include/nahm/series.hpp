#pragma once
// Exact q-series coefficients of v1 and sigma, the phi expansions at q = i e^{-z},
// and numeric evaluation of v1 inside the unit disk and at roots of unity.

#include "nahm/core.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace nahm {

/** Truncated power series in q with exact integer coefficients 0..order. */
class IntSeries {
 public:
  IntSeries() : c_(1) {}
  explicit IntSeries(std::size_t order) : c_(order + 1) {}
  explicit IntSeries(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("IntSeries: need at least one coefficient");
  }

  std::size_t order() const { return c_.size() - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t k) const { return c_[k]; }
  mpz_class& operator[](std::size_t k) { return c_[k]; }

  IntSeries prefix(std::size_t m) const {
    if (m > order()) throw std::out_of_range("IntSeries::prefix beyond order");
    return IntSeries(std::vector<mpz_class>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(m) + 1));
  }

  /** Multiply by q^s, dropping terms above the order. */
  void shift_up(std::size_t s) {
    if (s == 0) return;
    const std::size_t n = c_.size();
    for (std::size_t k = n; k-- > 0;) {
      if (k >= s)
        mpz_swap(c_[k].get_mpz_t(), c_[k - s].get_mpz_t());
      else
        c_[k] = 0;
    }
  }

  /** Exact division by the unit 1 + q^k (k >= 1): c_i -= c_{i-k}. */
  void divide_one_plus(std::size_t k) {
    if (k == 0) throw std::invalid_argument("divide_one_plus: k must be positive");
    for (std::size_t i = k; i < c_.size(); ++i) c_[i] -= c_[i - k];
  }

  void multiply_one_plus(std::size_t k) {
    if (k == 0) throw std::invalid_argument("multiply_one_plus: k must be positive");
    for (std::size_t i = c_.size(); i-- > k;) c_[i] += c_[i - k];
  }

  IntSeries& operator+=(const IntSeries& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    c_.resize(n);
    for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
    return *this;
  }

  friend IntSeries operator+(IntSeries a, const IntSeries& b) { return a += b; }

  /** Truncated product; result order is the smaller of the two orders. */
  friend IntSeries operator*(const IntSeries& a, const IntSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    IntSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend bool operator==(const IntSeries& a, const IntSeries& b) { return a.c_ == b.c_; }

  template <class Real = double>
  Complex<Real> evaluate(const Complex<Real>& q) const {
    Complex<Real> acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * q + Complex<Real>(to_real<Real>(mpq_class(c_[k])));
    return acc;
  }

 private:
  std::vector<mpz_class> c_;
};

namespace detail {

// sum_{n>=0} q^{n(n+1)/2} / prod_{j<=n} (1 + q^{step*j}), exact to order N.
inline IntSeries nahm_sum(std::size_t N, std::size_t step) {
  IntSeries acc(N);
  IntSeries term(N);
  term[0] = 1;
  acc[0] = 1;
  for (std::size_t n = 1; n * (n + 1) / 2 <= N; ++n) {
    term.shift_up(n);
    term.divide_one_plus(step * n);
    for (std::size_t k = n * (n + 1) / 2; k <= N; ++k) acc[k] += term[k];
  }
  return acc;
}

}  // namespace detail

/** V1(0..N): coefficients of sum q^{n(n+1)/2} / (-q^2;q^2)_n. */
inline IntSeries v1_coefficients(std::size_t N) { return detail::nahm_sum(N, 2); }

/** S(0..N): coefficients of sum q^{n(n+1)/2} / (-q;q)_n. */
inline IntSeries sigma_coefficients(std::size_t N) { return detail::nahm_sum(N, 1); }

// ---------------------------------------------------------------------------
// Gaussian rationals and series in z.

struct GaussRational {
  mpq_class re, im;

  GaussRational() : re(0), im(0) {}
  GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  GaussRational conj() const { return {re, -im}; }

  template <class Real = double>
  Complex<Real> to_complex() const {
    return {to_real<Real>(re), to_real<Real>(im)};
  }
};

/** Truncated power series in z with Gaussian-rational coefficients 0..order. */
class GaussianRationalSeries {
 public:
  explicit GaussianRationalSeries(std::size_t order = 0) : c_(order + 1) {}

  std::size_t order() const { return c_.size() - 1; }
  const std::vector<GaussRational>& coeffs() const { return c_; }
  const GaussRational& operator[](std::size_t k) const { return c_[k]; }
  GaussRational& operator[](std::size_t k) { return c_[k]; }

  GaussianRationalSeries& operator+=(const GaussianRationalSeries& o) {
    const std::size_t n = std::min(c_.size(), o.c_.size());
    c_.resize(n);
    for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
    return *this;
  }

  friend GaussianRationalSeries operator*(const GaussianRationalSeries& a, const GaussianRationalSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    GaussianRationalSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == GaussRational()) continue;
      for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  GaussianRationalSeries scaled(const GaussRational& s) const {
    GaussianRationalSeries r(order());
    for (std::size_t i = 0; i <= order(); ++i) r.c_[i] = c_[i] * s;
    return r;
  }

  friend bool operator==(const GaussianRationalSeries& a, const GaussianRationalSeries& b) { return a.c_ == b.c_; }

  template <class Real = double>
  Complex<Real> evaluate(const Complex<Real>& z) const {
    Complex<Real> acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k].template to_complex<Real>();
    return acc;
  }

 private:
  std::vector<GaussRational> c_;
};

namespace detail {

// e^{c z} truncated at z^K.
inline GaussianRationalSeries exp_series(const mpq_class& c, std::size_t K) {
  GaussianRationalSeries s(K);
  mpq_class t = 1;
  for (std::size_t k = 0; k <= K; ++k) {
    s[k] = GaussRational(t);
    t = t * c / static_cast<unsigned long>(k + 1);
  }
  return s;
}

inline GaussRational i_power(long a) {
  switch (mod64(a, 4)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

/**
 * phi^{[n0]}(z) = 2 sum q^{-l(l+1)/2} (-q^2;q^2)_l over odd l (n0 = 0) or even
 * l >= 0 (n0 = 1), with q = i e^{-z}, expanded exactly to z^K.
 * The l-th summand vanishes to order ceil(l/2), so l <= 2K suffices.
 */
inline GaussianRationalSeries phi_series(int n0, std::size_t K) {
  if (n0 != 0 && n0 != 1) throw std::invalid_argument("phi_series: n0 must be 0 or 1");
  if (K < 1) throw std::invalid_argument("phi_series: K must be positive");
  GaussianRationalSeries total(K);
  GaussianRationalSeries poch(K);  // (-q^2;q^2)_l
  poch[0] = GaussRational(1);
  for (std::size_t l = 0; l <= 2 * K; ++l) {
    if (l > 0) {
      // 1 + q^{2l} = 1 + (-1)^l e^{-2lz}
      GaussianRationalSeries f = detail::exp_series(mpq_class(-2 * static_cast<long>(l)), K);
      if (l % 2 == 1) f = f.scaled(GaussRational(-1));
      f[0] += GaussRational(1);
      poch = poch * f;
    }
    if (static_cast<int>(l % 2) == 1 - n0) {
      const long a = static_cast<long>(l * (l + 1) / 2);
      GaussianRationalSeries term = detail::exp_series(mpq_class(a), K).scaled(detail::i_power(-a) * GaussRational(2));
      total += term * poch;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Numeric evaluation.

template <class Real = double>
struct EvalResult {
  Complex<Real> value;
  Real tail_bound;  // bound on the absolute truncation error
  std::size_t terms;
};

/**
 * Direct summation of v1(q) for |q| < 1. Terms satisfy
 * |t_{n+1}/t_n| <= rho_n = |q|^{n+1}/(1-|q|^{2n+2}), decreasing in n, so once
 * rho_n < 1/2 the tail after t_n is at most |t_n| rho_n/(1-rho_n).
 */
template <class Real = double>
EvalResult<Real> v1_eval_bounded(const Complex<Real>& q, Real tol, std::size_t max_terms = 1000000) {
  using std::abs;
  using std::pow;
  if (!(tol > 0)) throw std::invalid_argument("v1_eval: tol must be positive");
  const Real aq = abs(q);
  if (!(aq < 1)) throw std::domain_error("v1_eval: requires |q| < 1");
  Complex<Real> sum(1), term(1), qn(1), q2n(1);
  const Complex<Real> q2 = q * q;
  Real aqn = 1;
  for (std::size_t n = 1; n <= max_terms; ++n) {
    qn *= q;
    q2n *= q2;
    aqn *= aq;
    term = term * qn / (Real(1) + q2n);
    sum += term;
    const Real rho = aqn * aq / (1 - aqn * aqn * aq * aq);
    const Real at = abs(term);
    if (rho < Real(0.5) && at < tol * (abs(sum) + 1)) {
      return {sum, at * rho / (1 - rho), n + 1};
    }
  }
  throw std::runtime_error("v1_eval: no convergence within the term limit (q too close to the unit circle)");
}

template <class Real = double>
Complex<Real> v1_eval(const Complex<Real>& q, Real tol, std::size_t max_terms = 1000000) {
  return v1_eval_bounded<Real>(q, tol, max_terms).value;
}

/**
 * v1 at zeta = e(l/m), 4 not dividing m. The terms t_s = zeta^{s(s+1)/2}/(-zeta^2;zeta^2)_s
 * satisfy t_{s+m} = c t_s with c = zeta^{m(m+1)/2} / 2^{m/d}, d the order of zeta^2,
 * so v1(zeta) = (t_0 + ... + t_{m-1}) / (1 - c).
 */
inline ComplexVal v1_root_of_unity(std::int64_t l, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("v1_root_of_unity: m must be positive");
  if (m % 4 == 0) throw std::invalid_argument("v1_root_of_unity: m divisible by 4 is not supported");
  if (gcd64(l, m) != 1) throw std::invalid_argument("v1_root_of_unity: gcd(l, m) must be 1");
  const std::int64_t d = (m % 2 == 0) ? m / 2 : m;
  ComplexVal sum(0), poch(1);
  for (std::int64_t s = 0; s < m; ++s) {
    if (s > 0) poch *= 1.0 + e_frac(2 * l * s, m);
    sum += e_frac(l * mod64(s * (s + 1) / 2, m), m) / poch;
  }
  const ComplexVal c = e_frac(l * mod64(m * (m + 1) / 2, m), m) / std::ldexp(1.0, static_cast<int>(m / d));
  return sum / (1.0 - c);
}

/** K-point trapezoidal rule for (1/2 pi i) closed integral of v1(q) q^{-n-1} dq on |q| = r. */
inline ComplexVal cauchy_coefficient(std::size_t n, double r, std::size_t K) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("cauchy_coefficient: r must lie in (0,1)");
  if (K < 4 * n || K == 0) throw std::invalid_argument("cauchy_coefficient: K must be >= 4n");
  ComplexVal acc(0);
  const double rn = std::pow(r, static_cast<double>(n));
  for (std::size_t k = 0; k < K; ++k) {
    const ComplexVal w = e_frac(static_cast<std::int64_t>(k), static_cast<std::int64_t>(K));
    const ComplexVal val = v1_eval<double>(r * w, 1e-17);
    acc += val * e_frac(-static_cast<std::int64_t>((k * n) % K), static_cast<std::int64_t>(K));
  }
  return acc / (static_cast<double>(K) * rn);
}

}  // namespace nahm
