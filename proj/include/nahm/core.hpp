#pragma once
// Shared numeric plumbing: complex type alias, constants, exact phases e(x).

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>

namespace nahm {

template <class Real = double>
using Complex = std::complex<Real>;

using ComplexVal = Complex<double>;

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

/** Exact rational to working precision. Builtin types round once per operand. */
template <class Real>
Real to_real(const mpq_class& x) {
  if constexpr (std::floating_point<Real>) {
    if constexpr (std::same_as<Real, double>) {
      return x.get_d();
    } else {
      return static_cast<Real>(std::stold(x.get_num().get_str())) /
             static_cast<Real>(std::stold(x.get_den().get_str()));
    }
  } else {
    return Real(x.get_num().get_str()) / Real(x.get_den().get_str());
  }
}

/** e(num/den) = exp(2 pi i num/den) with the argument reduced mod 1 exactly first. */
template <class Real = double>
Complex<Real> e_frac(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("e_frac: denominator must be positive");
  std::int64_t k = num % den;
  if (k < 0) k += den;
  if (k == 0) return {Real(1), Real(0)};
  if (2 * k == den) return {Real(-1), Real(0)};
  if (4 * k == den) return {Real(0), Real(1)};
  if (4 * k == 3 * den) return {Real(0), Real(-1)};
  Real t = 2 * pi_v<Real>() * Real(k) / Real(den);
  using std::cos;
  using std::sin;
  return {cos(t), sin(t)};
}

template <class Real = double>
Complex<Real> e_rat(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class frac = x - mpq_class(fl);
  Real t = 2 * pi_v<Real>() * to_real<Real>(frac);
  using std::cos;
  using std::sin;
  return {cos(t), sin(t)};
}

/** e(x) for real x. */
template <class Real>
Complex<Real> e_real(Real x) {
  using std::cos;
  using std::sin;
  Real t = 2 * pi_v<Real>() * x;
  return {cos(t), sin(t)};
}

inline bool is_finite(const ComplexVal& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t mod64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace nahm
