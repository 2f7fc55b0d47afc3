#pragma once
// Radial asymptotics of v1 near roots of unity of order divisible by 4, the
// coefficient main term, and numeric validation through Watson-type contour
// integrals and steepest descent.

#include "nahm/series.hpp"
#include "nahm/special.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <optional>
#include <utility>

namespace nahm {

template <class Real = double>
struct AsymptoticConstants {
  Complex<Real> V;  // purely imaginary
  Real absV;
  Real gamma_plus;
  Real gamma_minus;
  Real kappa;
};

template <class Real = double>
AsymptoticConstants<Real> constants() {
  using std::pow;
  using std::sqrt;
  const Real D = bloch_wigner<Real>(e_frac<Real>(1, 6));
  AsymptoticConstants<Real> c;
  c.absV = D / 8;
  c.V = Complex<Real>(0, c.absV);
  const Real s3 = sqrt(Real(3));
  c.gamma_plus = Real(1) / (2 * pow(3 * (2 - s3), Real(0.25)));
  c.gamma_minus = Real(1) / (2 * pow(3 * (2 + s3), Real(0.25)));
  c.kappa = sqrt(c.absV / 2);
  return c;
}

/** Cached double-precision constants. */
inline const AsymptoticConstants<double>& consts() {
  static const AsymptoticConstants<double> c = constants<double>();
  return c;
}

struct MilnorResult {
  double zeta2;       // sum 1/n^2
  double l_chi;       // L(2, chi_{-3})
  double volume;      // 9 sqrt(3) zeta2 L / (2 pi^2) = D(e(1/6)) = 8 |V|
  double absV;        // volume / 8
  double tail_bound;  // bound on the propagated truncation error in absV
};

/**
 * 8|V| = D(e(1/6)) = 9 sqrt(3) zeta_K(2) / (2 pi^2), K = Q(sqrt(-3)), zeta_K(2) = zeta(2) L(2, chi_{-3}),
 * both factors summed as Dirichlet series. zeta(2): N terms plus the midpoint tail
 * 1/(N+1/2), error below 1/(4 N^3). L: pairs 1/(3k+1)^2 - 1/(3k+2)^2, positive and
 * decreasing, tail after K pairs below 1/(3 (3K-2)^2).
 */
inline MilnorResult milnor_details(double precision) {
  if (!(precision > 0)) throw std::invalid_argument("milnor_crosscheck: precision must be positive");
  const double pi = std::numbers::pi;
  const double target = precision / 10.0;
  const auto N = static_cast<std::size_t>(std::ceil(std::cbrt(1.0 / (4.0 * target)))) + 1;
  double z2 = 0.0;
  for (std::size_t n = N; n >= 1; --n) z2 += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  z2 += 1.0 / (static_cast<double>(N) + 0.5);
  const auto K = static_cast<std::size_t>(std::ceil((std::sqrt(1.0 / (3.0 * target)) + 2.0) / 3.0)) + 1;
  double L = 0.0;
  for (std::size_t k = K; k-- > 0;) {
    const double a = 3.0 * static_cast<double>(k) + 1.0, b = a + 1.0;
    L += 1.0 / (a * a) - 1.0 / (b * b);
  }
  const double scale = 9.0 * std::sqrt(3.0) / (2.0 * pi * pi);
  const double l_tail = 1.0 / (3.0 * std::pow(3.0 * static_cast<double>(K) - 2.0, 2));
  const double z_tail = 1.0 / (4.0 * std::pow(static_cast<double>(N), 3));
  const double vol = scale * z2 * L;
  return {z2, L, vol, vol / 8.0, scale * (z2 * l_tail + L * z_tail) / 8.0};
}

inline double milnor_crosscheck(double precision) { return milnor_details(precision).absV; }

// ---------------------------------------------------------------------------
// Coefficient main term.

/** (cos x - (-1)^n sin x) times the parity weights, i.e. M(n) e^{-x} sqrt(n), x = sqrt(2|V|n). */
inline double main_term_normalized(std::uint64_t n) {
  const auto& c = consts();
  const double x = std::sqrt(2.0 * c.absV * static_cast<double>(n));
  const double sgn = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  const double par = (n % 2 == 0) ? 1.0 : -1.0;
  return sgn * (c.gamma_plus + par * c.gamma_minus) * (std::cos(x) - par * std::sin(x));
}

/** M(n) = (-1)^{floor(n/2)} e^{x}/sqrt(n) (g+ + (-1)^n g-) (cos x - (-1)^n sin x), x = sqrt(2|V|n). */
inline double main_term(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("main_term: n must be >= 1");
  const double x = std::sqrt(2.0 * consts().absV * static_cast<double>(n));
  return std::exp(x) / std::sqrt(static_cast<double>(n)) * main_term_normalized(n);
}

// ---------------------------------------------------------------------------
// Saddle data for the n0-part v1^{[n0]}(q) = sum_{n = n0 mod m/2} q^{n(n+1)/2}/(-q^2;q^2)_n.

/** r reduced to +-1 mod 4 (r odd). */
inline int r_mod4_sign(std::int64_t r) {
  if (r % 2 == 0) throw std::invalid_argument("r must be odd");
  return mod64(r, 4) == 1 ? 1 : -1;
}

/** Phase sign in zeta^{n(n+1)/2}(-1)^{2(n-n0)/m} = zeta^{n0(n0+1)/2} e(d (n-n0)/(2m)). */
inline int phase_delta(std::int64_t r, std::int64_t m, std::int64_t n0) {
  const int s = ((m / 4 + n0 + 1) % 2 == 0) ? 1 : -1;
  return s * r_mod4_sign(r);
}

/** Orientation of the saddle: v0 = delta pi/(3m), exponent e^{delta 16 V/(z m^2)}. */
inline int saddle_orientation(std::int64_t r, std::int64_t m, std::int64_t n0) { return -phase_delta(r, m, n0); }

struct SaddleData {
  std::int64_t r = 1, m = 4, n0 = 0;
  int delta = 1;
  ComplexVal v0, f_v0, f2_v0, g_v0;
};

namespace detail {

inline void check_m(std::int64_t m) {
  if (m < 4 || m % 4 != 0) throw std::invalid_argument("m must be a positive multiple of 4");
}

inline double branch_side(ComplexVal v, const BranchSpec& b) {
  const double s = (v / b.phi).real();
  if (s == 0.0) throw std::domain_error("f: v lies on the line Re(v/phi) = 0");
  return s > 0 ? 1.0 : -1.0;
}

}  // namespace detail

/** f(v) = -2 Li2^phi(e^{-imv})/m^2 + v^2/2 + (pi delta v - 2 pi S v)/m, S = sign Re(v/phi). */
inline ComplexVal f_value(ComplexVal v, std::int64_t m, int delta, const BranchSpec& b) {
  const double md = static_cast<double>(m), pi = std::numbers::pi;
  const double S = detail::branch_side(v, b);
  return -2.0 * li2_rotated<double>(md * v, b) / (md * md) + v * v / 2.0 + (pi * delta - 2.0 * pi * S) * v / md;
}

inline ComplexVal f_prime(ComplexVal v, std::int64_t m, int delta, const BranchSpec& b) {
  const double md = static_cast<double>(m), pi = std::numbers::pi;
  const double S = detail::branch_side(v, b);
  return ComplexVal(0, 2.0) * li1_rotated<double>(md * v, b) / md + v + (pi * delta - 2.0 * pi * S) / md;
}

/** f''(v) = (1 + e^{-imv})/(1 - e^{-imv}). */
inline ComplexVal f_second(ComplexVal v, std::int64_t m) {
  const ComplexVal w = std::exp(ComplexVal(0, -static_cast<double>(m)) * v);
  return (1.0 + w) / (1.0 - w);
}

/**
 * g(v) = -2 i S e^{-2 pi i S n0/m} exp(-iv/2 + C(v)),
 * C(v) = -Li1^phi(e^{-imv})/2 + sum_{t=1}^{m/2} (2t/m) Li1^phi(-zeta^{2t+2n0} e^{-2iv}).
 */
inline ComplexVal g_value(ComplexVal v, std::int64_t r, std::int64_t m, std::int64_t n0, const BranchSpec& b) {
  const double md = static_cast<double>(m), pi = std::numbers::pi;
  const double S = detail::branch_side(v, b);
  ComplexVal C = -0.5 * li1_rotated<double>(md * v, b);
  for (std::int64_t t = 1; t <= m / 2; ++t) {
    const std::int64_t k = mod64(r * (2 * t + 2 * n0), m);
    // -zeta^k e^{-2iv} = e^{-i v'}, v' = 2v - pi - 2 pi k/m
    const ComplexVal vt = 2.0 * v - pi - 2.0 * pi * static_cast<double>(k) / md;
    C += (2.0 * static_cast<double>(t) / md) * li1_rotated<double>(vt, b);
  }
  const ComplexVal phase = std::exp(ComplexVal(0, -2.0 * pi * S * static_cast<double>(n0) / md));
  return ComplexVal(0, -2.0 * S) * phase * std::exp(ComplexVal(0, -0.5) * v + C);
}

/** (f, g) at v. */
inline std::pair<ComplexVal, ComplexVal> f_g_pair(ComplexVal v, std::int64_t r, std::int64_t m, std::int64_t n0, int delta,
                                                  const BranchSpec& b) {
  detail::check_m(m);
  return {f_value(v, m, delta, b), g_value(v, r, m, n0, b)};
}

/** Newton iteration on f' from delta pi/(3m) (1 + 0.1 i). */
inline ComplexVal stationary_point(std::int64_t m, int delta, const BranchSpec& b) {
  detail::check_m(m);
  if (delta != 1 && delta != -1) throw std::invalid_argument("stationary_point: delta must be +-1");
  const double md = static_cast<double>(m);
  ComplexVal v = delta * std::numbers::pi / (3.0 * md) * ComplexVal(1.0, 0.1);
  for (int it = 0; it < 50; ++it) {
    const ComplexVal fp = f_prime(v, m, delta, b);
    if (std::abs(fp) < 1e-12) return v;
    v -= fp / f_second(v, m);
  }
  throw std::runtime_error("stationary_point: Newton iteration did not converge");
}

inline SaddleData saddle_data(std::int64_t r, std::int64_t m, std::int64_t n0,
                              const BranchSpec& b = BranchSpec::from_angle(std::numbers::pi / 4)) {
  detail::check_m(m);
  if (gcd64(r, m) != 1) throw std::invalid_argument("saddle_data: gcd(r, m) must be 1");
  if (n0 < 0 || n0 >= m / 2) throw std::invalid_argument("saddle_data: n0 must lie in [0, m/2)");
  SaddleData sd;
  sd.r = r;
  sd.m = m;
  sd.n0 = n0;
  sd.delta = saddle_orientation(r, m, n0);
  sd.v0 = stationary_point(m, sd.delta, b);
  sd.f_v0 = f_value(sd.v0, m, sd.delta, b);
  sd.f2_v0 = f_second(sd.v0, m);
  sd.g_v0 = g_value(sd.v0, r, m, n0, b);
  return sd;
}

/** gamma^{[n0]} from the saddle data: the amplitude in e^{delta 16V/(z m^2)} sqrt(2 pi i delta/z) gamma. */
inline ComplexVal gamma_from_saddle(const SaddleData& sd) {
  const double md = static_cast<double>(sd.m);
  const ComplexVal zeta_pow = e_frac(sd.r * mod64(sd.n0 * (sd.n0 + 1) / 2, sd.m), sd.m);
  const ComplexVal phase = e_frac(sd.delta * sd.n0, 2 * sd.m);
  const ComplexVal Q = q_factor(sd.r, sd.m / 2);
  const ComplexVal num = zeta_pow * phase * sd.g_v0;
  const ComplexVal den = Q * md * std::sqrt(-sd.f2_v0) * std::sqrt(ComplexVal(0, sd.delta));
  return -num / den;
}

inline ComplexVal gamma_n0(std::int64_t r, std::int64_t m, std::int64_t n0) { return gamma_from_saddle(saddle_data(r, m, n0)); }

struct GammaPair {
  ComplexVal plus, minus;
};

/** gamma^{+-}_{(r/m)}: sums of gamma^{[n0]} over n0 in [0, m/2) grouped by saddle orientation. */
inline GammaPair gamma_pm(std::int64_t r, std::int64_t m) {
  detail::check_m(m);
  GammaPair g{};
  for (std::int64_t n0 = 0; n0 < m / 2; ++n0) {
    const ComplexVal v = gamma_n0(r, m, n0);
    (saddle_orientation(r, m, n0) > 0 ? g.plus : g.minus) += v;
  }
  return g;
}

/** Generic leading steepest-descent value of the integral of g e^{f/z} through a saddle. */
inline ComplexVal steepest_descent(ComplexVal g0, ComplexVal f0, ComplexVal f2, ComplexVal z) {
  return g0 * std::exp(f0 / z) * std::sqrt(2.0 * std::numbers::pi * z / (-f2));
}

/** Exponential part of v1^{[n0]}: e^{(pi^2/(3m^2) + f(v0))/z} sqrt(2 pi i delta)/sqrt(z) gamma^{[n0]}. */
inline ComplexVal saddle_leading(const SaddleData& sd, ComplexVal z) {
  const double md = static_cast<double>(sd.m), pi = std::numbers::pi;
  const ComplexVal expo = (pi * pi / (3.0 * md * md) + sd.f_v0) / z;
  return std::exp(expo) * std::sqrt(ComplexVal(0, 2.0 * pi * sd.delta)) / std::sqrt(z) * gamma_from_saddle(sd);
}

/** phi^{[n0]} at q = zeta e^{-z}, zeta = +-i, from the exact series to order K. */
inline ComplexVal phi_value(std::int64_t r, int n0, ComplexVal z, std::size_t K) {
  if (K == 0) throw std::invalid_argument("phi_value: K must be positive");
  const auto s = phi_series(n0, K);
  if (mod64(r, 4) == 1) return s.evaluate<double>(z);
  // v1(conj q) = conj v1(q), and -i e^{-z} = conj(i e^{-conj z})
  return std::conj(s.evaluate<double>(std::conj(z)));
}

/**
 * Radial prediction for v1(e(r/m) e^{-z}): the two saddle families
 * e^{+-16V/(z m^2)} sqrt(+-2 pi i/z) gamma^{+-}, and for m = 4 the power-series parts
 * -(phi^{[0]} + phi^{[1]}) summed to z^K (K = 0 drops them).
 */
inline ComplexVal radial_asymptotic(std::int64_t r, std::int64_t m, ComplexVal z, std::size_t K = 4) {
  detail::check_m(m);
  if (z.imag() == 0.0) throw std::domain_error("radial_asymptotic: the real ray arg z = 0 is excluded");
  if (!(z.real() > 0)) throw std::domain_error("radial_asymptotic: requires Re z > 0");
  const BranchSpec b(z / std::abs(z));
  ComplexVal total(0);
  for (std::int64_t n0 = 0; n0 < m / 2; ++n0) total += saddle_leading(saddle_data(r, m, n0, b), z);
  if (m == 4 && K > 0) total -= phi_value(r, 0, z, K) + phi_value(r, 1, z, K);
  return total;
}

// ---------------------------------------------------------------------------
// Contour integral representation.

/**
 * v1^{[n0]}(q) = zeta^{n0(n0+1)/2} / ((-q^2;q^2)_inf i m)
 *   * closed integral over L of e(d(s-n0)/(2m)) e^{-zs(s+1)/2} (-zeta^{2n0} e^{-2sz} q^2; q^2)_inf
 *     / sin(2 pi (s-n0)/m) ds,
 * L counterclockwise around [0, inf): out along the lower ray, back along the upper ray,
 * around the origin on a circle of radius indent_radius.
 */
struct ContourSpec {
  std::optional<std::pair<double, double>> ray_angles;  // (upper, lower); default from arg z and margin
  double margin = std::numbers::pi / 16;
  double indent_radius = 0.25;
  double truncation_radius = 0.0;  // 0: pick R with e^{-M R^2} < 1e-16
  double tol = 1e-12;
  int initial_panels = 8;
  int max_doublings = 14;

  std::pair<double, double> angles_for(ComplexVal z) const {
    if (ray_angles) return *ray_angles;
    const double a = std::arg(z) / 2;
    return {std::numbers::pi / 4 - margin - a, -std::numbers::pi / 4 + margin - a};
  }
};

struct WatsonResult {
  ComplexVal value;
  double tail_bound;      // bound on the neglected ray tails
  double error_estimate;  // last refinement difference
  std::size_t evaluations;
};

namespace detail {

// (a; q)_inf by direct product.
inline ComplexVal qpoch_inf(ComplexVal a, ComplexVal q) {
  ComplexVal p(1), t = a;
  for (std::size_t j = 0; j < 100000000; ++j) {
    p *= 1.0 - t;
    if (std::abs(t) < 1e-18 * std::abs(p) && j > 0) break;
    t *= q;
  }
  return p;
}

template <class F>
ComplexVal gauss_panels(F&& f, double a, double b, int panels) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  ComplexVal total(0);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p, mid = lo + h / 2, half = h / 2;
    ComplexVal s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0)
        s += w[i] * f(mid);
      else
        s += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
    }
    total += s * half;
  }
  return total;
}

// Composite Gauss-Legendre with panel doubling until successive values agree.
template <class F>
std::pair<ComplexVal, double> integrate_doubling(F&& f, double a, double b, const ContourSpec& c) {
  int panels = c.initial_panels;
  ComplexVal prev = gauss_panels(f, a, b, panels);
  for (int d = 0; d < c.max_doublings; ++d) {
    panels *= 2;
    const ComplexVal cur = gauss_panels(f, a, b, panels);
    const double diff = std::abs(cur - prev);
    if (diff <= c.tol * std::max(1.0, std::abs(cur))) return {cur, diff};
    prev = cur;
  }
  throw std::runtime_error("watson_integral: quadrature did not converge");
}

}  // namespace detail

inline WatsonResult watson_integral(std::int64_t r, std::int64_t m, std::int64_t n0, ComplexVal z, const ContourSpec& c) {
  detail::check_m(m);
  if (gcd64(r, m) != 1) throw std::invalid_argument("watson_integral: gcd(r, m) must be 1");
  if (n0 < 0 || n0 >= m / 2) throw std::invalid_argument("watson_integral: n0 must lie in [0, m/2)");
  if (!(z.real() > 0)) throw std::domain_error("watson_integral: requires Re z > 0");
  const auto [th_up, th_lo] = c.angles_for(z);
  if (!(th_up > 1e-3 && th_lo < -1e-3))
    throw std::invalid_argument("watson_integral: rays must lie strictly above and below the positive axis");
  const double az = std::arg(z), pi = std::numbers::pi;
  const double cos_up = std::cos(az + 2 * th_up), cos_lo = std::cos(az + 2 * th_lo);
  if (!(cos_up > 0 && cos_lo > 0)) throw std::invalid_argument("watson_integral: rays leave the sector Re(z s^2) > 0");
  const double M = std::abs(z) * std::min(cos_up, cos_lo) / 2;
  const double d0 = c.indent_radius;
  const double R = c.truncation_radius > 0 ? c.truncation_radius : std::max(4 * d0, std::sqrt(std::log(1e16) / M));
  if (!(d0 < R)) throw std::invalid_argument("watson_integral: indent radius must be below the truncation radius");

  const double md = static_cast<double>(m);
  const ComplexVal zeta = e_frac(r, m);
  const ComplexVal q = zeta * std::exp(-z);
  const ComplexVal q2 = q * q;
  const ComplexVal lead = -e_frac(2 * r * n0, m) * q2;
  const int dp = phase_delta(r, m, n0);
  const ComplexVal pre = e_frac(r * mod64(n0 * (n0 + 1) / 2, m), m) /
                         (detail::qpoch_inf(-q2, q2) * ComplexVal(0, md));
  std::size_t evals = 0;
  auto F = [&](ComplexVal s) {
    ++evals;
    const ComplexVal x = s - static_cast<double>(n0);
    const ComplexVal ph = std::exp(ComplexVal(0, pi * dp / md) * x);
    const ComplexVal gauss = std::exp(-z * s * (s + 1.0) / 2.0);
    const ComplexVal poch = detail::qpoch_inf(lead * std::exp(-2.0 * s * z), q2);
    return ph * gauss * poch / std::sin(2.0 * pi * x / md);
  };
  const ComplexVal eu = std::polar(1.0, th_up), el = std::polar(1.0, th_lo);
  auto lower = [&](double t) { return F(t * el) * el; };
  auto upper = [&](double t) { return -F(t * eu) * eu; };
  auto arc = [&](double p) {
    const ComplexVal s = std::polar(d0, p);
    return F(s) * ComplexVal(0, 1) * s;
  };
  const auto [Il, el_err] = detail::integrate_doubling(lower, d0, R, c);
  const auto [Iu, eu_err] = detail::integrate_doubling(upper, d0, R, c);
  const auto [Ia, ea_err] = detail::integrate_doubling(arc, th_up, th_lo + 2 * pi, c);
  const double tail = (std::abs(F(R * el)) + std::abs(F(R * eu))) / (2 * M * R) * std::abs(pre);
  WatsonResult out;
  out.value = pre * (Il + Iu + Ia);
  out.error_estimate = std::abs(pre) * (el_err + eu_err + ea_err);
  out.tail_bound = tail;
  out.evaluations = evals;
  if (tail > c.tol * std::max(1.0, std::abs(out.value)))
    throw std::runtime_error("watson_integral: tail bound exceeds the requested tolerance");
  return out;
}

/** The m = 4, zeta = i case: n0parity selects the even (0) or odd (1) part. */
inline WatsonResult watson_integral(int n0parity, ComplexVal z, const ContourSpec& c = {}) {
  if (n0parity != 0 && n0parity != 1) throw std::invalid_argument("watson_integral: parity must be 0 or 1");
  return watson_integral(1, 4, n0parity, z, c);
}

/** Direct partial sum of v1^{[n0]} over n = n0 mod m/2 at q = e(r/m) e^{-z}. */
inline ComplexVal v1_part_direct(std::int64_t r, std::int64_t m, std::int64_t n0, ComplexVal z, double tol = 1e-17) {
  const ComplexVal q = e_frac(r, m) * std::exp(-z);
  if (!(std::abs(q) < 1)) throw std::domain_error("v1_part_direct: requires Re z > 0");
  const ComplexVal q2 = q * q;
  const std::int64_t step = m / 2;
  ComplexVal sum(0), term(1), qn(1), q2n(1);
  for (std::int64_t n = 0; n < 100000000; ++n) {
    if (n > 0) {
      qn *= q;
      q2n *= q2;
      term = term * qn / (1.0 + q2n);
    }
    if (mod64(n - n0, step) == 0) sum += term;
    if (n > 8 && std::abs(qn) < 0.5 && std::abs(term) < tol * (std::abs(sum) + 1)) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------

/**
 * Both sides of zeta^{n(n+1)/2} (-1)^{2(n-n0)/m} = zeta^{n0(n0+1)/2} e(d (n-n0)/(2m)),
 * each evaluated from its exponent reduced exactly.
 */
inline std::pair<ComplexVal, ComplexVal> zeta_power_identity(std::int64_t r, std::int64_t m, std::int64_t n0, std::int64_t n) {
  detail::check_m(m);
  if (gcd64(r, m) != 1) throw std::invalid_argument("zeta_power_identity: gcd(r, m) must be 1");
  if (mod64(n - n0, m / 2) != 0) throw std::invalid_argument("zeta_power_identity: n must be = n0 mod m/2");
  const auto tri = [m](std::int64_t k) {
    const __int128 t = static_cast<__int128>(k) * (k + 1) / 2;
    return static_cast<std::int64_t>(((t % m) + m) % m);
  };
  const std::int64_t k = (n - n0) / (m / 2);  // (-1)^{2(n-n0)/m} = (-1)^k
  const std::int64_t lhs_num = 2 * mod64(static_cast<std::int64_t>((static_cast<__int128>(r) * tri(n)) % m), m) + m * mod64(k, 2);
  const ComplexVal lhs = e_frac(lhs_num, 2 * m);
  const std::int64_t dp = phase_delta(r, m, n0);
  const std::int64_t rhs_num = 2 * mod64(r * tri(n0), m) + mod64(static_cast<std::int64_t>((static_cast<__int128>(dp) * (n - n0)) % (2 * m)), 2 * m);
  const ComplexVal rhs = e_frac(rhs_num, 2 * m);
  return {lhs, rhs};
}

}  // namespace nahm
