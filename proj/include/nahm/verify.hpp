#pragma once
// Sign-pattern and transition scans over exact coefficients, the growth and
// window-rate statistics, the normalized sequence, and star discrepancy.

#include "nahm/asymptotics.hpp"
#include "nahm/csv.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace nahm {

// ---------------------------------------------------------------------------
// Helpers on big integers.

inline int sign_of(const mpz_class& x) { return sgn(x); }

/** log|x| from the leading bits (mpz_get_d_2exp, truncating); -inf for zero. */
inline double log_abs(const mpz_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double d = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// Sign sections.

/** Character k of a pattern is the sign at indices n = k+1 (mod 4). Listed in cyclic order. */
inline constexpr std::array<const char*, 4> sign_patterns = {"++--", "-++-", "--++", "+--+"};

inline std::string next_pattern(const std::string& p) {
  for (std::size_t i = 0; i < 4; ++i)
    if (p == sign_patterns[i]) return sign_patterns[(i + 1) % 4];
  throw std::invalid_argument("next_pattern: unknown pattern");
}

struct SignSection {
  std::size_t start = 0, end = 0;
  std::string pattern;  // empty when degenerate
  bool degenerate = false;
};

namespace detail {

inline bool fits(const IntSeries& c, std::size_t n, const std::string& p) {
  const int s = sign_of(c[n]);
  return s == 0 || (s > 0) == (p[(n - 1) % 4] == '+');
}

}  // namespace detail

/**
 * Greedy segmentation of n >= 1 into maximal runs consistent with one pattern
 * (zeros match either sign). Where two runs overlap the shared indices go to the
 * later run, so a section boundary falls inside each same-sign triple.
 * Inputs with fewer than two distinct nonzero signs yield one degenerate section.
 */
inline std::vector<SignSection> sign_sections(const IntSeries& c) {
  const std::size_t N = c.order();
  std::vector<SignSection> out;
  if (N < 1) return out;
  bool pos = false, neg = false;
  for (std::size_t n = 1; n <= N; ++n) {
    pos |= sign_of(c[n]) > 0;
    neg |= sign_of(c[n]) < 0;
  }
  if (!(pos && neg)) return {SignSection{1, N, "", true}};
  std::size_t n = 1;
  while (n <= N) {
    std::string best;
    std::size_t best_end = n;
    for (const char* p : sign_patterns) {
      std::size_t k = n;
      while (k <= N && detail::fits(c, k, p)) ++k;
      if (k > best_end) {
        best_end = k;
        best = p;
      }
    }
    out.push_back(SignSection{n, best_end - 1, best, false});
    n = best_end;
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    auto& a = out[i - 1];
    auto& b = out[i];
    while (b.start - 1 > a.start && detail::fits(c, b.start - 1, b.pattern)) {
      --b.start;
      --a.end;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transitions.

/** theta_j = pi^2 ((2j+1)/4)^2 / (2|V|) for any j >= 0. */
inline double theta_value(long j) {
  const double pi = std::numbers::pi;
  const double a = (2.0 * static_cast<double>(j) + 1.0) / 4.0;
  return pi * pi * a * a / (2.0 * consts().absV);
}

/** (theta_j, floor theta_j) for j >= 5. */
inline std::pair<double, long> theta_prediction(long j) {
  if (j < 5) throw std::invalid_argument("theta_prediction: j must be >= 5");
  const double t = theta_value(j);
  return {t, static_cast<long>(std::floor(t))};
}

/** Index j >= 0 whose theta_j is nearest to x. */
inline long nearest_theta_index(double x) {
  const double pi = std::numbers::pi;
  const double jr = (std::sqrt(32.0 * consts().absV * std::max(x, 0.0)) / pi - 1.0) / 2.0;
  long best = std::max(0L, static_cast<long>(std::floor(jr)) - 1);
  for (long j = best; j <= best + 3; ++j)
    if (std::fabs(theta_value(j) - x) < std::fabs(theta_value(best) - x)) best = j;
  return best;
}

struct TransitionReport {
  std::optional<long> j;  // empty for detections below the indexed range
  std::size_t Nj_detected = 0;
  std::optional<long> theta_floor;
  std::optional<long> offset;       // Nj_detected - floor(theta_j)
  std::optional<long> offset_last;  // (Nj_detected + 2) - floor(theta_j)
};

/**
 * Indices where three consecutive nonzero coefficients share a sign (first index of
 * each run). Each detection is paired with the nearest theta_j and indexed when j >= jstart.
 */
inline std::vector<TransitionReport> detect_triples(const IntSeries& c, long jstart = 5) {
  std::vector<TransitionReport> out;
  const std::size_t N = c.order();
  bool prev = false;
  for (std::size_t n = 1; n + 2 <= N; ++n) {
    const int s = sign_of(c[n]);
    const bool hit = s != 0 && sign_of(c[n + 1]) == s && sign_of(c[n + 2]) == s;
    if (hit && !prev) {
      TransitionReport t;
      t.Nj_detected = n;
      const long j = nearest_theta_index(static_cast<double>(n));
      if (j >= jstart) {
        const long fl = theta_prediction(j).second;
        t.j = j;
        t.theta_floor = fl;
        t.offset = static_cast<long>(n) - fl;
        t.offset_last = static_cast<long>(n) + 2 - fl;
      }
      out.push_back(t);
    }
    prev = hit;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rates.

enum class ZeroPolicy {
  wildcard,  // a zero may stand for either sign
  strict     // zeros never count as positive or negative
};

/** Fraction of n in [nmin, nmax] whose window n..n+3 holds two positive and two negative entries. */
inline double conjecture4_rate(const IntSeries& c, std::size_t nmin, std::size_t nmax,
                               ZeroPolicy policy = ZeroPolicy::wildcard) {
  if (nmin > nmax) throw std::invalid_argument("conjecture4_rate: empty range");
  if (c.order() < 3 || nmax > c.order() - 3) throw std::invalid_argument("conjecture4_rate: nmax exceeds order - 3");
  std::size_t good = 0;
  for (std::size_t n = nmin; n <= nmax; ++n) {
    int p = 0, q = 0;
    for (std::size_t k = n; k < n + 4; ++k) {
      const int s = sign_of(c[k]);
      p += s > 0;
      q += s < 0;
    }
    const bool ok = policy == ZeroPolicy::strict ? (p == 2 && q == 2) : (p <= 2 && q <= 2);
    good += ok;
  }
  return static_cast<double>(good) / static_cast<double>(nmax - nmin + 1);
}

/** log of the default growth threshold e^{kappa sqrt n}. */
inline double default_log_threshold(std::size_t n) { return consts().kappa * std::sqrt(static_cast<double>(n)); }

/** Fraction of n in [nmin, order] with V(n) != 0 and log|V(n)| >= log_threshold(n). */
inline double growth_scan(const IntSeries& c, const std::function<double(std::size_t)>& log_threshold = default_log_threshold,
                          std::size_t nmin = 1) {
  if (nmin > c.order()) throw std::invalid_argument("growth_scan: empty range");
  std::size_t good = 0;
  for (std::size_t n = nmin; n <= c.order(); ++n) {
    if (c[n] == 0) continue;
    good += log_abs(c[n]) >= log_threshold(n);
  }
  return static_cast<double>(good) / static_cast<double>(c.order() - nmin + 1);
}

/** V(n) e^{-sqrt(2|V|n)} sqrt(n); entry 0 is set to 0. */
inline std::vector<double> normalized_sequence(const IntSeries& c) {
  std::vector<double> out(c.order() + 1, 0.0);
  const double a = 2.0 * consts().absV;
  for (std::size_t n = 1; n <= c.order(); ++n) {
    if (c[n] == 0) continue;
    const double dn = static_cast<double>(n);
    out[n] = sign_of(c[n]) * std::exp(log_abs(c[n]) - std::sqrt(a * dn) + 0.5 * std::log(dn));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discrepancy.

struct DiscrepancyResult {
  std::size_t N = 0;
  double DN = 0;           // star discrepancy (an upper bound when not exact)
  double scaled = 0;       // DN sqrt(N)
  double plain_bound = 0;  // the extreme discrepancy is at most 2 DN
  bool exact = true;
};

/**
 * Exact: sort and take max_i max(i/N - u_(i), u_(i) - (i-1)/N).
 * Otherwise an O(N) bucket bound with N buckets.
 */
inline DiscrepancyResult star_discrepancy(std::vector<double> pts, bool exact = true) {
  const std::size_t N = pts.size();
  if (N == 0) throw std::invalid_argument("star_discrepancy: empty sample");
  for (double u : pts)
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("star_discrepancy: points must lie in [0,1)");
  const double dN = static_cast<double>(N);
  double D = 0.0;
  if (exact) {
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < N; ++i) {
      const double nu = dN * pts[i];
      D = std::max({D, (static_cast<double>(i + 1) - nu) / dN, (nu - static_cast<double>(i)) / dN});
    }
  } else {
    std::vector<std::size_t> cnt(N + 1, 0);
    for (double u : pts) ++cnt[std::min(N - 1, static_cast<std::size_t>(u * dN)) + 1];
    for (std::size_t k = 1; k <= N; ++k) cnt[k] += cnt[k - 1];  // cnt[k] = #points below k/N
    for (std::size_t k = 0; k < N; ++k) {
      const double lo = static_cast<double>(k) / dN, hi = static_cast<double>(k + 1) / dN;
      D = std::max({D, std::fabs(static_cast<double>(cnt[k + 1]) / dN - lo), std::fabs(static_cast<double>(cnt[k]) / dN - hi)});
    }
  }
  return {N, D, D * std::sqrt(dN), std::min(1.0, 2.0 * D), exact};
}

/** x'_n = sqrt(2|V|n)/(2 pi) mod 1, n = 1..N. */
inline std::vector<double> sqrt_sequence(std::size_t N) {
  std::vector<double> out;
  out.reserve(N);
  const double a = 2.0 * consts().absV;
  for (std::size_t n = 1; n <= N; ++n) {
    const double x = std::sqrt(a * static_cast<double>(n)) / (2.0 * std::numbers::pi);
    out.push_back(x - std::floor(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transition gap.

struct GapRecord {
  std::size_t N = 0;
  bool local_min = false;  // min |V| over the triple is minimal on [N - w, N + 2 + w]
  std::size_t argmin = 0;  // index of that minimum inside the triple
  double F_plus = 0, F_minus = 0;  // |cos x +- sin x| at x = sqrt(2|V|(N+1))
  double threshold = 0;            // e^{-kappa sqrt(N+1)}
};

inline GapRecord transition_gap_check_at(const IntSeries& c, std::size_t N, std::size_t window = 20) {
  if (N + 2 > c.order()) throw std::invalid_argument("transition_gap_check: triple beyond the series");
  GapRecord g;
  g.N = N;
  g.argmin = N;
  for (std::size_t k = N + 1; k <= N + 2; ++k)
    if (mpz_cmpabs(c[k].get_mpz_t(), c[g.argmin].get_mpz_t()) < 0) g.argmin = k;
  const std::size_t lo = N > window ? N - window : 0;
  const std::size_t hi = std::min(c.order(), N + 2 + window);
  g.local_min = true;
  for (std::size_t k = lo; k <= hi; ++k)
    if (mpz_cmpabs(c[k].get_mpz_t(), c[g.argmin].get_mpz_t()) < 0) g.local_min = false;
  const double x = std::sqrt(2.0 * consts().absV * static_cast<double>(N + 1));
  g.F_plus = std::fabs(std::cos(x) + std::sin(x));
  g.F_minus = std::fabs(std::cos(x) - std::sin(x));
  g.threshold = std::exp(-consts().kappa * std::sqrt(static_cast<double>(N + 1)));
  return g;
}

/** Gap record for the j-th indexed transition. */
inline GapRecord transition_gap_check(const IntSeries& c, long j, std::size_t window = 20) {
  for (const auto& t : detect_triples(c))
    if (t.j && *t.j == j) return transition_gap_check_at(c, t.Nj_detected, window);
  throw std::invalid_argument("transition_gap_check: transition j not found in range");
}

// ---------------------------------------------------------------------------
// CSV emitters.

inline void write_sections_csv(std::ostream& os, const std::vector<SignSection>& s) {
  csv::Writer w(os, {"start", "end", "pattern", "degenerate"});
  for (const auto& x : s) w.row(x.start, x.end, x.pattern, x.degenerate);
}

inline void write_transitions_csv(std::ostream& os, const std::vector<TransitionReport>& t) {
  csv::Writer w(os, {"j", "N_detected", "theta_floor", "offset", "offset_last"});
  auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& x : t) w.row(opt(x.j), x.Nj_detected, opt(x.theta_floor), opt(x.offset), opt(x.offset_last));
}

inline void write_discrepancy_csv(std::ostream& os, const std::vector<DiscrepancyResult>& d) {
  csv::Writer w(os, {"N", "DN", "scaled", "plain_bound"});
  for (const auto& x : d) w.row(x.N, x.DN, x.scaled, x.plain_bound);
}

}  // namespace nahm
