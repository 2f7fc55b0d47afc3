// nahm: coefficient generation, constants, comparisons and conjecture scans for v1(q).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "nahm/extended.hpp"
#include "nahm/nahm.hpp"

using namespace nahm;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::size_t nmax = 1000;
  std::size_t nmin = 1;
  std::string series = "v1";
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> out;
  Format format = Format::csv;
  unsigned precision = 15;
  double ray_angle = std::numbers::pi / 4;
  std::int64_t order_m = 4;
  std::int64_t residue_r = 1;
  double hmin = 0.00625, hmax = 0.05;
  std::size_t steps = 4;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  explicit Output(const std::optional<std::filesystem::path>& p) {
    if (p) {
      file_.open(*p, std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open " + p->string() + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntSeries load(const RunConfig& cfg, SeriesTag tag, std::size_t N) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = cached_coefficients(cfg.cache, tag, N);
  std::clog << "coefficients: order " << N << ", " << (r.hit ? "cache hit" : "computed") << " in " << seconds_since(t0)
            << " s\n";
  return std::move(r.series);
}

// coeffs: header n,<series>
int cmd_coeffs(const RunConfig& cfg) {
  if (cfg.series != "v1" && cfg.series != "sigma") throw UsageError("--series must be v1 or sigma");
  const SeriesTag tag = cfg.series == "v1" ? SeriesTag::v1 : SeriesTag::sigma;
  const auto c = load(cfg, tag, cfg.nmax);
  Output out(cfg.out);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    Json j;
    j["series"] = cfg.series;
    j["nmax"] = cfg.nmax;
    Json arr = Json::array();
    for (std::size_t n = 0; n <= c.order(); ++n) arr.push_back(c[n].get_str());
    j["coefficients"] = std::move(arr);
    os << j.dump(1) << '\n';
  } else {
    csv::Writer w(os, {"n", cfg.series == "v1" ? "V1" : "sigma"});
    for (std::size_t n = 0; n <= c.order(); ++n) w.row(n, c[n]);
  }
  return 0;
}

// constants: header name,value
int cmd_constants(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> rows;
  const auto& d = consts();
  const auto m = milnor_details(1e-12);
  auto dbl = [](double x) { return csv::fmt(x); };
  if (cfg.precision > 15) {
    PrecisionScope scope(cfg.precision + 5);
    const auto e = constants<ExtReal>();
    const auto p = static_cast<std::streamsize>(cfg.precision);
    rows = {{"absV", e.absV.str(p)}, {"gamma_plus", e.gamma_plus.str(p)}, {"gamma_minus", e.gamma_minus.str(p)},
            {"kappa", e.kappa.str(p)}};
  } else {
    rows = {{"absV", dbl(d.absV)}, {"gamma_plus", dbl(d.gamma_plus)}, {"gamma_minus", dbl(d.gamma_minus)},
            {"kappa", dbl(d.kappa)}};
  }
  rows.emplace_back("absV_bloch_wigner", dbl(d.absV));
  rows.emplace_back("absV_dirichlet", dbl(m.absV));
  rows.emplace_back("absV_difference", dbl(std::fabs(m.absV - d.absV)));
  rows.emplace_back("milnor_tail_bound", dbl(m.tail_bound));
  Output out(cfg.out);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    Json j;
    for (const auto& [k, v] : rows) j[k] = v;
    os << j.dump(1) << '\n';
  } else {
    csv::Writer w(os, {"name", "value"});
    for (const auto& [k, v] : rows) w.row(k, v);
  }
  return 0;
}

// compare: header n,V1,M,rel_error,sign_match,normalized
int cmd_compare(const RunConfig& cfg) {
  if (cfg.nmin < 1 || cfg.nmin > cfg.nmax) throw UsageError("compare needs 1 <= --n-min <= --nmax");
  const auto c = load(cfg, SeriesTag::v1, cfg.nmax);
  const auto norm = normalized_sequence(c);
  std::size_t agree = 0;
  Output out(cfg.out);
  auto& os = out.stream();
  Json rows = Json::array();
  std::optional<csv::Writer> w;
  if (cfg.format == Format::csv) w.emplace(os, std::vector<std::string>{"n", "V1", "M", "rel_error", "sign_match", "normalized"});
  for (std::size_t n = cfg.nmin; n <= cfg.nmax; ++n) {
    const double M = main_term(n);
    // both sides carry the same factor e^{sqrt(2|V|n)}/sqrt(n)
    const double rel = norm[n] == 0.0 ? std::numeric_limits<double>::infinity() : std::fabs(main_term_normalized(n) / norm[n] - 1.0);
    const bool match = sgn(c[n]) != 0 && (M > 0) == (sgn(c[n]) > 0);
    agree += match;
    if (w)
      w->row(n, c[n], M, rel, match, norm[n]);
    else
      rows.push_back({{"n", n}, {"V1", c[n].get_str()}, {"M", M}, {"rel_error", rel}, {"sign_match", match}, {"normalized", norm[n]}});
  }
  const double rate = static_cast<double>(agree) / static_cast<double>(cfg.nmax - cfg.nmin + 1);
  if (w) {
    os << "# sign_agreement," << csv::fmt(rate) << '\n';
  } else {
    Json j;
    j["rows"] = std::move(rows);
    j["sign_agreement"] = rate;
    os << j.dump(1) << '\n';
  }
  std::clog << "sign agreement on [" << cfg.nmin << ", " << cfg.nmax << "]: " << rate << '\n';
  return 0;
}

// radial, 4 | m: header h,direct_abs,predicted_abs,rel_error,watson_abs (watson for m = 4 only)
// radial, otherwise: header h,direct_re,direct_im,limit_re,limit_im,abs_error
int cmd_radial(const RunConfig& cfg) {
  const std::int64_t m = cfg.order_m, r = cfg.residue_r;
  if (m < 1) throw UsageError("--order-m must be positive");
  if (gcd64(r, m) != 1) throw UsageError("--residue-r must be coprime to --order-m");
  if (!(cfg.hmin > 0 && cfg.hmin <= cfg.hmax) || cfg.steps < 1) throw UsageError("need 0 < --hmin <= --hmax and --steps >= 1");
  const bool theorem = m % 4 == 0;
  if (theorem && std::sin(cfg.ray_angle) == 0.0) throw UsageError("--ray-angle 0 is excluded for orders divisible by 4");
  if (!(std::cos(cfg.ray_angle) > 0.0)) throw UsageError("--ray-angle must satisfy cos(angle) > 0");
  if (!theorem) std::clog << "warning: " << m << " is not divisible by 4; using the finite radial limit\n";
  std::vector<double> hs;
  for (std::size_t k = 0; k < cfg.steps; ++k)
    hs.push_back(cfg.steps == 1 ? cfg.hmax : cfg.hmax * std::pow(cfg.hmin / cfg.hmax, static_cast<double>(k) / static_cast<double>(cfg.steps - 1)));
  const ComplexVal zeta = e_frac(r, m);
  const ComplexVal limit = theorem ? ComplexVal() : v1_root_of_unity(r, m);
  Output out(cfg.out);
  auto& os = out.stream();
  Json rows = Json::array();
  std::optional<csv::Writer> w;
  if (cfg.format == Format::csv)
    w.emplace(os, theorem ? std::vector<std::string>{"h", "direct_abs", "predicted_abs", "rel_error", "watson_abs"}
                          : std::vector<std::string>{"h", "direct_re", "direct_im", "limit_re", "limit_im", "abs_error"});
  for (double h : hs) {
    const ComplexVal z = std::polar(h, cfg.ray_angle);
    const ComplexVal d = v1_eval<double>(zeta * std::exp(-z), 1e-17);
    if (theorem) {
      const ComplexVal p = radial_asymptotic(r, m, z);
      const double rel = std::abs(p - d) / std::abs(d);
      std::optional<double> wat;
      if (m == 4) {
        try {
          wat = std::abs(watson_integral(r, 4, 0, z, {}).value + watson_integral(r, 4, 1, z, {}).value);
        } catch (const std::invalid_argument&) {
          // ray too steep for the default contour
        }
      }
      if (w)
        w->row(h, std::abs(d), std::abs(p), rel, wat ? csv::fmt(*wat) : std::string());
      else
        rows.push_back({{"h", h}, {"direct_abs", std::abs(d)}, {"predicted_abs", std::abs(p)}, {"rel_error", rel},
                        {"watson_abs", wat ? Json(*wat) : Json(nullptr)}});
    } else {
      const double err = std::abs(d - limit);
      if (w)
        w->row(h, d.real(), d.imag(), limit.real(), limit.imag(), err);
      else
        rows.push_back({{"h", h}, {"direct_re", d.real()}, {"direct_im", d.imag()}, {"limit_re", limit.real()},
                        {"limit_im", limit.imag()}, {"abs_error", err}});
    }
  }
  if (!w) os << Json{{"order_m", m}, {"residue_r", r}, {"ray_angle", cfg.ray_angle}, {"rows", rows}}.dump(1) << '\n';
  return 0;
}

struct RateRow {
  std::string metric;
  std::size_t nmin, nmax;
  double value;
};

// verify (csv): sections.csv, transitions.csv, rates.csv (metric,n_min,n_max,value), discrepancy.csv
int cmd_verify(const RunConfig& cfg) {
  if (cfg.nmax < 8) throw UsageError("verify needs --nmax >= 8");
  if (cfg.nmax < 2100) std::clog << "warning: --nmax below 2100 gives a partial transition table\n";
  const auto c = load(cfg, SeriesTag::v1, cfg.nmax);
  const auto sections = sign_sections(c);
  const auto triples = detect_triples(c);
  std::vector<RateRow> rates;
  const std::size_t top = cfg.nmax - 3;
  rates.push_back({"conjecture4_wildcard", 1, std::min<std::size_t>(1000, top), conjecture4_rate(c, 1, std::min<std::size_t>(1000, top))});
  rates.push_back({"conjecture4_strict", 1, std::min<std::size_t>(1000, top),
                   conjecture4_rate(c, 1, std::min<std::size_t>(1000, top), ZeroPolicy::strict)});
  if (top >= 50000) {
    rates.push_back({"conjecture4_wildcard", 10000, 50000, conjecture4_rate(c, 10000, 50000)});
    rates.push_back({"conjecture4_strict", 10000, 50000, conjecture4_rate(c, 10000, 50000, ZeroPolicy::strict)});
  }
  rates.push_back({"growth", 1, cfg.nmax, growth_scan(c)});
  std::vector<DiscrepancyResult> disc;
  for (std::size_t N : {1000u, 10000u, 100000u}) disc.push_back(star_discrepancy(sqrt_sequence(N)));

  if (cfg.format == Format::json) {
    Json j;
    Json js = Json::array(), jt = Json::array(), jr = Json::array(), jd = Json::array();
    for (const auto& s : sections)
      js.push_back({{"start", s.start}, {"end", s.end}, {"pattern", s.pattern}, {"degenerate", s.degenerate}});
    auto opt = [](const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); };
    for (const auto& t : triples)
      jt.push_back({{"j", opt(t.j)}, {"N_detected", t.Nj_detected}, {"theta_floor", opt(t.theta_floor)},
                    {"offset", opt(t.offset)}, {"offset_last", opt(t.offset_last)}});
    for (const auto& r : rates) jr.push_back({{"metric", r.metric}, {"n_min", r.nmin}, {"n_max", r.nmax}, {"value", r.value}});
    for (const auto& d : disc) jd.push_back({{"N", d.N}, {"DN", d.DN}, {"scaled", d.scaled}, {"plain_bound", d.plain_bound}});
    j["sections"] = std::move(js);
    j["transitions"] = std::move(jt);
    j["rates"] = std::move(jr);
    j["discrepancy"] = std::move(jd);
    Output out(cfg.out);
    out.stream() << j.dump(1) << '\n';
    return 0;
  }
  auto write_rates = [&](std::ostream& os) {
    csv::Writer w(os, {"metric", "n_min", "n_max", "value"});
    for (const auto& r : rates) w.row(r.metric, r.nmin, r.nmax, r.value);
  };
  if (cfg.out) {
    std::filesystem::create_directories(*cfg.out);
    auto open = [&](const char* name) {
      std::ofstream f(*cfg.out / name, std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open " + (*cfg.out / name).string() + " for writing");
      return f;
    };
    auto s = open("sections.csv");
    write_sections_csv(s, sections);
    auto t = open("transitions.csv");
    write_transitions_csv(t, triples);
    auto r = open("rates.csv");
    write_rates(r);
    auto d = open("discrepancy.csv");
    write_discrepancy_csv(d, disc);
  } else {
    std::cout << "# sections\n";
    write_sections_csv(std::cout, sections);
    std::cout << "# transitions\n";
    write_transitions_csv(std::cout, triples);
    std::cout << "# rates\n";
    write_rates(std::cout);
    std::cout << "# discrepancy\n";
    write_discrepancy_csv(std::cout, disc);
  }
  return 0;
}

std::string error_line(const std::string& command, const std::string& kind, const std::string& message) {
  return "error: " + Json{{"command", command}, {"type", kind}, {"message", message}}.dump();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Coefficients, asymptotics and conjecture scans for v1(q)"};
  app.require_subcommand(1, 1);
  std::string cache, out, format = "csv";
  if (const char* env = std::getenv("NAHM_CACHE"); env && *env) cache = env;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "Output path (a directory for verify in csv format)");
  };
  auto with_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", cache, "Coefficient cache file (default $NAHM_CACHE)");
  };

  auto* coeffs = app.add_subcommand("coeffs", "Exact coefficients with cache read-through");
  coeffs->add_option("--nmax", cfg.nmax, "Largest index")->required();
  coeffs->add_option("--series", cfg.series, "v1 or sigma");
  common(coeffs);
  with_cache(coeffs);

  auto* constants_cmd = app.add_subcommand("constants", "|V|, gamma+-, kappa and the Milnor cross-check");
  constants_cmd->add_option("--precision", cfg.precision, "Significant digits (above 15 uses MPFR)")->check(CLI::Range(1u, 10000u));
  common(constants_cmd);

  auto* compare = app.add_subcommand("compare", "Main term against exact coefficients");
  compare->add_option("--n-min", cfg.nmin, "Smallest index");
  compare->add_option("--nmax", cfg.nmax, "Largest index");
  common(compare);
  with_cache(compare);

  auto* radial = app.add_subcommand("radial", "Radial asymptotics at q = e(r/m) e^{-z}, z = h e^{i angle}");
  radial->add_option("--ray-angle,--ratio", cfg.ray_angle, "Ray angle in radians");
  radial->add_option("--order-m", cfg.order_m, "Root-of-unity order m");
  radial->add_option("--residue-r", cfg.residue_r, "Residue r, coprime to m");
  radial->add_option("--hmin", cfg.hmin, "Smallest |z|");
  radial->add_option("--hmax", cfg.hmax, "Largest |z|");
  radial->add_option("--steps", cfg.steps, "Geometric steps from hmax to hmin");
  common(radial);

  auto* verify = app.add_subcommand("verify", "Sign sections, transitions, rates and discrepancy");
  std::size_t verify_nmax = 2100;
  verify->add_option("--nmax", verify_nmax, "Largest index (2100 reproduces the transition table)");
  common(verify);
  with_cache(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return 0;
    std::cerr << error_line(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name(), "usage", e.what()) << '\n';
    return 2;
  }
  const auto* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.command == "verify") cfg.nmax = verify_nmax;
  cfg.format = format == "json" ? Format::json : Format::csv;
  if (!cache.empty()) cfg.cache = cache;
  if (!out.empty()) cfg.out = out;

  try {
    if (cfg.command == "coeffs") return cmd_coeffs(cfg);
    if (cfg.command == "constants") return cmd_constants(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "radial") return cmd_radial(cfg);
    return cmd_verify(cfg);
  } catch (const UsageError& e) {
    std::cerr << error_line(cfg.command, "usage", e.what()) << '\n';
    return 2;
  } catch (const CacheError& e) {
    std::cerr << error_line(cfg.command, "cache", e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_line(cfg.command, "runtime", e.what()) << '\n';
    return 1;
  }
}
