#pragma once

// Command-line front end. Everything lives behind run() so the tests can
// drive it with argument vectors and string streams.
//
//   energies --dim N --z Z --n-max K [--format csv|json]
//   radial   --kind bound|sturmian --dim N [--z Z] --l L (--n n | --q q --nr k) ...
//   verify   <check> [scope flags] [--tol t] [--format csv|json]
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coulomb_momentum/coulomb_momentum.hpp"

namespace coulomb_momentum::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

/// Flags that do not fit together; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest text with 17 significant digits, '.' separator, no locale.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

enum class Format { csv, json };

/// Rows of named columns, emitted as CSV or as JSON objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;
};

inline std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "nan";
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_cell(row.at(t.columns[i]));
    out << '\n';
  }
}

inline nlohmann::json real_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

inline nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) params[k] = real_or_null(v);
  nlohmann::json j = {{"check_name", r.check_name}, {"parameters", params},    {"metric", real_or_null(r.metric)},
                      {"tolerance", r.tolerance},   {"passed", r.passed},      {"runtime_ms", r.runtime_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string parameters_text(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + '=' + format_real(v);
  }
  return s;
}

inline Table report_table(const std::vector<VerificationReport>& reports) {
  Table t{{"check", "parameters", "metric", "tolerance", "passed", "runtime_ms", "note"}, {}};
  for (const auto& r : reports) {
    t.rows.push_back({{"check", r.check_name},
                      {"parameters", parameters_text(r.parameters)},
                      {"metric", std::isfinite(r.metric) ? nlohmann::json(r.metric) : nlohmann::json(nullptr)},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"runtime_ms", r.runtime_ms},
                      {"note", r.note}});
  }
  return t;
}

inline void emit_rows(const std::string& command, const nlohmann::json& parameters, const Table& t, Format f,
                      std::ostream& out) {
  if (f == Format::csv) {
    write_csv(t, out);
    return;
  }
  nlohmann::json doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"parameters", parameters}};
  doc["rows"] = t.rows;
  out << doc.dump(2) << '\n';
}

inline void emit_reports(const std::string& command, const nlohmann::json& parameters,
                         const std::vector<VerificationReport>& reports, Format f, std::ostream& out) {
  if (f == Format::csv) {
    write_csv(report_table(reports), out);
    return;
  }
  nlohmann::json doc = {{"schema_version", kSchemaVersion},
                        {"command", command},
                        {"parameters", parameters},
                        {"defaults_version", verification::DefaultTolerances::version}};
  doc["reports"] = nlohmann::json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_to_json(r));
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// energies

struct EnergiesOptions {
  int dim = 3;
  double z = 1.0;
  int n_max = 1;
};

inline Table energies_table(const EnergiesOptions& o) {
  if (o.dim < 2) throw UsageError("--dim must be >= 2");
  if (!(o.z > 0.0)) throw UsageError("--z must be positive");
  if (o.n_max < 1 || o.n_max > 1000) throw UsageError("--n-max must lie in [1, 1000]");
  Table t{{"n", "energy", "q_n", "degeneracy"}, {}};
  for (int n = 1; n <= o.n_max; ++n) {
    t.rows.push_back({{"n", n},
                      {"energy", spectrum::bound_energy(o.dim, o.z, n)},
                      {"q_n", spectrum::bound_momentum_scale(o.dim, o.z, n)},
                      {"degeneracy", spectrum::level_degeneracy(o.dim, n)}});
  }
  return t;
}

// ---------------------------------------------------------------------------
// radial

struct RadialOptions {
  std::string kind = "bound";
  int dim = 3;
  double z = 1.0;
  std::optional<int> n;
  int l = 0;
  std::optional<double> q;
  std::optional<int> nr;
  double p_min = 0.01;
  double p_max = 10.0;
  int points = 50;
  std::string spacing = "linear";
};

inline Table radial_table(const RadialOptions& o) {
  if (o.dim < 2) throw UsageError("--dim must be >= 2");
  if (!(o.z > 0.0)) throw UsageError("--z must be positive");
  if (o.l < 0) throw UsageError("--l must be nonnegative");
  if (!(o.p_min >= 0.0) || !(o.p_max > o.p_min)) throw UsageError("need 0 <= --p-min < --p-max");
  if (o.points < 2 || o.points > 100000) throw UsageError("--points must lie in [2, 100000]");
  if (o.spacing == "log" && !(o.p_min > 0.0)) throw UsageError("log spacing needs --p-min > 0");

  std::function<double(double)> f;
  if (o.kind == "bound") {
    if (!o.n) throw UsageError("kind bound needs --n");
    if (o.q || o.nr) throw UsageError("kind bound takes --n, not --q/--nr");
    if (*o.n < 1 || o.l >= *o.n) throw UsageError("need n >= 1 and l < n");
    const spectrum::QuantumNumbers qn(o.dim, *o.n, o.l);
    const radial::RadialFunction F(radial::RadialKind::bound, spectrum::bound_context(o.dim, o.z, *o.n), qn);
    f = F;
  } else {
    if (!o.q || !o.nr) throw UsageError("kind sturmian needs --q and --nr");
    if (o.n) throw UsageError("kind sturmian takes --nr, not --n");
    if (!(*o.q > 0.0) || *o.nr < 0) throw UsageError("need --q > 0 and --nr >= 0");
    const auto qn = spectrum::QuantumNumbers::from_radial(o.dim, *o.nr, o.l);
    const radial::RadialFunction F(radial::RadialKind::sturmian, spectrum::CoulombContext::from_momentum(o.z, *o.q), qn);
    f = F;
  }
  Table t{{"p", "value"}, {}};
  for (int i = 0; i < o.points; ++i) {
    const double s = static_cast<double>(i) / (o.points - 1);
    double p = o.spacing == "log" ? o.p_min * std::pow(o.p_max / o.p_min, s) : o.p_min + s * (o.p_max - o.p_min);
    if (i == o.points - 1) p = o.p_max;
    t.rows.push_back({{"p", p}, {"value", f(p)}});
  }
  return t;
}

// ---------------------------------------------------------------------------
// verify

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"residual", "gram",    "ossicini",   "cohl",   "closure",
                                                 "fourier",  "nystrom", "degeneracy", "specfun"};
  return names;
}

struct VerifyOptions {
  std::string check;
  std::optional<int> dim, dim_max, n, n_max, l, nr, nr_max, grid, K;
  std::optional<double> q, z, tol, nu, h, xi, xi_prime, alpha, z_arg;
};

namespace detail {

using verification::DefaultTolerances;

template <class T>
std::vector<T> one_or(const std::optional<T>& v, std::vector<T> fallback) {
  return v ? std::vector<T>{*v} : fallback;
}

inline double tol_or(const VerifyOptions& o, double fallback) { return o.tol.value_or(fallback); }

/// Runs the jobs concurrently; the output order is the job order.
inline std::vector<VerificationReport> run_jobs(const std::vector<std::function<VerificationReport()>>& jobs) {
  return parallel::map_indexed(jobs.size(), [&](std::size_t i) { return jobs[i](); });
}

inline std::vector<VerificationReport> residual_sweep(const VerifyOptions& o) {
  using spectrum::CoulombContext;
  using spectrum::QuantumNumbers;
  const double z = o.z.value_or(1.0);
  if (!(z > 0.0)) throw UsageError("--z must be positive");
  const double tol = tol_or(o, DefaultTolerances::residual);
  std::vector<std::function<VerificationReport()>> jobs;
  for (int dim : one_or(o.dim, {2, 3, 4, 5})) {
    if (dim < 2) throw UsageError("--dim must be >= 2");
    for (int l : one_or(o.l, {0, 1, 2})) {
      if (l < 0) throw UsageError("--l must be nonnegative");
      if (o.n) {
        if (o.nr) throw UsageError("give either --n or --nr");
        if (*o.n < 1 || l >= *o.n) throw UsageError("need n >= 1 and l < n");
        const QuantumNumbers qn(dim, *o.n, l);
        const double q = o.q.value_or(spectrum::bound_momentum_scale(dim, z, *o.n));
        if (!(q > 0.0)) throw UsageError("--q must be positive");
        const auto ctx = CoulombContext::from_momentum(z, q);
        jobs.push_back([=] { return verification::residual_check(ctx, qn, verification::default_grid(q), tol); });
        continue;
      }
      for (int nr : one_or(o.nr, {0, 1, 2, 3})) {
        if (nr < 0) throw UsageError("--nr must be nonnegative");
        for (double q : one_or(o.q, {0.3, 1.0, 2.7})) {
          if (!(q > 0.0)) throw UsageError("--q must be positive");
          const auto qn = QuantumNumbers::from_radial(dim, nr, l);
          const auto ctx = CoulombContext::from_momentum(z, q);
          jobs.push_back([=] { return verification::residual_check(ctx, qn, verification::default_grid(q), tol); });
        }
      }
    }
  }
  return run_jobs(jobs);
}

inline std::vector<VerificationReport> gram_sweep(const VerifyOptions& o) {
  const double z = o.z.value_or(1.0);
  if (!(z > 0.0)) throw UsageError("--z must be positive");
  const int nr_max = o.nr_max.value_or(8);
  if (nr_max < 0 || nr_max > 16) throw UsageError("--nr-max must lie in [0, 16]");
  const int n_max = o.n_max.value_or(4);
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  std::vector<std::function<VerificationReport()>> jobs;
  for (int dim : one_or(o.dim, {2, 3, 4, 5})) {
    if (dim < 2) throw UsageError("--dim must be >= 2");
    for (int l : one_or(o.l, {0, 1, 2})) {
      if (l < 0) throw UsageError("--l must be nonnegative");
      for (double q : one_or(o.q, {0.3, 1.0, 2.7})) {
        if (!(q > 0.0)) throw UsageError("--q must be positive");
        const auto ctx = spectrum::CoulombContext::from_momentum(z, q);
        const double tg = tol_or(o, DefaultTolerances::gram);
        const double tn = tol_or(o, DefaultTolerances::g_norm);
        jobs.push_back([=] { return verification::gram_check(ctx, dim, l, nr_max, tg); });
        jobs.push_back([=] { return verification::g_norm_check(ctx, dim, l, nr_max, tn); });
      }
    }
    for (int n = 1; n <= n_max; ++n) {
      for (int l = 0; l < n; ++l) {
        const double tb = tol_or(o, DefaultTolerances::bound_norm);
        jobs.push_back([=] { return verification::bound_norm_check(dim, z, n, l, tb); });
      }
    }
  }
  return run_jobs(jobs);
}

inline std::vector<VerificationReport> ossicini_sweep(const VerifyOptions& o) {
  const double tol = tol_or(o, DefaultTolerances::ossicini);
  if (o.nu || o.h || o.xi || o.xi_prime || o.K) {
    const double nu = o.nu.value_or(0.0), h = o.h.value_or(0.5), xi = o.xi.value_or(0.0),
                 xip = o.xi_prime.value_or(0.0);
    const int K = o.K.value_or(60);
    if (!(nu > -1.0) || !(h > 0.0 && h <= 1.0) || !(std::abs(xi) < 1.0) || !(std::abs(xip) < 1.0) || K < 4 ||
        (h == 1.0 && xi == xip)) {
      throw UsageError("ossicini needs nu > -1, h in (0,1], |xi|,|xi'| < 1, K >= 4, and xi != xi' at h = 1");
    }
    return {verification::ossicini_check(nu, h, xi, xip, K, tol)};
  }
  struct Case {
    double nu, h, xi, xip;
    int K;
  };
  const Case cases[] = {{0.0, 0.5, 0.0, 0.0, 60},    {0.5, 0.9, 0.3, -0.2, 400}, {1.0, 0.9, 0.5, -0.5, 400},
                        {2.5, 0.7, -0.6, 0.8, 200},  {-0.5, 0.9, 0.1, 0.2, 400}, {3.0, 0.3, 0.9, 0.95, 60}};
  std::vector<VerificationReport> out;
  for (const auto& c : cases) out.push_back(verification::ossicini_check(c.nu, c.h, c.xi, c.xip, c.K, tol));
  return out;
}

inline std::vector<VerificationReport> cohl_sweep(const VerifyOptions& o) {
  const double tol = tol_or(o, DefaultTolerances::cohl);
  if (o.alpha || o.n || o.z_arg) {
    const double alpha = o.alpha.value_or(0.5), zarg = o.z_arg.value_or(2.0);
    const int n = o.n.value_or(0);
    if (!(alpha > 0.0) || n < 0 || !(zarg > 1.0)) throw UsageError("cohl needs --alpha > 0, --n >= 0, --z-arg > 1");
    return {verification::cohl_check(alpha, n, zarg, tol)};
  }
  std::vector<VerificationReport> out;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 6; ++n) {
      for (double zarg : {1.2, 1.5, 2.0, 5.0}) out.push_back(verification::cohl_check(alpha, n, zarg, tol));
    }
  }
  return out;
}

inline std::vector<VerificationReport> closure_sweep(const VerifyOptions& o) {
  const int dim = o.dim.value_or(3);
  const int l = o.l.value_or(0);
  const double q = o.q.value_or(1.0);
  const double z = o.z.value_or(1.0);
  if (dim < 2 || l < 0 || !(q > 0.0) || !(z > 0.0)) throw UsageError("closure needs --dim >= 2, --l >= 0, --q, --z > 0");
  const auto ctx = spectrum::CoulombContext::from_momentum(z, q);
  const double tol = tol_or(o, DefaultTolerances::closure);
  const std::vector<double> combination = {0.6, 0.0, 0.0, -0.8};
  std::vector<VerificationReport> out;
  out.push_back(verification::closure_coefficient_check(ctx, dim, l, combination, 5, tol));
  radial::RadialFunction F0(radial::RadialKind::sturmian, ctx, spectrum::QuantumNumbers::from_radial(dim, 0, l));
  radial::RadialFunction F3(radial::RadialKind::sturmian, ctx, spectrum::QuantumNumbers::from_radial(dim, 3, l));
  auto finite = [&](double p) { return 0.6 * F0(p) - 0.8 * F3(p); };
  out.push_back(verification::closure_check(ctx, dim, l, 5, finite, verification::default_grid(q), tol));
  auto smooth = [l](double p) { return std::pow(p, l) * std::exp(-p * p); };
  out.push_back(verification::closure_trend_check(ctx, dim, l, {6, 12, 24}, smooth));
  return out;
}

inline std::vector<VerificationReport> fourier_sweep(const VerifyOptions& o) {
  std::vector<VerificationReport> out;
  out.push_back(potential_ft::fourier_check(potential_ft::default_fourier_samples(), tol_or(o, 1e-10)));
  out.push_back(potential_ft::coulomb_anchor_check(tol_or(o, 1e-13)));
  for (double nu : {0.5, 1.0, 2.5, 4.0}) {
    for (double r : {0.3, 1.0, 2.0}) out.push_back(potential_ft::gamma_identity_check(nu, r, tol_or(o, 1e-11)));
  }
  return out;
}

inline std::vector<VerificationReport> nystrom_sweep(const VerifyOptions& o) {
  const int grid = o.grid.value_or(256);
  if (grid < 8 || grid > nystrom::kMaxGridSize || grid % nystrom::kPointsPerPanel != 0) {
    throw UsageError("--grid must be a multiple of 8 in [8, 512]");
  }
  const double tol = tol_or(o, DefaultTolerances::nystrom);
  const double z = o.z.value_or(1.0);
  if (!(z > 0.0)) throw UsageError("--z must be positive");
  struct Case {
    int dim, l;
    double q;
  };
  std::vector<Case> cases;
  if (o.dim || o.l || o.q) {
    cases.push_back({o.dim.value_or(3), o.l.value_or(0), o.q.value_or(1.0)});
  } else {
    cases = {{3, 0, 1.0}, {4, 1, 0.5}};
  }
  std::vector<std::function<VerificationReport()>> jobs;
  for (const auto& c : cases) {
    if (c.dim < 2 || c.l < 0 || !(c.q > 0.0)) throw UsageError("nystrom needs --dim >= 2, --l >= 0, --q > 0");
    const radial::KernelSpec spec(spectrum::CoulombContext::from_momentum(z, c.q), c.l, c.dim);
    jobs.push_back([=] { return verification::nystrom_check(spec, grid, 3, tol); });
  }
  return run_jobs(jobs);
}

inline std::vector<VerificationReport> specfun_sweep(const VerifyOptions& o) {
  const double tol = tol_or(o, DefaultTolerances::specfun);
  std::vector<VerificationReport> out;
  out.push_back(verification::legendre_q_agreement_check(tol));
  for (double alpha : {0.5, 1.0, 1.5, 2.5}) out.push_back(verification::gegenbauer_orthogonality_check(alpha, 12, tol));
  return out;
}

}  // namespace detail

inline std::vector<VerificationReport> run_verify(const VerifyOptions& o) {
  if (o.check == "residual") return detail::residual_sweep(o);
  if (o.check == "gram") return detail::gram_sweep(o);
  if (o.check == "ossicini") return detail::ossicini_sweep(o);
  if (o.check == "cohl") return detail::cohl_sweep(o);
  if (o.check == "closure") return detail::closure_sweep(o);
  if (o.check == "fourier") return detail::fourier_sweep(o);
  if (o.check == "nystrom") return detail::nystrom_sweep(o);
  if (o.check == "degeneracy") {
    const int dim_max = o.dim_max.value_or(10);
    const int n_max = o.n_max.value_or(20);
    if (dim_max < 2 || n_max < 1) throw UsageError("degeneracy needs --dim-max >= 2, --n-max >= 1");
    auto r = verification::degeneracy_check(dim_max, n_max);
    if (o.tol) {
      r.tolerance = *o.tol;
      r.settle();
    }
    return {r};
  }
  if (o.check == "specfun") return detail::specfun_sweep(o);
  throw UsageError("unknown check: " + o.check);
}

inline nlohmann::json verify_parameters(const VerifyOptions& o) {
  nlohmann::json j = {{"check", o.check}};
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("dim", o.dim);
  put("dim_max", o.dim_max);
  put("n", o.n);
  put("n_max", o.n_max);
  put("l", o.l);
  put("nr", o.nr);
  put("nr_max", o.nr_max);
  put("grid", o.grid);
  put("K", o.K);
  put("q", o.q);
  put("z", o.z);
  put("tol", o.tol);
  put("nu", o.nu);
  put("h", o.h);
  put("xi", o.xi);
  put("xi_prime", o.xi_prime);
  put("alpha", o.alpha);
  put("z_arg", o.z_arg);
  return j;
}

// ---------------------------------------------------------------------------

/// Parses args (without the program name) and runs the selected command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Momentum-space Coulomb problem in N dimensions: spectra, radial functions, checks"};
  app.require_subcommand(1);
  std::string format = "csv";
  const std::map<std::string, Format> formats = {{"csv", Format::csv}, {"json", Format::json}};

  EnergiesOptions eo;
  auto* energies = app.add_subcommand("energies", "Bound-state energies, momentum scales and degeneracies");
  energies->add_option("--dim", eo.dim, "Space dimension N >= 2")->required();
  energies->add_option("--z", eo.z, "Potential strength Z")->default_val(1.0);
  energies->add_option("--n-max", eo.n_max, "Largest principal quantum number (<= 1000)")->required();
  energies->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  RadialOptions ro;
  auto* rad = app.add_subcommand("radial", "Tabulate a bound-state or Sturmian radial function");
  rad->add_option("--kind", ro.kind)->check(CLI::IsMember({"bound", "sturmian"}))->default_val("bound");
  rad->add_option("--dim", ro.dim, "Space dimension N >= 2")->required();
  rad->add_option("--z", ro.z)->default_val(1.0);
  rad->add_option("--n", ro.n, "Principal quantum number (bound)");
  rad->add_option("--l", ro.l)->default_val(0);
  rad->add_option("--q", ro.q, "Momentum scale (sturmian)");
  rad->add_option("--nr", ro.nr, "Radial quantum number (sturmian)");
  rad->add_option("--p-min", ro.p_min)->default_val(0.01);
  rad->add_option("--p-max", ro.p_max)->default_val(10.0);
  rad->add_option("--points", ro.points)->default_val(50);
  rad->add_option("--spacing", ro.spacing)->check(CLI::IsMember({"linear", "log"}))->default_val("linear");
  rad->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  VerifyOptions vo;
  auto* ver = app.add_subcommand("verify", "Run a verification check and emit reports");
  ver->set_help_flag("--help", "Print this help message and exit");  // frees -h for the series parameter
  ver->add_option("check", vo.check, "Check name")->required()->check(CLI::IsMember(check_names()));
  ver->add_option("--dim", vo.dim);
  ver->add_option("--dim-max", vo.dim_max);
  ver->add_option("--n", vo.n);
  ver->add_option("--n-max", vo.n_max);
  ver->add_option("--l", vo.l);
  ver->add_option("--nr", vo.nr);
  ver->add_option("--nr-max", vo.nr_max);
  ver->add_option("--q", vo.q);
  ver->add_option("--z", vo.z, "Potential strength Z");
  ver->add_option("--grid", vo.grid, "Nystrom grid size");
  ver->add_option("--K", vo.K, "Series truncation");
  ver->add_option("--nu", vo.nu);
  ver->add_option("--h", vo.h);
  ver->add_option("--xi", vo.xi);
  ver->add_option("--xi-prime", vo.xi_prime);
  ver->add_option("--alpha", vo.alpha);
  ver->add_option("--z-arg", vo.z_arg, "Legendre argument z for the cohl check");
  ver->add_option("--tol", vo.tol, "Override the default tolerance");
  ver->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const Format fmt = formats.at(format);
  try {
    if (energies->parsed()) {
      emit_rows("energies", {{"dim", eo.dim}, {"z", eo.z}, {"n_max", eo.n_max}}, energies_table(eo), fmt, out);
      return kSuccess;
    }
    if (rad->parsed()) {
      nlohmann::json params = {{"kind", ro.kind}, {"dim", ro.dim},   {"z", ro.z},           {"l", ro.l},
                               {"p_min", ro.p_min}, {"p_max", ro.p_max}, {"points", ro.points}, {"spacing", ro.spacing}};
      if (ro.n) params["n"] = *ro.n;
      if (ro.q) params["q"] = *ro.q;
      if (ro.nr) params["nr"] = *ro.nr;
      emit_rows("radial", params, radial_table(ro), fmt, out);
      return kSuccess;
    }
    const auto reports = run_verify(vo);
    emit_reports("verify", verify_parameters(vo), reports, fmt, out);
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.passed ? 1 : 0;
    err << "verify " << vo.check << ": " << passed << "/" << reports.size() << " passed\n";
    return passed == reports.size() ? kSuccess : kCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace coulomb_momentum::cli
