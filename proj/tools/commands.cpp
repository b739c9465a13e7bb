#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "protek/asymptotics.hpp"
#include "protek/counting.hpp"
#include "protek/error.hpp"
#include "protek/family.hpp"
#include "protek/oracle.hpp"
#include "protek/real.hpp"

namespace protek::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string family;
  std::string weights;
  std::vector<std::size_t> sizes;
  std::size_t nmax = 10;
  std::optional<int> hmax;
  std::optional<int> h_from;
  std::optional<int> h_to;
  std::optional<unsigned> prec;
  std::string format = "csv";
  std::string out;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const Real& x) { return format_real(x, 17); }

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& os) const {
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
  }

 private:
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

unsigned working_precision(const RunConfig& cfg) {
  if (cfg.prec) return *cfg.prec;
  if (const char* env = std::getenv("PROTEK_PREC"); env && *env) {
    char* end = nullptr;
    const unsigned long bits = std::strtoul(env, &end, 10);
    if (*end != '\0' || bits < 53 || bits > (1u << 20))
      throw Error(ErrorKind::InvalidArgument, std::string("PROTEK_PREC must be an integer in [53, 2^20], got ") + env);
    return static_cast<unsigned>(bits);
  }
  return kDefaultPrecisionBits;
}

WeightFamily selected_family(const RunConfig& cfg) {
  if (cfg.family.empty() == cfg.weights.empty())
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --family or --weights");
  if (!cfg.family.empty()) return make_builtin(cfg.family);
  return make_polynomial(parse_weight_list(cfg.weights));
}

int default_hmax(const FamilyConstants& c, std::size_t n) {
  const int cap = static_cast<int>(n) - 1;
  const Real log_d_n = log(Real(n)) / log(c.d);
  if (c.regime == Regime::Exponential) {
    const int h = static_cast<int>(to_double(ceil(2 * log_d_n))) + 4;
    return std::min(cap, h);
  }
  if (!(log_d_n > 1)) return std::min(cap, 3);
  const int m = static_cast<int>(to_double(ceil(log(log_d_n) / log(Real(c.r)))));
  return std::min(cap, std::max(0, m) + 3);
}

// Largest h for which rho_h - rho is resolvable at the given precision in the
// double-exponential regime: mu^{r^{h+1}} > 2^{-bits/2}.
int doubleexp_h_cap(const FamilyConstants& c, unsigned bits) {
  const Real limit = -Real(bits) / 2 * log(Real(2));
  int h = 1;
  while (pow(Real(c.r), Real(h + 2)) * log(c.mu) > limit) ++h;
  return h;
}

// Writes to --out when given, otherwise to the command's standard output.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + cfg.out + " for writing");
  body(file);
  if (!file) throw Error(ErrorKind::Io, "failed writing " + cfg.out);
}

void emit_json(const RunConfig& cfg, std::ostream& out, const Json& doc) {
  emit(cfg, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

// constants ------------------------------------------------------------------

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  PrecisionGuard guard(working_precision(cfg));
  const WeightFamily f = selected_family(cfg);
  const FamilyConstants c = compute_constants(f);

  std::vector<std::pair<std::string, std::string>> fields = {
      {"family", f.name()},        {"regime", to_string(c.regime)}, {"tau", fmt(c.tau)},
      {"rho", fmt(c.rho)},         {"phi_tau", fmt(c.phi_tau)},     {"phi2_tau", fmt(c.phi2_tau)},
      {"a", fmt(c.a)},             {"tau_error", fmt(c.tau_error)},
  };
  if (c.regime == Regime::Exponential) {
    fields.insert(fields.end(), {{"zeta", fmt(c.zeta)},
                                 {"d", fmt(c.d)},
                                 {"lambda1", fmt(c.lambda1)},
                                 {"lambda1_error", fmt(c.lambda1_error)},
                                 {"lambda2", fmt(c.lambda2)},
                                 {"lambda2_error", fmt(c.lambda2_error)},
                                 {"kappa", fmt(c.kappa)}});
  } else {
    fields.insert(fields.end(), {{"r", std::to_string(c.r)},
                                 {"D", std::to_string(c.D)},
                                 {"w_r", fmt(c.w_r)},
                                 {"lambda1", fmt(c.lambda1)},
                                 {"mu", fmt(c.mu)},
                                 {"mu_error", fmt(c.mu_error)},
                                 {"d", fmt(c.d)},
                                 {"kappa", fmt(c.kappa)}});
  }

  if (cfg.format == "json") {
    Json doc;
    for (const auto& [k, v] : fields) {
      if (k == "family" || k == "regime")
        doc[k] = v;
      else if (k == "r" || k == "D")
        doc[k] = std::stoi(v);
      else
        doc[k] = v;  // high-precision decimal string
    }
    emit_json(cfg, out, doc);
  } else {
    Table t({"field", "value"});
    for (const auto& [k, v] : fields) t.add({k, v});
    emit(cfg, out, [&](std::ostream& os) { t.write_csv(os); });
  }
  return 0;
}

// cdf ------------------------------------------------------------------------

struct CdfReport {
  CdfTable table;
  std::vector<double> asymptotic;
};

std::vector<CdfReport> cdf_reports(const WeightFamily& f, const FamilyConstants& c,
                                   const std::vector<std::size_t>& sizes, std::optional<int> hmax) {
  std::vector<int> limits;
  for (auto n : sizes) {
    require_size_in_period(f, n);
    limits.push_back(hmax ? *hmax : default_hmax(c, n));
  }
  auto tables = cdf_exact_multi(f, sizes, limits);
  std::vector<CdfReport> reports;
  for (auto& t : tables) {
    CdfReport r;
    for (const auto& row : t.rows)
      r.asymptotic.push_back(to_double(cdf_asymptotic(c, static_cast<long>(t.n), row.h)));
    r.table = std::move(t);
    reports.push_back(std::move(r));
  }
  return reports;
}

void write_cdf(const std::vector<CdfReport>& reports, const std::string& format, std::ostream& os) {
  const bool with_n = reports.size() > 1;
  if (format == "json") {
    Json doc = Json::array();
    for (const auto& r : reports) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
        const auto& row = r.table.rows[i];
        rows.push_back({{"h", row.h},
                        {"p_exact", to_string(row.p_exact)},
                        {"p_exact_float", row.p_float},
                        {"p_asymptotic", r.asymptotic[i]},
                        {"abs_diff", std::abs(row.p_float - r.asymptotic[i])}});
      }
      doc.push_back({{"family", r.table.family}, {"n", r.table.n}, {"rows", rows}});
    }
    os << (with_n ? doc : doc.front()).dump(2) << '\n';
    return;
  }
  std::vector<std::string> header = {"h", "p_exact", "p_asymptotic", "abs_diff"};
  if (with_n) header.insert(header.begin(), "n");
  Table t(header);
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
      const auto& row = r.table.rows[i];
      std::vector<std::string> cells = {std::to_string(row.h), format_rational(row.p_exact, 17),
                                        fmt(r.asymptotic[i]), fmt(std::abs(row.p_float - r.asymptotic[i]))};
      if (with_n) cells.insert(cells.begin(), std::to_string(r.table.n));
      t.add(std::move(cells));
    }
  }
  t.write_csv(os);
}

int cmd_cdf(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "cdf needs --n");
  PrecisionGuard guard(working_precision(cfg));
  const WeightFamily f = selected_family(cfg);
  const FamilyConstants c = compute_constants(f);
  const auto reports = cdf_reports(f, c, cfg.sizes, cfg.hmax);
  emit(cfg, out, [&](std::ostream& os) { write_cdf(reports, cfg.format, os); });
  return 0;
}

// expect ---------------------------------------------------------------------

int cmd_expect(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "expect needs --n");
  PrecisionGuard guard(working_precision(cfg));
  const WeightFamily f = selected_family(cfg);
  const FamilyConstants c = compute_constants(f);
  const bool with_asymptotic = c.regime == Regime::Exponential;

  Table t({"n", "e_exact", "e_exact_float", "e_asymptotic", "diff"});
  Json doc = Json::array();
  for (auto n : cfg.sizes) {
    const Rational e = expectation_exact(f, n);
    const double e_float = rational_to_double(e);
    Json item = {{"family", f.name()}, {"n", n}, {"e_exact", to_string(e)}, {"e_exact_float", e_float}};
    std::string asym_cell, diff_cell;
    if (with_asymptotic) {
      const double e_asym = to_double(expectation_asymptotic(c, static_cast<long>(n)));
      item["e_asymptotic"] = e_asym;
      item["diff"] = e_float - e_asym;
      asym_cell = fmt(e_asym);
      diff_cell = fmt(e_float - e_asym);
    } else {
      item["e_asymptotic"] = nullptr;
      item["diff"] = nullptr;
    }
    t.add({std::to_string(n), to_string(e), format_rational(e, 17), asym_cell, diff_cell});
    doc.push_back(std::move(item));
  }
  if (cfg.format == "json")
    emit_json(cfg, out, cfg.sizes.size() > 1 ? doc : doc.front());
  else
    emit(cfg, out, [&](std::ostream& os) { t.write_csv(os); });
  return 0;
}

// oracle ---------------------------------------------------------------------

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WeightFamily f = selected_family(cfg);
  const OracleReport report = oracle_check(f, cfg.nmax);
  const TruncatedSeries y = solve_Y(f, cfg.nmax);

  Table t({"n", "h", "oracle", "series", "y_n", "pass"});
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    t.add({std::to_string(r.n), std::to_string(r.h), to_string(r.oracle), to_string(r.series), to_string(y[r.n]),
           r.pass ? "pass" : "FAIL"});
    rows.push_back({{"n", r.n},
                    {"h", r.h},
                    {"oracle", to_string(r.oracle)},
                    {"series", to_string(r.series)},
                    {"y_n", to_string(y[r.n])},
                    {"pass", r.pass}});
  }
  if (cfg.format == "json")
    emit_json(cfg, out, {{"family", f.name()}, {"nmax", cfg.nmax}, {"pass", report.all_pass()}, {"rows", rows}});
  else
    emit(cfg, out, [&](std::ostream& os) { t.write_csv(os); });

  if (auto bad = report.first_mismatch()) {
    err << "oracle mismatch for " << f.name() << " at n = " << bad->n << ", h = " << bad->h
        << ": oracle " << to_string(bad->oracle) << ", series " << to_string(bad->series) << '\n';
    return 1;
  }
  return 0;
}

// rhoh -----------------------------------------------------------------------

int cmd_rhoh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const unsigned bits = working_precision(cfg);
  PrecisionGuard guard(bits);
  const WeightFamily f = selected_family(cfg);
  const FamilyConstants c = compute_constants(f);
  const bool doubleexp = c.regime == Regime::DoubleExponential;
  const int cap = doubleexp ? doubleexp_h_cap(c, bits) : std::numeric_limits<int>::max();
  const int h_from = cfg.h_from.value_or(2);
  const int h_to = cfg.h_to.value_or(doubleexp ? std::max(cap, 2) : 14);
  if (h_from < 2 || h_to < h_from)
    throw Error(ErrorKind::InvalidArgument, "need 2 <= --h-from <= --h-to");

  Table t({"h", "rho_h", "rho_h_minus_rho", "leading_term", "ratio", "status"});
  Json rows = Json::array();
  bool failed = false;
  for (int h = h_from; h <= h_to; ++h) {
    std::string status = "ok";
    std::optional<RhoHSolution> sol;
    if (h > cap) {
      status = "CapExceeded: rho_h - rho is below 2^-" + std::to_string(bits / 2) + " at h = " + std::to_string(h) +
               "; raise --prec";
    } else {
      try {
        sol = solve_rho_h(f, h, bits);
      } catch (const Error& e) {
        status = e.what();
      }
    }
    if (!sol) {
      failed = true;
      err << "h = " << h << ": " << status << '\n';
      t.add({std::to_string(h), "", "", "", "", status});
      rows.push_back({{"h", h}, {"status", status}});
      continue;
    }
    const Real diff = sol->rho_h - c.rho;
    const Real lead = rho_h_leading_term(c, h);
    const Real ratio = diff / lead;
    t.add({std::to_string(h), fmt(sol->rho_h), fmt(diff), fmt(lead), fmt(ratio), status});
    rows.push_back({{"h", h},
                    {"rho_h", fmt(sol->rho_h)},
                    {"rho_h_minus_rho", fmt(diff)},
                    {"leading_term", fmt(lead)},
                    {"ratio", to_double(ratio)},
                    {"status", status}});
  }
  if (cfg.format == "json")
    emit_json(cfg, out, {{"family", f.name()}, {"precision_bits", bits}, {"rho", fmt(c.rho)}, {"rows", rows}});
  else
    emit(cfg, out, [&](std::ostream& os) { t.write_csv(os); });
  return failed ? 1 : 0;
}

// figure ---------------------------------------------------------------------

int cmd_figure(const RunConfig& cfg, std::ostream& out) {
  PrecisionGuard guard(working_precision(cfg));
  const std::filesystem::path dir = cfg.out.empty() ? "figures" : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());

  struct Panel {
    const char* family;
    std::vector<std::size_t> sizes;
  };
  const std::vector<Panel> panels = {{"plane", {20, 100, 200}},
                                     {"cayley", {20, 100, 200}},
                                     {"pruned-binary", {20, 100, 200}},
                                     {"complete-binary", {25, 105, 205}},
                                     {"riordan", {25, 105, 205}}};
  const std::string ext = cfg.format == "json" ? ".json" : ".csv";
  for (const auto& panel : panels) {
    const WeightFamily f = make_builtin(panel.family);
    const FamilyConstants c = compute_constants(f);
    const auto reports = cdf_reports(f, c, panel.sizes, std::nullopt);
    for (const auto& r : reports) {
      const auto path = dir / (std::string(panel.family) + "_n" + std::to_string(r.table.n) + ext);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
      write_cdf({r}, cfg.format, file);
      if (!file) throw Error(ErrorKind::Io, "failed writing " + path.string());
      out << path.string() << '\n';
    }
  }
  return 0;
}

void add_family_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "builtin family: plane, binary, complete-binary, pruned-binary, cayley, riordan");
  sub->add_option("--weights", cfg.weights, "finite weight list w_0,w_1,... (rationals allowed)");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output file (directory for figure)");
  sub->add_option("--prec", cfg.prec, "working precision in bits (default 256, or PROTEK_PREC)")
      ->check(CLI::Range(53u, 1u << 20));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Maximum protection number of simply generated trees: exact distributions and asymptotics", "protek"};
  app.require_subcommand(1, 1);

  auto* constants = app.add_subcommand("constants", "asymptotic constants of a family");
  add_family_options(constants, cfg);
  add_output_options(constants, cfg);

  auto* cdf = app.add_subcommand("cdf", "exact and asymptotic P(X_n <= h)");
  add_family_options(cdf, cfg);
  add_output_options(cdf, cfg);
  cdf->add_option("--n", cfg.sizes, "tree size(s)")->required()->check(CLI::PositiveNumber);
  cdf->add_option("--hmax", cfg.hmax, "largest h to report")->check(CLI::NonNegativeNumber);

  auto* expect = app.add_subcommand("expect", "exact and asymptotic E[X_n]");
  add_family_options(expect, cfg);
  add_output_options(expect, cfg);
  expect->add_option("--n", cfg.sizes, "tree size(s)")->required()->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "brute-force enumeration check of the counting series");
  add_family_options(oracle, cfg);
  add_output_options(oracle, cfg);
  oracle->add_option("--nmax", cfg.nmax, "largest tree size (at most 12)")->check(CLI::PositiveNumber);

  auto* rhoh = app.add_subcommand("rhoh", "singularities rho_h against their leading-order prediction");
  add_family_options(rhoh, cfg);
  add_output_options(rhoh, cfg);
  rhoh->add_option("--h-from", cfg.h_from, "first h (at least 2)");
  rhoh->add_option("--h-to", cfg.h_to, "last h");

  auto* figure = app.add_subcommand("figure", "write the CDF panels for the builtin families");
  add_output_options(figure, cfg);

  std::vector<std::string> words = {"protek"};
  words.insert(words.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& w : words) argv.push_back(w.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*constants) return cmd_constants(cfg, out);
    if (*cdf) return cmd_cdf(cfg, out);
    if (*expect) return cmd_expect(cfg, out);
    if (*oracle) return cmd_oracle(cfg, out, err);
    if (*rhoh) return cmd_rhoh(cfg, out, err);
    if (*figure) return cmd_figure(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace protek::cli
