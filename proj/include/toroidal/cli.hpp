#pragma once

// Command-line harness. run() takes the arguments after the program name
// and returns the exit code: 0 pass, 1 check failure, 2 usage or I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toroidal/verify.hpp"

namespace toroidal::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int grid_schema_version = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Defaults, then a JSON config file, then flags.
struct RunConfig {
  double eta0 = 1.0;
  unsigned seed = 2024;
  unsigned threads = 1;
  std::map<std::string, double> tolerances;
  std::map<std::string, int> depths{{"expansion", 40}, {"n_max", 3}, {"m_max", 2}, {"w_max", 4}};
  std::map<std::string, int> grid{{"n_eta", 4}, {"n_theta", 4}, {"n_phi", 4}};
  std::optional<double> margin;  // 0.3 eta0 when unset
  std::string output;
  std::string format = "csv";

  double grid_margin() const { return margin.value_or(0.3 * eta0); }
};

namespace detail {

using ToleranceField = double verify::Config::*;

inline const std::map<std::string, ToleranceField>& tolerance_fields() {
  static const std::map<std::string, ToleranceField> fields{
      {"legendre_recurrence", &verify::Config::legendre_recurrence},
      {"legendre_oracle", &verify::Config::legendre_oracle},
      {"laplacian", &verify::Config::laplacian},
      {"derivative_relative", &verify::Config::derivative_relative},
      {"appell_numeric", &verify::Config::appell_numeric},
      {"expansion_sup", &verify::Config::expansion_sup},
      {"fourier", &verify::Config::fourier},
      {"teodorescu_relative", &verify::Config::teodorescu_relative},
      {"psi_closed_form", &verify::Config::psi_closed_form},
      {"psi_monogenic", &verify::Config::psi_monogenic},
      {"coh_constant", &verify::Config::coh_constant},
      {"coh_exact", &verify::Config::coh_exact},
      {"coh_radius", &verify::Config::coh_radius},
      {"round_trip", &verify::Config::round_trip},
      {"plateau", &verify::Config::plateau},
      {"joined", &verify::Config::joined},
      {"volume", &verify::Config::volume}};
  return fields;
}

}  // namespace detail

inline void validate(const RunConfig& c) {
  if (!(c.eta0 > 0)) throw UsageError("eta0 must be positive");
  for (const auto& [name, value] : c.tolerances) {
    if (!detail::tolerance_fields().contains(name)) throw UsageError("unknown tolerance " + name);
    if (!(value > 0)) throw UsageError("tolerance " + name + " must be positive");
  }
  for (const auto& [name, value] : c.grid) {
    if (value < 1) throw UsageError("grid size " + name + " must be positive");
  }
  if (c.margin && !(*c.margin > 0)) throw UsageError("grid margin must be positive");
  if (c.format != "csv" && c.format != "json") throw UsageError("format must be csv or json");
}

// Keys: eta0, seed, threads, tolerances{}, depths{}, grid{n_eta, n_theta,
// n_phi, margin}, output, format. Unknown keys are rejected.
inline void apply_config_file(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "eta0") {
      c.eta0 = value.get<double>();
    } else if (key == "seed") {
      c.seed = value.get<unsigned>();
    } else if (key == "threads") {
      c.threads = value.get<unsigned>();
    } else if (key == "tolerances") {
      for (const auto& [name, v] : value.items()) c.tolerances[name] = v.get<double>();
    } else if (key == "depths") {
      for (const auto& [name, v] : value.items()) c.depths[name] = v.get<int>();
    } else if (key == "grid") {
      for (const auto& [name, v] : value.items()) {
        if (name == "margin") {
          c.margin = v.get<double>();
        } else {
          c.grid[name] = v.get<int>();
        }
      }
    } else if (key == "output") {
      c.output = value.get<std::string>();
    } else if (key == "format") {
      c.format = value.get<std::string>();
    } else {
      throw UsageError("unknown config key " + key);
    }
  }
}

inline verify::Config verify_config(const RunConfig& c) {
  verify::Config out;
  out.eta0 = c.eta0;
  out.seed = c.seed;
  out.threads = c.threads;
  out.expansion_depth = c.depths.at("expansion");
  for (const auto& [name, value] : c.tolerances) out.*detail::tolerance_fields().at(name) = value;
  return out;
}

// ---- Function specs ------------------------------------------------------

// "I 2 1 + -", "Istar 2 1 + -", "J -1 -", "W 0 +", "T 2 0 + +", "T0 1 +".
struct FunctionSpec {
  std::string kind;
  int n = 0;
  int m = 0;
  Sign nu = Sign::plus;
  Sign mu = Sign::plus;

  bool scalar() const { return kind == "I" || kind == "Istar" || kind == "J"; }
  std::string str() const {
    if (kind == "J" || kind == "W") return kind + " " + std::to_string(m) + " " + sign_symbol(mu);
    if (kind == "T0") return kind + " " + std::to_string(m) + " " + sign_symbol(mu);
    return kind + " " + std::to_string(n) + " " + std::to_string(m) + " " + sign_symbol(nu) + " " + sign_symbol(mu);
  }
};

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: " + s);
  }
  if (used != s.size()) throw UsageError("not an integer: " + s);
  return v;
}

inline Sign parse_sign_arg(const std::string& s) {
  try {
    return parse_sign(s);
  } catch (const std::exception&) {
    throw UsageError("not a sign: " + s);
  }
}

inline FunctionSpec parse_function(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw UsageError("missing function kind");
  FunctionSpec f;
  f.kind = tokens[0];
  const std::size_t args = tokens.size() - 1;
  auto need = [&](std::size_t count, const char* shape) {
    if (args != count) throw UsageError(f.kind + " takes " + shape);
  };
  if (f.kind == "I" || f.kind == "Istar" || f.kind == "T") {
    need(4, "n m nu mu");
    f.n = parse_int(tokens[1]);
    f.m = parse_int(tokens[2]);
    f.nu = parse_sign_arg(tokens[3]);
    f.mu = parse_sign_arg(tokens[4]);
    const bool valid = f.kind == "T" ? is_valid_T(f.n, f.m, f.nu, f.mu) : HarmonicIndex::is_valid(f.n, f.m, f.nu, f.mu);
    if (!valid) throw UsageError("no such function: " + f.str());
  } else if (f.kind == "J" || f.kind == "W") {
    need(2, "m sign");
    f.m = parse_int(tokens[1]);
    f.mu = parse_sign_arg(tokens[2]);
  } else if (f.kind == "T0") {
    need(2, "m mu");
    f.m = parse_int(tokens[1]);
    f.mu = parse_sign_arg(tokens[2]);
    if (!HarmonicIndex::is_valid(0, f.m, Sign::plus, f.mu)) throw UsageError("no such function: " + f.str());
  } else {
    throw UsageError("unknown kind " + f.kind + " (expected I, Istar, J, W, T or T0)");
  }
  return f;
}

struct Evaluation {
  std::vector<double> components;
  std::string path;  // analytic, quadrature or closed form
};

// Prepared once per function; evaluated at many points.
class FunctionEvaluator {
 public:
  FunctionEvaluator(FunctionSpec spec, const TorusDomain<double>& domain) : spec_(std::move(spec)) {
    if (spec_.kind == "I") {
      forms_[0] = LinearForm<double>(HarmonicCombination{{index(), Rational(1)}});
    } else if (spec_.kind == "Istar") {
      forms_[0] = LinearForm<double>(star_combination(index(), star_matrix(spec_.m, spec_.n)));
    } else if (spec_.kind == "T") {
      const ExactMonogenic T = exact_T(spec_.n, spec_.m, spec_.nu, spec_.mu);
      for (int i = 0; i < 3; ++i) forms_[i] = LinearForm<double>(T.parts()[i]);
    } else if (spec_.kind == "T0") {
      t0_.emplace(spec_.m, spec_.mu, domain);
    }
    for (const auto& f : forms_) {
      n_max_ = std::max(n_max_, f.n_max);
      m_max_ = std::max(m_max_, f.m_max);
    }
  }

  const FunctionSpec& spec() const { return spec_; }

  // p, when given, must be the toroidal image of x; harmonic kinds then
  // skip the coordinate conversion.
  Evaluation operator()(const CartesianPoint<double>& x, const std::optional<ToroidalPoint<double>>& p = {}) const {
    Evaluation out;
    if (spec_.kind == "J") {
      out.components = {eval_J(spec_.m, spec_.mu, x)};
      out.path = "closed form";
    } else if (spec_.kind == "W") {
      const auto w = eval_W(spec_.m, spec_.mu, x);
      out.components = {w.a0, w.a1, w.a2};
      out.path = "closed form";
    } else if (spec_.kind == "T0") {
      const auto v = (*t0_)(x);
      out.components = {v.a0, v.a1, v.a2};
      out.path = "quadrature";
    } else {
      const HarmonicEvaluator<double> ev(p ? *p : to_toroidal(x), n_max_, m_max_);
      out.path = ev.table().used_fallback() ? "quadrature" : "analytic";
      if (spec_.kind == "T") {
        out.components = {ev(forms_[0]), ev(forms_[1]), ev(forms_[2])};
      } else {
        out.components = {ev(forms_[0])};
      }
    }
    for (double& v : out.components) v += 0.0;  // no negative zeros in output
    return out;
  }

 private:
  HarmonicIndex index() const { return HarmonicIndex(spec_.n, spec_.m, spec_.nu, spec_.mu); }

  FunctionSpec spec_;
  std::array<LinearForm<double>, 3> forms_;
  std::optional<T0<double>> t0_;
  int n_max_ = 0;
  int m_max_ = 0;
};

inline std::string format_value(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

// ---- Golden regression file ----------------------------------------------

// Regression points for T, with values from central differences of the
// starred harmonic it is built from (fourth-order stencil, long double,
// h = 1e-3).
inline nlohmann::json golden_oracle() {
  using LD = long double;
  const std::vector<FunctionSpec> functions{{"T", 1, 0, Sign::minus, Sign::plus},
                                            {"T", 2, 0, Sign::plus, Sign::plus},
                                            {"T", 3, 2, Sign::minus, Sign::minus}};
  const std::vector<ToroidalPoint<double>> points{{1.7, 0.4, -1.1}, {2.3, -2.0, 0.6}, {1.4, 3.0, 2.5}};
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& f : functions) {
    const HarmonicIndex base(f.n - 1, f.m, flip(f.nu), f.mu);
    const LinearForm<LD> form(star_combination(base, star_matrix(f.m, f.n - 1)));
    auto value = [&](const CartesianPoint<LD>& y) { return HarmonicEvaluator<LD>(y, form.n_max, form.m_max)(form); };
    for (const auto& p : points) {
      const CartesianPoint<double> xd = to_cartesian(p);
      const CartesianPoint<LD> x{xd.x0, xd.x1, xd.x2};
      const LD h = 1e-3L;
      std::array<LD, 3> grad;
      for (int axis = 0; axis < 3; ++axis) {
        auto at = [&](LD t) { return value(verify::detail::shift(x, axis, t)); };
        grad[axis] = (8 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
      }
      // d = d0 - e1 d1 - e2 d2.
      const std::vector<double> components{static_cast<double>(grad[0]), static_cast<double>(-grad[1]),
                                           static_cast<double>(-grad[2])};
      entries.push_back({{"function", f.str()}, {"x", {xd.x0, xd.x1, xd.x2}}, {"components", components}});
    }
  }
  return {{"schema_version", grid_schema_version},
          {"oracle", "fourth-order central differences of the starred harmonic, long double, h = 1e-3"},
          {"tolerance", 1e-9},
          {"entries", entries}};
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// ---- Commands ------------------------------------------------------------

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_eval(const std::vector<std::string>& tokens, const RunConfig& config,
                    const std::optional<ToroidalPoint<double>>& p, const std::optional<CartesianPoint<double>>& x,
                    bool json, Streams io) {
  const FunctionSpec spec = parse_function(tokens);
  if (p.has_value() == x.has_value()) throw UsageError("give either --eta/--theta/--phi or --x");
  if (p && !(p->eta > 0)) throw UsageError("eta must be positive");
  const CartesianPoint<double> point = x ? *x : to_cartesian(*p);
  const FunctionEvaluator evaluator(spec, TorusDomain<double>(config.eta0));
  const Evaluation e = evaluator(point, p);
  if (json) {
    io.out << nlohmann::json{{"function", spec.str()},
                             {"x", {point.x0, point.x1, point.x2}},
                             {"components", e.components},
                             {"path", e.path}}
                  .dump(2)
           << "\n";
  } else {
    for (std::size_t i = 0; i < e.components.size(); ++i) io.out << (i ? " " : "") << format_value(e.components[i]);
    io.out << "\npath: " << e.path << "\n";
  }
  return exit_pass;
}

inline int cmd_coeffs(int m, int n_max, bool json, Streams io) {
  if (m < 0 || n_max < 0) throw UsageError("coeffs needs m >= 0 and n-max >= 0");
  const StarMatrix s = star_matrix(m, n_max);
  const InverseStarMatrix inv = inverse_matrix(s);
  auto rows = [n_max](const TriangularMatrix& t) {
    std::vector<std::vector<std::string>> out;
    for (int n = 0; n <= n_max; ++n) {
      std::vector<std::string> row;
      for (int k = 0; k <= n; ++k) row.push_back(to_fraction_string(t(n, k)));
      out.push_back(row);
    }
    return out;
  };
  // kappa(k, n, m) for k = n-1, n, n+1 (k >= 0).
  std::vector<std::pair<int, std::vector<std::string>>> kappa_rows;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<std::string> row;
    for (int k = std::max(n - 1, 0); k <= n + 1; ++k) row.push_back(to_fraction_string(kappa(k, n, m)));
    kappa_rows.emplace_back(n, row);
  }
  if (json) {
    nlohmann::json kj = nlohmann::json::array();
    for (const auto& [n, row] : kappa_rows) kj.push_back({{"n", n}, {"k_first", std::max(n - 1, 0)}, {"values", row}});
    io.out << nlohmann::json{{"m", m}, {"n_max", n_max}, {"i_star", rows(s)}, {"i", rows(inv)}, {"kappa", kj}}.dump(2)
           << "\n";
    return exit_pass;
  }
  auto print = [&](const char* title, const std::vector<std::vector<std::string>>& r) {
    io.out << title << " m=" << m << "\n";
    for (std::size_t n = 0; n < r.size(); ++n) {
      io.out << "  n=" << n << ":";
      for (std::size_t k = 0; k < r[n].size(); ++k) io.out << (k ? ", " : " ") << r[n][k];
      io.out << "\n";
    }
  };
  print("i*", rows(s));
  print("i", rows(inv));
  io.out << "kappa m=" << m << " (k = n-1, n, n+1)\n";
  for (const auto& [n, row] : kappa_rows) {
    io.out << "  n=" << n << ":";
    for (std::size_t k = 0; k < row.size(); ++k) io.out << (k ? ", " : " ") << row[k];
    io.out << "\n";
  }
  return exit_pass;
}

inline int cmd_verify(std::vector<std::string> suites, const RunConfig& config, bool json, Streams io) {
  if (suites.empty()) suites = verify::suite_names();
  for (const auto& s : suites) {
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) throw UsageError("unknown suite " + s);
  }
  const auto results = verify::run(suites, verify_config(config));
  bool all = true;
  for (const auto& c : results) all = all && c.pass();
  if (json) {
    io.out << nlohmann::json{{"schema_version", grid_schema_version}, {"pass", all}, {"criteria", verify::to_json(results)}}
                  .dump(2)
           << "\n";
  } else {
    for (const auto& c : results) {
      io.out << "[" << c.suite << "] " << c.title << ": " << verify::status(c.pass()) << "\n";
      if (!c.error.empty()) io.out << "  error: " << c.error << "\n";
      for (const auto& check : c.checks) io.out << "  " << verify::describe(check) << "\n";
    }
    io.out << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  if (!all) {
    for (const auto& c : results) {
      for (const auto& check : c.checks) {
        if (!check.pass()) io.err << "failed: [" << c.suite << "] " << check.label << "\n";
      }
      if (!c.error.empty()) io.err << "failed: [" << c.suite << "] " << c.title << ": " << c.error << "\n";
    }
  }
  return all ? exit_pass : exit_failure;
}

// Rows in grid order: eta increasing, then theta, then phi.
inline int cmd_grid_export(const std::vector<std::string>& tokens, const RunConfig& config, Streams io) {
  const FunctionSpec spec = parse_function(tokens);
  const TorusDomain<double> domain(config.eta0);
  const auto grid = sample_grid(domain, config.grid.at("n_eta"), config.grid.at("n_theta"), config.grid.at("n_phi"),
                                config.grid_margin());
  const FunctionEvaluator evaluator(spec, domain);
  std::vector<std::string> columns{"x0", "x1", "x2", "eta", "theta", "phi"};
  if (spec.scalar()) {
    columns.push_back("value");
  } else {
    for (const char* c : {"c0", "c1", "c2"}) columns.push_back(c);
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (const auto& node : grid) {
    std::vector<double> row{node.x.x0, node.x.x1, node.x.x2, node.p.eta, node.p.theta, node.p.phi};
    for (double v : evaluator(node.x, node.p).components) row.push_back(v);
    rows.push_back(std::move(row));
  }

  std::ostringstream text;
  if (config.format == "json") {
    text << nlohmann::json{{"schema_version", grid_schema_version},
                           {"function", spec.str()},
                           {"eta0", config.eta0},
                           {"grid",
                            {{"n_eta", config.grid.at("n_eta")},
                             {"n_theta", config.grid.at("n_theta")},
                             {"n_phi", config.grid.at("n_phi")},
                             {"margin", config.grid_margin()}}},
                           {"columns", columns},
                           {"rows", rows}}
                .dump()
         << "\n";
  } else {
    for (std::size_t i = 0; i < columns.size(); ++i) text << (i ? "," : "") << columns[i];
    text << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << format_value(row[i]);
      text << "\n";
    }
  }
  if (config.output.empty() || config.output == "-") {
    io.out << text.str();
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + config.output + " for writing");
    file << text.str();
    file.close();
    if (!file) throw std::ios_base::failure("cannot write " + config.output);
    io.err << "wrote " << rows.size() << " rows to " << config.output << "\n";
  }
  return exit_pass;
}

inline int cmd_project(const std::vector<std::string>& tokens, const RunConfig& config, bool with_one,
                       bool quaternionic, Streams io) {
  const FunctionSpec spec = parse_function(tokens);
  const TorusDomain<double> domain(config.eta0);
  const auto basis = truncated_basis(config.depths.at("n_max"), config.depths.at("m_max"), config.depths.at("w_max"),
                                     with_one, quaternionic);
  const auto grid = sample_grid(domain, config.grid.at("n_eta"), config.grid.at("n_theta"), config.grid.at("n_phi"),
                                config.grid_margin());
  const FunctionEvaluator evaluator(spec, domain);
  auto f = [&](const CartesianPoint<double>& x) {
    const auto c = evaluator(x).components;
    return c.size() == 1 ? Quaternion<double>{c[0], 0, 0, 0} : Quaternion<double>{c[0], c[1], c[2], 0};
  };
  const Projection p = project(f, SampledBasis(ElementEvaluator(basis, domain), grid, std::max(1u, config.threads)));
  SeriesExpansion series = p.series;
  series.metadata["function"] = spec.str();
  io.out << toroidal::to_json(series).dump(2) << "\n";
  io.err << "relative residual " << format_value(p.relative_residual) << ", condition " << format_value(p.condition)
         << "\n";
  return exit_pass;
}

inline int cmd_golden(const std::string& path, bool regenerate, Streams io) {
  if (regenerate) {
    std::ofstream file(path);
    if (!file) throw std::ios_base::failure("cannot open " + path + " for writing");
    file << golden_oracle().dump(2) << "\n";
    if (!file) throw std::ios_base::failure("cannot write " + path);
    io.out << "regenerated " << path << "\n";
    return exit_pass;
  }
  std::ifstream file(path);
  if (!file) throw std::ios_base::failure("cannot read " + path);
  const nlohmann::json golden = nlohmann::json::parse(file);
  if (golden.at("schema_version") != grid_schema_version) throw UsageError("unsupported golden schema version");
  const double tol = golden.at("tolerance").get<double>();
  bool all = true;
  for (const auto& entry : golden.at("entries")) {
    const auto spec = parse_function(split_words(entry.at("function").get<std::string>()));
    const auto xs = entry.at("x").get<std::vector<double>>();
    const auto expected = entry.at("components").get<std::vector<double>>();
    const auto actual = FunctionEvaluator(spec, TorusDomain<double>(1.0))(CartesianPoint<double>{xs[0], xs[1], xs[2]});
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      diff = std::max(diff, std::abs(actual.components.at(i) - expected[i]));
      scale = std::max(scale, std::abs(expected[i]));
    }
    const bool ok = diff <= tol * scale;
    all = all && ok;
    io.out << spec.str() << " at (" << format_value(xs[0]) << ", " << format_value(xs[1]) << ", " << format_value(xs[2])
           << "): difference " << verify::detail::format_number(diff) << " " << verify::status(ok) << "\n";
  }
  return all ? exit_pass : exit_failure;
}

// ---- Entry point ---------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Streams io{out, err};
  CLI::App app{"Toroidal harmonics and monogenic functions"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_path;
  std::optional<double> eta0;
  std::optional<unsigned> seed, threads;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  app.add_option("--eta0", eta0, "torus parameter eta0 > 0");
  app.add_option("--seed", seed, "seed for sampled points");
  app.add_option("--threads", threads, "worker threads");

  auto* eval = app.add_subcommand("eval", "evaluate a function at one point");
  std::vector<std::string> eval_args;
  std::optional<double> eta, theta, phi;
  std::vector<double> cart;
  bool eval_json = false;
  eval->add_option("function", eval_args, "kind and index, e.g. I 2 1 + -")->required();
  eval->add_option("--eta", eta);
  eval->add_option("--theta", theta);
  eval->add_option("--phi", phi);
  eval->add_option("--x", cart, "Cartesian point x0 x1 x2")->expected(3);
  eval->add_flag("--json", eval_json);

  auto* coeffs = app.add_subcommand("coeffs", "exact i*, i and kappa tables");
  int coeff_m = 0, coeff_n = 4;
  bool coeff_json = false;
  coeffs->add_option("--m", coeff_m, "order m")->required();
  coeffs->add_option("--n-max", coeff_n, "largest degree");
  coeffs->add_flag("--json", coeff_json);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  bool verify_json = false;
  verify->add_option("suites", suites, "legendre, derivatives, appell, monogenic, coh, expansions, basis");
  verify->add_flag("--json", verify_json);

  auto* grid = app.add_subcommand("grid-export", "sample a function on the torus grid");
  std::vector<std::string> grid_args;
  std::optional<int> n_eta, n_theta, n_phi;
  std::optional<double> margin;
  std::optional<std::string> output, format;
  grid->add_option("function", grid_args)->required();
  grid->add_option("--n-eta", n_eta);
  grid->add_option("--n-theta", n_theta);
  grid->add_option("--n-phi", n_phi);
  grid->add_option("--margin", margin, "eta margin inside the boundary (default 0.3 eta0)");
  grid->add_option("--format", format, "csv or json");
  grid->add_option("-o,--output", output, "output file (default stdout)");

  auto* proj = app.add_subcommand("project", "least-squares projection onto a truncated basis");
  std::vector<std::string> proj_args;
  bool with_one = false, quaternionic = false;
  std::optional<int> p_n, p_m, p_w;
  proj->add_option("function", proj_args)->required();
  proj->add_option("--n-max", p_n);
  proj->add_option("--m-max", p_m);
  proj->add_option("--w-max", p_w);
  proj->add_option("--n-eta", n_eta);
  proj->add_option("--n-theta", n_theta);
  proj->add_option("--n-phi", n_phi);
  proj->add_flag("--with-one", with_one, "drop the excluded T and add 1");
  proj->add_flag("--quaternionic", quaternionic, "add the e3 copies");

  auto* golden = app.add_subcommand("golden", "check the regression file, or rewrite it with --regenerate");
  std::string golden_path;
  bool regenerate = false;
  golden->add_option("file", golden_path)->required();
  golden->add_flag("--regenerate", regenerate, "overwrite the file with fresh oracle values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw std::ios_base::failure("cannot read config " + config_path);
      apply_config_file(config, nlohmann::json::parse(file));
    }
    if (eta0) config.eta0 = *eta0;
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    if (n_eta) config.grid["n_eta"] = *n_eta;
    if (n_theta) config.grid["n_theta"] = *n_theta;
    if (n_phi) config.grid["n_phi"] = *n_phi;
    if (margin) config.margin = *margin;
    if (output) config.output = *output;
    if (format) config.format = *format;
    if (p_n) config.depths["n_max"] = *p_n;
    if (p_m) config.depths["m_max"] = *p_m;
    if (p_w) config.depths["w_max"] = *p_w;
    validate(config);

    if (*eval) {
      std::optional<ToroidalPoint<double>> p;
      if (eta || theta || phi) {
        if (!(eta && theta && phi)) throw UsageError("--eta, --theta and --phi go together");
        p = ToroidalPoint<double>{*eta, *theta, *phi};
      }
      std::optional<CartesianPoint<double>> x;
      if (!cart.empty()) x = CartesianPoint<double>{cart[0], cart[1], cart[2]};
      return cmd_eval(eval_args, config, p, x, eval_json, io);
    }
    if (*coeffs) return cmd_coeffs(coeff_m, coeff_n, coeff_json, io);
    if (*verify) return cmd_verify(suites, config, verify_json, io);
    if (*grid) return cmd_grid_export(grid_args, config, io);
    if (*proj) return cmd_project(proj_args, config, with_one, quaternionic, io);
    if (*golden) return cmd_golden(golden_path, regenerate, io);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return exit_usage;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DegenerateLocusError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace toroidal::cli
