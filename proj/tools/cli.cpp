#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cesaro/cesaro.hpp"
#include "cesaro/io.hpp"
#include "cesaro/verify.hpp"

namespace cesaro::cli {

namespace {

/// Bad flag value discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const char* what) {
  const std::string t = text;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE ||
      !std::isfinite(v))
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  return v;
}

std::vector<Complex> parse_polynomial(const std::string& text) {
  std::vector<Complex> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      coeffs.emplace_back(parse_real(item, "coefficient"), 0.0);
    } else {
      coeffs.emplace_back(parse_real(item.substr(0, colon), "coefficient"),
                          parse_real(item.substr(colon + 1), "coefficient"));
    }
  }
  if (coeffs.empty() || (!text.empty() && text.back() == ','))
    throw UsageError("polynomial must be a comma-separated list 're[:im],...'");
  return coeffs;
}

void emit(const std::string& payload, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << payload;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void check_format(const std::string& format) {
  if (format != "csv" && format != "json")
    throw UsageError("--format must be csv or json");
}

} // namespace

double parse_alpha(const std::string& text) {
  if (text == "1/2") return 0.5;
  return parse_real(text, "alpha");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Operator norms of generalized Cesaro means on local Dirichlet "
               "spaces"};
  app.name(args.empty() ? "cesaro" : args.front());
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "csv";

  // coeffs
  std::size_t c_n = 0;
  std::string c_alpha;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Print the weights c_k");
  coeffs_cmd->add_option("--n", c_n, "degree")->required();
  coeffs_cmd->add_option("--alpha", c_alpha, "order in [0,1]")->required();
  coeffs_cmd->add_option("--format", format, "csv or json");
  coeffs_cmd->add_option("--out", out_path, "output file");

  // norm
  std::size_t nm_n = 0;
  std::string nm_alpha;
  double nm_tol = 1e-10;
  std::size_t nm_max_iter = 20000;
  auto* norm_cmd = app.add_subcommand("norm", "Operator norm of sigma_n^alpha");
  norm_cmd->add_option("--n", nm_n, "degree")->required();
  norm_cmd->add_option("--alpha", nm_alpha, "order in [0,1]")->required();
  norm_cmd->add_option("--tol", nm_tol, "relative Rayleigh-quotient change");
  norm_cmd->add_option("--max-iter", nm_max_iter, "iteration cap per start");
  norm_cmd->add_option("--out", out_path, "output file");

  // bounds
  std::vector<std::size_t> b_n;
  std::vector<std::string> b_alpha;
  double b_gamma = 0.5;
  auto* bounds_cmd = app.add_subcommand("bounds", "Certified norm brackets");
  bounds_cmd->add_option("--n", b_n, "degrees (n >= 1)")->required();
  bounds_cmd->add_option("--alpha", b_alpha, "orders in [0,1]")->required();
  bounds_cmd->add_option("--gamma", b_gamma,
                         "gamma in (0,1) for the m = [(n-1)/2^gamma] choice");
  bounds_cmd->add_option("--format", format, "csv or json");
  bounds_cmd->add_option("--out", out_path, "output file");

  // dirichlet
  std::string d_poly;
  double d_theta = 0.0;
  std::string d_kernel;
  auto* dir_cmd =
      app.add_subcommand("dirichlet", "Local Dirichlet seminorm of a polynomial");
  dir_cmd->add_option("polynomial", d_poly, "coefficients 're[:im],...'")
      ->required();
  dir_cmd->add_option("--zeta-arg", d_theta, "zeta = exp(i theta)");
  dir_cmd->add_option("--kernel", d_kernel, "n,alpha for the Rayleigh quotient");
  dir_cmd->add_option("--out", out_path, "output file");

  // constants
  std::string k_alpha;
  std::size_t k_terms = 1000000;
  double k_tol = 1e-7;
  auto* const_cmd = app.add_subcommand("constants", "C_alpha three ways");
  const_cmd->add_option("--alpha", k_alpha, "order in (0,1/2)")->required();
  const_cmd->add_option("--terms", k_terms, "series terms");
  const_cmd->add_option("--tol", k_tol, "quadrature tolerance");
  const_cmd->add_option("--out", out_path, "output file");

  // sweep
  std::vector<std::string> s_alpha;
  std::vector<std::size_t> s_n;
  unsigned s_min_exp = 3, s_max_exp = 20;
  double s_tol = 0.0;
  std::size_t s_max_iter = 20000;
  std::size_t s_workers = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Norms over an (n, alpha) grid");
  sweep_cmd->add_option("--alpha", s_alpha, "orders in [0,1]")->required();
  sweep_cmd->add_option("--n", s_n, "explicit increasing n values");
  sweep_cmd->add_option("--min-exp", s_min_exp, "smallest n = 2^min-exp");
  sweep_cmd->add_option("--max-exp", s_max_exp, "largest n = 2^max-exp");
  sweep_cmd->add_option("--tol", s_tol, "fixed solver tolerance");
  sweep_cmd->add_option("--max-iter", s_max_iter, "iteration cap per start");
  sweep_cmd->add_option("--workers", s_workers,
                        "parallel grid points (default CESARO_WORKERS)");
  sweep_cmd->add_option("--format", format, "csv or json");
  sweep_cmd->add_option("--out", out_path, "output file");

  // verify
  std::string v_suite = "all";
  bool v_deep = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the self-checks");
  verify_cmd->add_option("--suite", v_suite, "paper|properties|asymptotics|all")
      ->check(CLI::IsMember({"paper", "properties", "asymptotics", "all"}));
  verify_cmd->add_flag("--deep", v_deep, "asymptotics up to n = 2^20");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("cesaro");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*coeffs_cmd) {
      check_format(format);
      const auto kernel = coefficients(c_n, parse_alpha(c_alpha));
      emit(format == "csv" ? io::coeffs_csv(kernel)
                           : dump(io::coeffs_json(kernel)),
           out_path, out);
    } else if (*norm_cmd) {
      const double alpha = parse_alpha(nm_alpha);
      const auto op = from_kernel(coefficients(nm_n, alpha));
      try {
        const NormResult r = operator_norm(op, nm_tol, nm_max_iter);
        emit(dump(io::norm_json(nm_n, alpha, r, coeff_lower_bound(op))),
             out_path, out);
      } catch (const NormConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        emit(dump(io::norm_json(nm_n, alpha, e.partial(), coeff_lower_bound(op))),
             out_path, out);
        return kFailure;
      }
    } else if (*bounds_cmd) {
      check_format(format);
      std::vector<double> alphas;
      for (const auto& a : b_alpha) alphas.push_back(parse_alpha(a));
      for (std::size_t n : b_n)
        if (n < 1) throw UsageError("bounds: n must be at least 1");
      if (!(b_gamma > 0.0 && b_gamma < 1.0))
        throw UsageError("bounds: --gamma must lie in (0, 1)");
      std::vector<NormBracket> rows;
      for (double a : alphas)
        for (std::size_t n : b_n) rows.push_back(bracket(coefficients(n, a), b_gamma));
      emit(format == "csv" ? io::bounds_csv(rows) : dump(io::bounds_json(rows)),
           out_path, out);
    } else if (*dir_cmd) {
      const Polynomial f(parse_polynomial(d_poly));
      const Complex zeta = std::polar(1.0, d_theta);
      nlohmann::json j{{"zeta_arg", d_theta},
                       {"seminorm", local_dirichlet_seminorm(f, zeta)}};
      if (!d_kernel.empty()) {
        const auto comma = d_kernel.find(',');
        if (comma == std::string::npos)
          throw UsageError("--kernel expects 'n,alpha'");
        const double n_real = parse_real(d_kernel.substr(0, comma), "kernel n");
        if (n_real < 0 || n_real != std::floor(n_real))
          throw UsageError("--kernel n must be a nonnegative integer");
        const auto n = static_cast<std::size_t>(n_real);
        const double alpha = parse_alpha(d_kernel.substr(comma + 1));
        j["n"] = n;
        j["alpha"] = alpha;
        j["rayleigh_quotient"] = rayleigh_quotient(coefficients(n, alpha), f);
      }
      emit(dump(j), out_path, out);
    } else if (*const_cmd) {
      const double alpha = parse_alpha(k_alpha);
      if (!(alpha > 0.0 && alpha < 0.5))
        throw UsageError("constants: alpha must lie in (0, 1/2)");
      const auto series = c_alpha_series(alpha, k_terms);
      const double integral = morris_integral_quadrature(alpha, k_tol);
      const nlohmann::json j{
          {"alpha", alpha},
          {"gamma", c_alpha_gamma(alpha)},
          {"series", series.value},
          {"series_tail_bound", series.tail_bound},
          {"quadrature", std::exp(log_gamma(alpha + 1.0)) * std::sqrt(integral)},
          {"morris_integral", integral}};
      emit(dump(j), out_path, out);
    } else if (*sweep_cmd) {
      check_format(format);
      SweepConfig cfg;
      for (const auto& a : s_alpha) cfg.alphas.push_back(parse_alpha(a));
      if (!s_n.empty()) {
        cfg.n_values = s_n;
      } else {
        if (s_min_exp > s_max_exp || s_max_exp > 24)
          throw UsageError("sweep: need min-exp <= max-exp <= 24");
        cfg.n_values = SweepConfig::geometric(std::max(1u, s_min_exp), s_max_exp);
      }
      if (sweep_cmd->count("--tol") > 0) cfg.tol = s_tol;
      cfg.max_iter = s_max_iter;
      cfg.workers = s_workers;
      validate(cfg);
      const auto records = run_sweep(cfg);
      emit(format == "csv" ? io::sweep_csv(records)
                           : dump(io::sweep_json(records)),
           out_path, out);
    } else if (*verify_cmd) {
      verify::Suite suite = verify::Suite::all;
      if (v_suite == "paper") suite = verify::Suite::paper;
      else if (v_suite == "properties") suite = verify::Suite::properties;
      else if (v_suite == "asymptotics") suite = verify::Suite::asymptotics;
      const auto results = verify::run(suite, {.deep = v_deep});
      bool ok = true;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail
            << "\n";
        ok = ok && r.passed;
      }
      out << (ok ? "all checks passed\n" : "verification FAILED\n");
      return ok ? kOk : kFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return kFailure;
  }
  return kOk;
}

} // namespace cesaro::cli
