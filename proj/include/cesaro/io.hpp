#pragma once

// CSV / JSON emission. CSV floats carry 17 significant digits so every
// value parses back to the same double.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cesaro/bounds.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/kernel.hpp"
#include "cesaro/sweep.hpp"

namespace cesaro::io {

inline constexpr const char* kSchemaLine = "# schema=1";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON has no NaN; map it to null.
inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

inline std::string coeffs_csv(const CesaroKernel& kernel) {
  std::ostringstream out;
  out << kSchemaLine << '\n' << "k,c_k\n";
  for (std::size_t k = 0; k <= kernel.degree(); ++k)
    out << k << ',' << format_double(kernel[k]) << '\n';
  return out.str();
}

inline nlohmann::json coeffs_json(const CesaroKernel& kernel) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k <= kernel.degree(); ++k)
    rows.push_back({{"k", k}, {"c_k", kernel[k]}});
  return {{"n", kernel.degree()}, {"alpha", kernel.alpha()}, {"coeffs", rows}};
}

inline nlohmann::json norm_json(std::size_t n, double alpha,
                                const NormResult& r, double coeff_lower) {
  return {{"n", n},
          {"alpha", alpha},
          {"norm", r.norm},
          {"norm_sq", r.norm_sq},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"coeff_lower_bound", coeff_lower}};
}

inline constexpr const char* kBoundsHeader =
    "n,alpha,S,upper,best_lower,best_m,closed_upper,closed_lower_at_proof_m";

inline std::string bounds_csv(const std::vector<NormBracket>& rows) {
  std::ostringstream out;
  out << kSchemaLine << '\n' << kBoundsHeader << '\n';
  for (const auto& b : rows)
    out << b.n << ',' << format_double(b.alpha) << ','
        << format_double(b.diff_energy) << ',' << format_double(b.upper) << ','
        << format_double(b.lower) << ',' << b.lower_m << ','
        << format_double(b.closed_upper) << ','
        << format_double(b.closed_lower) << '\n';
  return out.str();
}

inline nlohmann::json bounds_json(const std::vector<NormBracket>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : rows)
    out.push_back({{"n", b.n},
                   {"alpha", b.alpha},
                   {"S", b.diff_energy},
                   {"upper", b.upper},
                   {"best_lower", b.lower},
                   {"best_m", b.lower_m},
                   {"closed_upper", json_number(b.closed_upper)},
                   {"closed_lower_at_proof_m", json_number(b.closed_lower)}});
  return out;
}

inline constexpr const char* kSweepHeader =
    "n,alpha,norm,norm_sq,upper,best_lower,best_m,ratio,regime,iterations,"
    "residual";

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kSchemaLine << '\n' << kSweepHeader << '\n';
  for (const auto& r : records)
    out << r.n << ',' << format_double(r.alpha) << ','
        << format_double(r.norm) << ',' << format_double(r.norm_sq) << ','
        << format_double(r.upper) << ',' << format_double(r.best_lower) << ','
        << r.best_m << ',' << format_double(r.ratio) << ','
        << to_string(r.regime) << ',' << r.iterations << ','
        << format_double(r.residual) << '\n';
  return out.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records)
    out.push_back({{"n", r.n},
                   {"alpha", r.alpha},
                   {"norm", r.norm},
                   {"norm_sq", r.norm_sq},
                   {"upper", r.upper},
                   {"best_lower", r.best_lower},
                   {"best_m", r.best_m},
                   {"ratio", r.ratio},
                   {"regime", std::string(to_string(r.regime))},
                   {"iterations", r.iterations},
                   {"residual", r.residual}});
  return out;
}

} // namespace cesaro::io
