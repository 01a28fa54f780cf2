#include "phi4/serialize.hpp"

#include <fmt/format.h>

#include <cmath>

#include "phi4/dynamics.hpp"
#include "phi4/errors.hpp"

namespace phi4 {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

namespace {

json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json scalar_fields(const ExtScalar& x) {
  json e;
  e["sign"] = x.sign();
  if (x.is_zero()) {
    e["logmag"] = nullptr;
    e["log10_magnitude"] = nullptr;
    e["value"] = 0.0;
    return e;
  }
  e["logmag"] = x.logmag();
  e["log10_magnitude"] = x.logmag() / std::log(10.0);
  e["value"] = real(x.to_double());
  return e;
}

// Linear value or sign/log10 text when outside the double range.
std::string scalar_text(const ExtScalar& x) {
  const double v = x.to_double();
  if (std::isfinite(v) && (v != 0.0 || x.is_zero())) return format_real(v);
  return fmt::format("{}1e{}", x.sign() < 0 ? "-" : "",
                     format_real(x.logmag() / std::log(10.0)));
}

}  // namespace

json sequence_to_json(const GreenSequence& h, const SplittingSequence* delta) {
  json j;
  j["schema"] = kSchemaVersion;
  j["lambda"] = h.lambda();
  j["truncation"] = h.truncation();
  j["closure"] = std::string(to_string(h.closure().policy));
  j["closure_tail"] = scalar_fields(h.closure().tail);
  json entries = json::array();
  for (int n = 1; n <= h.truncation(); n += 2) {
    json e = scalar_fields(h[n]);
    e["n"] = n;
    if (delta) e["delta"] = real((*delta)[n]);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

namespace {

ExtScalar scalar_from(const json& e) {
  const int sign = e.at("sign").get<int>();
  if (sign == 0) return {};
  return ExtScalar::from_log(sign, e.at("logmag").get<double>());
}

}  // namespace

GreenSequence sequence_from_json(const json& j) {
  if (j.value("schema", 0) != kSchemaVersion)
    throw DomainError("unsupported schema version");
  GreenSequence h(Coupling(j.at("lambda").get<double>()),
                  j.at("truncation").get<int>());
  h.set_closure({parse_closure(j.at("closure").get<std::string>()),
                 scalar_from(j.at("closure_tail"))});
  for (const auto& e : j.at("entries")) {
    const int n = e.at("n").get<int>();
    if (n < 1 || n > h.truncation() || n % 2 == 0)
      throw DomainError("entry index out of range");
    h[n] = scalar_from(e);
  }
  return h;
}

json report_to_json(const IterationReport& r) {
  json j;
  j["lambda"] = r.lambda;
  j["truncation"] = r.truncation;
  j["closure"] = std::string(to_string(r.closure));
  j["start"] = std::string(to_string(r.start));
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["final_distance"] = real(r.final_distance);
  j["residual_max"] = real(r.residual_max);
  j["star_defect"] = real(r.star_defect);
  j["excursions"] = r.excursions;
  j["certified_range"] = r.certified;
  j["message"] = r.message;
  json d = json::array();
  for (double x : r.distances) d.push_back(real(x));
  j["distances"] = std::move(d);
  json c = json::array();
  for (double x : r.contraction_ratios) c.push_back(real(x));
  j["contraction_ratios"] = std::move(c);
  if (r.bracket_gap) {
    j["bracket_gap"] = real(*r.bracket_gap);
    j["bracket_partner_iterations"] = r.bracket_partner_iterations;
  }
  return j;
}

json solve_to_json(const SolveResult& r) {
  json j;
  j["schema"] = kSchemaVersion;
  SplittingSequence d;
  bool have_delta = true;
  try {
    d = extract_delta(r.fixed_point);
  } catch (const Error&) {
    have_delta = false;
  }
  j["sequence"] = sequence_to_json(r.fixed_point, have_delta ? &d : nullptr);
  j["report"] = report_to_json(r.report);
  j["converged"] = r.report.converged;
  return j;
}

json membership_to_json(const MembershipReport& r) {
  json j;
  j["verdict"] = r.verdict;
  if (!r.verdict) {
    j["first_violation"] = {{"n", r.first_n}, {"predicate", r.first_predicate}};
  }
  json recs = json::array();
  for (const auto& x : r.records)
    recs.push_back({{"n", x.n},
                    {"sign_ok", x.sign_ok},
                    {"envelope_ok", x.envelope_ok},
                    {"delta_in_band", x.delta_in_band},
                    {"bound_ok", x.bound_ok},
                    {"delta", real(x.delta)}});
  j["records"] = std::move(recs);
  return j;
}

json contraction_to_json(const ContractionStats& s) {
  json j;
  j["lambda"] = s.lambda;
  j["truncation"] = s.truncation;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["max_ratio"] = real(s.max_ratio);
  j["mean_ratio"] = real(s.mean_ratio);
  j["resampled"] = s.resampled;
  j["failures"] = s.failures;
  j["max_start_offset"] = real(s.max_start_offset);
  j["max_image_offset"] = real(s.max_image_offset);
  j["rho"] = s.rho;
  return j;
}

json constants_to_json(const ContractionConstants& c) {
  json j;
  j["lambda"] = c.lambda;
  j["threshold"] = c.threshold;
  j["applicable"] = c.applicable;
  j["M1"] = c.m1;
  j["H0_sq"] = c.h0_sq;
  j["k1"] = c.k1;
  j["k1_0"] = c.k1_0;
  j["k3"] = c.k3;
  j["k3_0"] = c.k3_0;
  j["k5"] = c.k5;
  j["k5_0"] = c.k5_0;
  j["n_max"] = c.n_max;
  j["kn_last"] = c.kn.empty() ? 0.0 : c.kn.back();
  j["kn_0_last"] = c.kn_0.empty() ? 0.0 : c.kn_0.back();
  j["closed_form_error"] = c.closed_form_error;
  j["k_limit_stated"] = c.k_limit_stated;
  j["k0_limit_stated"] = c.k0_limit_stated;
  j["k_limit_recursion"] = c.k_limit_recursion;
  j["k0_limit_recursion"] = c.k0_limit_recursion;
  j["grid_max"] = c.grid_max;
  j["k_sup"] = c.k_sup;
  j["k0_sup"] = c.k0_sup;
  j["k_sup_recursion"] = c.k_sup_recursion;
  j["k0_sup_recursion"] = c.k0_sup_recursion;
  j["sum_below_one"] = c.sum_below_one;
  return j;
}

json checks_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"status", c.status},
                   {"threshold", c.threshold},
                   {"detail", c.detail}});
  return arr;
}

json envelopes_to_json(const EnvelopeSet& env) {
  json j;
  j["schema"] = kSchemaVersion;
  j["lambda"] = env.lambda.value();
  j["truncation"] = env.truncation;
  j["d0"] = env.d0;
  json rows = json::array();
  for (int n = 1; n <= env.truncation; n += 2)
    rows.push_back({{"n", n},
                    {"delta_max", env.delta_max[n]},
                    {"delta_min", env.delta_min[n]},
                    {"h_max", scalar_fields(env.h_max[n])},
                    {"h_min", scalar_fields(env.h_min[n])},
                    {"h0", scalar_fields(env.h0[n])}});
  j["levels"] = std::move(rows);
  return j;
}

std::string sweep_to_csv(const std::vector<SweepEntry>& rows) {
  std::string out = kSweepHeader;
  out += '\n';
  for (const auto& r : rows) {
    const bool ok = r.status != "error";
    auto num = [&](double x) { return ok ? format_real(x) : std::string(); };
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", format_real(r.lambda),
                       ok ? std::to_string(r.report.iterations) : std::string(),
                       num(r.report.final_distance), num(r.h2), num(r.h4),
                       num(r.delta3), num(r.delta5), num(r.delta7),
                       num(r.report.residual_max), r.status);
  }
  return out;
}

std::string figures_to_csv(const FigureTables& t) {
  std::string out = "n,f_L,f_B\n";
  for (const auto& r : t.rows)
    out += fmt::format("{},{},{}\n", r.n, format_real(r.f_l), format_real(r.f_b));
  return out;
}

std::string sequence_to_csv(const GreenSequence& h, const SplittingSequence& d) {
  std::string out = "n,sign,logmag,value,delta\n";
  for (int n = 1; n <= h.truncation(); n += 2)
    out += fmt::format("{},{},{},{},{}\n", n, h[n].sign(),
                       h[n].is_zero() ? std::string() : format_real(h[n].logmag()),
                       scalar_text(h[n]), format_real(d[n]));
  return out;
}

std::string envelopes_to_csv(const EnvelopeSet& env) {
  std::string out = "n,delta_max,delta_min,H_max,H_min,H0\n";
  for (int n = 1; n <= env.truncation; n += 2)
    out += fmt::format("{},{},{},{},{},{}\n", n, format_real(env.delta_max[n]),
                       format_real(env.delta_min[n]), scalar_text(env.h_max[n]),
                       scalar_text(env.h_min[n]), scalar_text(env.h0[n]));
  return out;
}

}  // namespace phi4
