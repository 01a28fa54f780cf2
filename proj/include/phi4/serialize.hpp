#ifndef PHI4_SERIALIZE_HPP
#define PHI4_SERIALIZE_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "phi4/solver.hpp"
#include "phi4/verify.hpp"

namespace phi4 {

inline constexpr int kSchemaVersion = 1;

// 17 significant digits, '.' separator, independent of the C locale.
std::string format_real(double x);

// Entries carry sign and natural-log magnitude (exact round trip), the
// base-10 magnitude for reading, and the linear value when it is finite.
nlohmann::json sequence_to_json(const GreenSequence& h,
                                const SplittingSequence* delta = nullptr);
GreenSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const IterationReport& r);
nlohmann::json solve_to_json(const SolveResult& r);
nlohmann::json membership_to_json(const MembershipReport& r);
nlohmann::json contraction_to_json(const ContractionStats& s);
nlohmann::json constants_to_json(const ContractionConstants& c);
nlohmann::json checks_to_json(const std::vector<CheckResult>& checks);
nlohmann::json envelopes_to_json(const EnvelopeSet& env);

inline constexpr const char* kSweepHeader =
    "lambda,iterations,final_distance,H2,H4,delta3,delta5,delta7,"
    "residual_max,status";

std::string sweep_to_csv(const std::vector<SweepEntry>& rows);
// Columns n, f_L, f_B.
std::string figures_to_csv(const FigureTables& t);
// Columns n, H, delta for a sequence.
std::string sequence_to_csv(const GreenSequence& h, const SplittingSequence& d);
// Columns n, delta_max, delta_min, H_max, H_min, H0.
std::string envelopes_to_csv(const EnvelopeSet& env);

}  // namespace phi4

#endif
