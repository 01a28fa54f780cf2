#ifndef PHI4_SOLVER_HPP
#define PHI4_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phi4/envelopes.hpp"
#include "phi4/exec.hpp"
#include "phi4/sequence.hpp"

namespace phi4 {

enum class StartPolicy { fundamental, delta_max, delta_min };

std::string_view to_string(StartPolicy s);
StartPolicy parse_start(std::string_view s);

struct SolveOptions {
  int truncation = 41;
  double tol = 1e-12;
  // Bound on the residual of the original equations for n <= N - buffer.
  double residual_tol = 1e-10;
  int max_iter = 3000;
  int buffer = 4;
  ClosurePolicy closure = ClosurePolicy::envelope_min;
  StartPolicy start = StartPolicy::fundamental;
  double d0 = kDefaultD0;
  // Allowed disagreement of the two closures under the bracket policy.
  double bracket_tol = 1e-9;
  // Check signs, envelopes and delta bands of every iterate for
  // n <= N - buffer and throw on a violation.  When false the iteration
  // continues and violations are counted in IterationReport::excursions.
  bool check_membership = true;
  // Per-level tables inside one sweep.
  Exec exec = Exec::serial;
};

// Distances below this are treated as converged noise for ratio estimates.
inline constexpr double kPlateau = 1e-14;

struct IterationReport {
  double lambda = 0.0;
  int truncation = 0;
  ClosurePolicy closure = ClosurePolicy::envelope_min;
  StartPolicy start = StartPolicy::fundamental;
  int iterations = 0;
  std::vector<double> distances;
  std::vector<double> contraction_ratios;
  bool converged = false;
  double final_distance = 0.0;
  double residual_max = 0.0;
  // |M*(h) - h| in the weighted norm at the returned sequence.
  double star_defect = 0.0;
  // Iterates outside the admissible set (only with check_membership off).
  int excursions = 0;
  bool certified = true;
  std::optional<double> bracket_gap;
  int bracket_partner_iterations = 0;
  std::string message;
};

struct SolveResult {
  GreenSequence fixed_point;
  IterationReport report;
};

Closure make_closure(const EnvelopeSet& env, ClosurePolicy policy);

// Picard iteration of M*.  Non-convergence is reported, not thrown;
// a membership loss mid-run throws StabilityError with the iteration.
SolveResult solve(Coupling lambda, const SolveOptions& opts = {});

struct SweepEntry {
  double lambda = 0.0;
  // converged, not_converged, warned (outside the certified range), error
  std::string status;
  IterationReport report;
  double h2 = 0.0;
  double h4 = 0.0;
  double delta3 = 0.0;
  double delta5 = 0.0;
  double delta7 = 0.0;
  std::string error;
};

// Independent solves; a failing lambda is recorded and the sweep continues.
std::vector<SweepEntry> sweep(std::span<const double> lambdas,
                              const SolveOptions& opts = {},
                              Exec exec = Exec::parallel);

struct ContractionStats {
  double lambda = 0.0;
  int truncation = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int resampled = 0;
  // Trials whose images lost the alternating signs for n <= N - buffer.
  // Their ratios are still included unless 1 + D_n vanished exactly.
  int failures = 0;
  // Largest |H - H0| and |M*(H) - H0| over the sampled sequences.
  double max_start_offset = 0.0;
  double max_image_offset = 0.0;
  double rho = 0.0;
};

// Ratios |M*(H) - M*(H')| / |H - H'| for pairs drawn with delta_n uniform
// in the envelope bands.  Deterministic for a given seed in both modes.
ContractionStats empirical_contraction(Coupling lambda, int N, int trials,
                                       std::uint64_t seed,
                                       const SolveOptions& opts = {},
                                       Exec exec = Exec::parallel);

}  // namespace phi4

#endif
