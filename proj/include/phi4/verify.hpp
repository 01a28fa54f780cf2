#ifndef PHI4_VERIFY_HPP
#define PHI4_VERIFY_HPP

#include <span>
#include <string>
#include <vector>

#include "phi4/envelopes.hpp"
#include "phi4/solver.hpp"

namespace phi4 {

// Relative slack used when comparing against envelope values.
inline constexpr double kEnvelopeRelTol = 1e-12;

struct MembershipRecord {
  int n = 0;
  bool sign_ok = true;
  bool envelope_ok = true;
  bool delta_in_band = true;
  bool bound_ok = true;
  double delta = 0.0;
  bool ok() const { return sign_ok && envelope_ok && delta_in_band && bound_ok; }
};

struct MembershipReport {
  std::vector<MembershipRecord> records;
  bool verdict = true;
  int first_n = 0;
  std::string first_predicate;
};

// Sign parity, |H_min| <= |H| <= |H_max|, delta_n in its band and the
// growth ceiling n! K0^n, for odd n <= n_max (all stored n when negative).
// Violations are data, never exceptions.
MembershipReport check_membership(const GreenSequence& h,
                                  const EnvelopeSet& env, int n_max = -1,
                                  double k0 = kDefaultK0);

struct LimitRow {
  std::string quantity;
  int n = 0;
  double observed = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

struct LimitsReport {
  double lambda = 0.0;
  int truncation = 0;
  bool converged = false;
  std::vector<LimitRow> rows;
  bool ok = false;
};

// Solves at a small coupling and compares
//   H^{n+1} / ((-Lambda)^((n-1)/2) n! c_n) with 1 for n = 3..9 (tol 1e-2),
//   delta_3/Lambda with 6 and delta_n/Lambda with 3n(n-1) (tol 1e-2 / 2e-2),
//   H^2 with 1 + 6 Lambda^2 (tol 1e-3).
LimitsReport check_small_lambda_limits(int N, Coupling lambda_small,
                                       const SolveOptions& base = {});

struct MonotonicityRow {
  int n = 0;
  double a_ratio = 0.0;  // |A_max| / (n(n-1) |H_max|)
  double b_ratio = 0.0;  // |B_min| / (n(n-1) |H_min|)
  double d_ratio = 0.0;  // D_{n,min} / (3 Lambda n(n-1))
};

struct MonotonicityReport {
  double lambda = 0.0;
  double threshold = 0.05;
  bool applicable = true;
  double d0 = kDefaultD0;
  std::vector<MonotonicityRow> rows;
  bool a_decreasing = true;
  bool b_increasing = true;
  bool d_increasing = true;
  bool d_bracket = true;
  // First n breaking each property, 0 when none.
  int a_violation = 0;
  int b_violation = 0;
  int d_violation = 0;
  int bracket_violation = 0;
  // D_{5,min} / (60 Lambda) against its reference 0.059.
  double d5_ratio = 0.0;
  double d5_reference = 0.059;
};

// Tabulates the three ratios over odd n in [7, N - 4] on the envelopes.
MonotonicityReport check_appendix_monotonicity(const EnvelopeSet& env);

struct TreeBoundRow {
  int n = 0;
  int count = 0;
  // |C_min| / (T_n |balanced term|), expected >= 1.
  double min_side = 0.0;
  // |C_max| / (T_n |(n-2,1,1) term|), expected <= 1.
  double max_side = 0.0;
  bool ok = false;
};

struct TreeBoundsReport {
  double lambda = 0.0;
  double threshold = 0.05;
  std::vector<TreeBoundRow> rows;
  bool ok = true;
};

// Single-term bounds on C_min and C_max with exact triple counts, odd
// n in [5, N].  The balanced term is the triple with the smallest i1.
TreeBoundsReport check_tree_term_bounds(const EnvelopeSet& env);

struct SplittingIdentityReport {
  // max relative error of H^{n+1} = -n(n-1) delta_n Y_n H^{n-1} (H^2)^2
  double local_max_error = 0.0;
  // max relative error of H^{n+1} = n! (-1)^((n-1)/2) (H^2)^n prod Y_m delta_m
  double product_max_error = 0.0;
  bool ok = false;
};

SplittingIdentityReport check_splitting_identities(const GreenSequence& h,
                                                   double tol = 1e-8);

double f_l(double n, double lambda, double d0);
double f_b(double n, double lambda);

struct FigureRow {
  int n = 0;
  double f_l = 0.0;
  double f_b = 0.0;
};

struct FigureTables {
  double lambda = 0.0;
  std::vector<FigureRow> rows;
  bool f_l_decreasing = true;
  int f_l_first_increase = 0;
  double f_l_terminal = 0.0;
  double f_l_limit = 0.0;
  double f_l_terminal_rel = 0.0;
  bool f_b_above_one = true;
  bool f_b_decreasing = true;
  int f_b_first_increase = 0;
  double f_b_terminal = 0.0;
  double f_b_terminal_rel = 0.0;
};

// f_L with Lambda = d0 = lambda and f_B at lambda, odd n in [n_lo, n_hi].
// Monotonicity is assessed on the open-left range (n_lo, n_hi].
FigureTables appendix_inequality_functions(Coupling lambda, int n_lo = 7,
                                           int n_hi = 4001);

struct ContractionConstants {
  double lambda = 0.0;
  double m1 = 0.0;
  double h0_sq = 0.0;
  double k1 = 0.0;
  double k1_0 = 0.0;
  double k3 = 0.0;
  double k3_0 = 0.0;
  double k5 = 0.0;
  double k5_0 = 0.0;
  int n_max = 0;
  // k_n for odd n in [7, n_max], front is n = 7.
  std::vector<double> kn;
  std::vector<double> kn_0;
  // Largest gap between the recursion and its geometric closed form.
  double closed_form_error = 0.0;
  // 1/11 + k1/6 and the true recursion limit 12 a1 / 11, a1 = 1/12 + k1/6.
  double k_limit_stated = 0.0;
  double k0_limit_stated = 0.0;
  double k_limit_recursion = 0.0;
  double k0_limit_recursion = 0.0;
  // Supremum of the stated limits (and of the recursion) over the grid.
  double grid_max = 0.0;
  double k_sup = 0.0;
  double k0_sup = 0.0;
  double k_sup_recursion = 0.0;
  double k0_sup_recursion = 0.0;
  double threshold = kContractionLambdaMax;
  bool applicable = true;
  bool sum_below_one = false;
};

// Grid 0.001, 0.002, ..., 0.05.
std::vector<double> default_constants_grid();

ContractionConstants contraction_constants(
    Coupling lambda, int n_max = 201,
    std::span<const double> grid = {});

// One line of the verification suite.
struct CheckResult {
  std::string name;
  // pass, fail or skipped
  std::string status;
  // Lambda precondition of the check; 0 when the check does not depend
  // on the requested coupling.
  double threshold = 0.0;
  std::string detail;
};

struct SuiteOptions {
  SolveOptions solve;
  int contraction_trials = 100;
  std::uint64_t seed = 20240101;
  Exec exec = Exec::parallel;
};

// Every check with its own precondition; skipped when lambda exceeds it.
std::vector<CheckResult> run_verification(Coupling lambda,
                                          const SuiteOptions& opts = {});

}  // namespace phi4

#endif
