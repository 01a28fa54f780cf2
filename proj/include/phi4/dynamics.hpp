#ifndef PHI4_DYNAMICS_HPP
#define PHI4_DYNAMICS_HPP

#include "phi4/combinatorics.hpp"
#include "phi4/exec.hpp"
#include "phi4/sequence.hpp"

namespace phi4 {

struct TreeTerms {
  ExtScalar a;
  ExtScalar b;
  ExtScalar c;
};

struct DnValue {
  int n;
  double value;
};

// 3 Lambda n (n-1)
inline double splitting_scale(int n, double lambda) {
  return 3.0 * lambda * n * (n - 1);
}

// A^{n+1} = -Lambda H^{n+3}; the closure supplies H^{N+3}.
ExtScalar tree_a(const GreenSequence& h, int n);
// B^{n+1} = -3 Lambda sum_pairs n!/(j1! j2!) H^{j2+2} H^{j1+1}
ExtScalar tree_b(const GreenSequence& h, int n, const PartitionTable& table);
// C^{n+1} = -6 Lambda sum_triples n!/(i1! i2! i3! sigma) prod H^{i+1}.
// Valid up to n = N + 2 since every part is at most n - 2.
ExtScalar tree_c(const GreenSequence& h, int n, const PartitionTable& table);

TreeTerms tree_terms(const GreenSequence& h, int n);
TreeTerms tree_terms(const GreenSequence& h, int n,
                     const PartitionTable& table);

// D_3 = 6 Lambda H^2 (3/2 - |H^6| / (6 |H^4| |H^2|)),
// D_n = (|B^{n+1}| - |A^{n+1}|) / |H^{n+1}| for n >= 5.
// Throws MembershipError when H^{n+1} (or H^2) has the wrong sign.
DnValue d_functional(const GreenSequence& h, int n);
// Same value without the sign precondition; only absolute values enter.
double d_value(const GreenSequence& h, int n, const PartitionTable& table);

// H^2' = 1 - Lambda H^4, H^{n+1}' = A + B + C, all on the input.
GreenSequence apply_map_original(const GreenSequence& h,
                                 Exec exec = Exec::serial);

// Ascending sweep: D_n from the input, C^{n+1}' from already updated lower
// entries, H^{n+1}' = C^{n+1}' / (1 + D_n).  Throws StabilityError (with
// iteration 0) when an output entry with n <= guard_top loses its
// alternating sign; guard_top < 0 guards every level, 0 guards none.
GreenSequence apply_map_star(const GreenSequence& h, Exec exec = Exec::serial,
                             int guard_top = -1);

struct Residual {
  OddSeries r;
  // Entries with n >= contaminated_from feel the closure directly.
  int contaminated_from = 0;
  bool contaminated(int n) const { return n >= contaminated_from; }
  // Largest r_n over odd n <= n_max; NaN entries are skipped.
  double max_upto(int n_max) const;
};

// r_1 = |H^2 - 1 + Lambda H^4| / max(1, |H^2|),
// r_n = |H^{n+1} - (A + B + C)| / |H^{n+1}| (absolute when H^{n+1} = 0).
// Under the strict closure r_N is NaN.
Residual residual(const GreenSequence& h, Exec exec = Exec::serial);

// delta_1 = (H^2 - 1)/Lambda, delta_3 = -H^4/(H^2)^3,
// delta_n = 3 Lambda n (n-1) H^{n+1} / C^{n+1}.
SplittingSequence extract_delta(const GreenSequence& h);

// Inverse of extract_delta: the splitting recursion.
GreenSequence build_from_delta(Coupling lambda, const SplittingSequence& d);

}  // namespace phi4

#endif
