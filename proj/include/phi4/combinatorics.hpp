#ifndef PHI4_COMBINATORICS_HPP
#define PHI4_COMBINATORICS_HPP

#include <memory>
#include <span>
#include <vector>

#include "phi4/ext_scalar.hpp"

namespace phi4 {

// Odd n maps to storage slot (n-1)/2.
constexpr int slot(int n) { return (n - 1) / 2; }
constexpr int index_of_slot(int s) { return 2 * s + 1; }

// Throws DomainError unless n is odd and n >= lo.
void require_odd_index(int n, int lo);

// (j1; j2) with j1 odd and j1 + j2 = n.
struct PairPartition {
  int j1;
  int j2;
  friend bool operator==(const PairPartition&, const PairPartition&) = default;
};

// i1 >= i2 >= i3, all odd, summing to n.
struct TriplePartition {
  int i1;
  int i2;
  int i3;
  int sigma;
  friend bool operator==(const TriplePartition&,
                         const TriplePartition&) = default;
};

std::vector<PairPartition> enumerate_pairs(int n);

// Emitted in lexicographically decreasing (i1, i2) order.
std::vector<TriplePartition> enumerate_triples(int n);

int symmetry_factor(int i1, int i2, int i3);

// Closed-form count estimate; n in {7, 9} return the tabulated 2 and 3.
double partition_count_formula(int n);

double log_factorial(int n);

// n! / (j1! j2!)
ExtScalar multinomial_weight(int n, const PairPartition& p);
// n! / (i1! i2! i3! sigma)
ExtScalar multinomial_weight(int n, const TriplePartition& t);

// c_n for odd n <= n_max, indexed by slot.  c_1 = c_3 = 1.
std::vector<double> limit_constants(int n_max);

// Precomputed log weights for the B and C sums up to n_max.
class PartitionTable {
 public:
  // Term H^{a+1} * H^{b+1} (pairs) or H^{a+1} H^{b+1} H^{c+1} (triples),
  // a, b, c odd indices.
  struct PairTerm {
    int a;
    int b;
    double logw;
  };
  struct TripleTerm {
    int a;
    int b;
    int c;
    double logw;
  };

  explicit PartitionTable(int n_max);

  int n_max() const { return n_max_; }
  std::span<const PairTerm> pairs(int n) const;
  std::span<const TripleTerm> triples(int n) const;

  // Shared immutable instance covering at least n_max.
  static std::shared_ptr<const PartitionTable> shared(int n_max);

 private:
  int n_max_;
  std::vector<std::vector<PairTerm>> pairs_;
  std::vector<std::vector<TripleTerm>> triples_;
};

}  // namespace phi4

#endif
