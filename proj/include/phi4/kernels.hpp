#ifndef PHI4_KERNELS_HPP
#define PHI4_KERNELS_HPP

#include <vector>

#include "phi4/dynamics.hpp"

// Per-level tables.  Every level is evaluated by the same scalar routine,
// so the serial and OpenMP variants agree bit for bit.
namespace phi4::kernels {

// D_n for odd n in [3, N], indexed by slot (slot 0 unused, NaN).
std::vector<double> d_table(const GreenSequence& h,
                            const PartitionTable& table, Exec exec);

// A, B, C for odd n in [3, N], indexed by slot (slot 0 zero).
std::vector<TreeTerms> tree_table(const GreenSequence& h,
                                  const PartitionTable& table, Exec exec);

}  // namespace phi4::kernels

#endif
