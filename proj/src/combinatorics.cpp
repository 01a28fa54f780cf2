#include "phi4/combinatorics.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "phi4/errors.hpp"

namespace phi4 {

void require_odd_index(int n, int lo) {
  if (n < lo || n % 2 == 0)
    throw DomainError("index n=" + std::to_string(n) +
                      " must be odd and at least " + std::to_string(lo));
}

std::vector<PairPartition> enumerate_pairs(int n) {
  require_odd_index(n, 3);
  std::vector<PairPartition> out;
  out.reserve(slot(n));
  for (int j1 = 1; j1 <= n - 2; j1 += 2) out.push_back({j1, n - j1});
  return out;
}

int symmetry_factor(int i1, int i2, int i3) {
  if (i1 == i2 && i2 == i3) return 6;
  if (i1 != i2 && i2 != i3 && i1 != i3) return 1;
  return 2;
}

std::vector<TriplePartition> enumerate_triples(int n) {
  require_odd_index(n, 3);
  std::vector<TriplePartition> out;
  for (int i1 = n - 2; i1 >= 1; i1 -= 2) {
    for (int i2 = std::min(i1, n - i1 - 1); i2 >= 1; i2 -= 2) {
      const int i3 = n - i1 - i2;
      if (i3 < 1 || i3 > i2) continue;
      out.push_back({i1, i2, i3, symmetry_factor(i1, i2, i3)});
    }
  }
  return out;
}

double partition_count_formula(int n) {
  require_odd_index(n, 7);
  if (n == 7) return 2.0;
  if (n == 9) return 3.0;
  const double m = n - 3;
  return m * m / 48.0 + m / 3.0 + 1.0;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

ExtScalar multinomial_weight(int n, const PairPartition& p) {
  return ExtScalar::from_log(
      1, log_factorial(n) - log_factorial(p.j1) - log_factorial(p.j2));
}

ExtScalar multinomial_weight(int n, const TriplePartition& t) {
  return ExtScalar::from_log(1, log_factorial(n) - log_factorial(t.i1) -
                                    log_factorial(t.i2) -
                                    log_factorial(t.i3) -
                                    std::log(static_cast<double>(t.sigma)));
}

std::vector<double> limit_constants(int n_max) {
  require_odd_index(n_max, 3);
  std::vector<double> c(slot(n_max) + 1, 0.0);
  c[slot(1)] = 1.0;
  c[slot(3)] = 1.0;
  for (int n = 5; n <= n_max; n += 2) {
    double s = 0.0;
    for (const auto& t : enumerate_triples(n))
      s += c[slot(t.i1)] * c[slot(t.i2)] * c[slot(t.i3)] / t.sigma;
    c[slot(n)] = 6.0 * s;
  }
  return c;
}

PartitionTable::PartitionTable(int n_max) : n_max_(n_max) {
  require_odd_index(n_max, 1);
  pairs_.resize(slot(n_max) + 1);
  triples_.resize(slot(n_max) + 1);
  for (int n = 3; n <= n_max; n += 2) {
    auto& ps = pairs_[slot(n)];
    for (const auto& p : enumerate_pairs(n))
      ps.push_back({p.j2 + 1, p.j1, multinomial_weight(n, p).logmag()});
    auto& ts = triples_[slot(n)];
    for (const auto& t : enumerate_triples(n))
      ts.push_back({t.i1, t.i2, t.i3, multinomial_weight(n, t).logmag()});
  }
}

std::span<const PartitionTable::PairTerm> PartitionTable::pairs(int n) const {
  require_odd_index(n, 3);
  if (n > n_max_) throw DomainError("partition table too small");
  return pairs_[slot(n)];
}

std::span<const PartitionTable::TripleTerm> PartitionTable::triples(
    int n) const {
  require_odd_index(n, 3);
  if (n > n_max_) throw DomainError("partition table too small");
  return triples_[slot(n)];
}

std::shared_ptr<const PartitionTable> PartitionTable::shared(int n_max) {
  static std::mutex mu;
  static std::shared_ptr<const PartitionTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->n_max() < n_max) {
    // Grow with headroom so a sweep over nearby truncations builds once.
    const int target = std::max(n_max, cached ? cached->n_max() : 0) + 16;
    cached = std::make_shared<const PartitionTable>(target);
  }
  return cached;
}

}  // namespace phi4
