#include "phi4/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phi4/errors.hpp"
#include "phi4/kernels.hpp"

namespace phi4 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_level(const GreenSequence& h, int n, int hi) {
  require_odd_index(n, 3);
  if (n > hi)
    throw DomainError("level n=" + std::to_string(n) +
                      " beyond truncation " + std::to_string(h.truncation()));
}

void require_map_input(const GreenSequence& h) {
  if (h.truncation() < 3)
    throw DomainError("mappings need a truncation of at least 3");
}

}  // namespace

ExtScalar tree_a(const GreenSequence& h, int n) {
  require_level(h, n, h.truncation());
  return h.upper(n) * (-h.lambda());
}

ExtScalar tree_b(const GreenSequence& h, int n, const PartitionTable& table) {
  require_level(h, n, h.truncation());
  LogSum s;
  for (const auto& t : table.pairs(n))
    s.add(ExtScalar::from_log(1, t.logw) * h[t.a] * h[t.b]);
  return s.value() * (-3.0 * h.lambda());
}

ExtScalar tree_c(const GreenSequence& h, int n, const PartitionTable& table) {
  require_level(h, n, h.truncation() + 2);
  LogSum s;
  for (const auto& t : table.triples(n))
    s.add(ExtScalar::from_log(1, t.logw) * h[t.a] * h[t.b] * h[t.c]);
  return s.value() * (-6.0 * h.lambda());
}

TreeTerms tree_terms(const GreenSequence& h, int n,
                     const PartitionTable& table) {
  return {tree_a(h, n), tree_b(h, n, table), tree_c(h, n, table)};
}

TreeTerms tree_terms(const GreenSequence& h, int n) {
  return tree_terms(h, n, *PartitionTable::shared(h.truncation() + 2));
}

double d_value(const GreenSequence& h, int n, const PartitionTable& table) {
  require_level(h, n, h.truncation());
  const ExtScalar& hn = h[n];
  if (hn.is_zero()) throw DegenerateInputError(n, "H^{n+1} is zero in D_n");
  const double lambda = h.lambda();
  if (n == 3) {
    const ExtScalar& h2 = h[1];
    if (h2.is_zero()) throw DegenerateInputError(1, "H^2 is zero in D_3");
    const double h2v = h2.abs().to_double();
    const double q = (h.upper(3).abs() / (hn.abs() * h2.abs())).to_double();
    return 6.0 * lambda * h2v * (1.5 - q / 6.0);
  }
  const ExtScalar habs = hn.abs();
  const double b_rel = (tree_b(h, n, table).abs() / habs).to_double();
  const double a_rel = (tree_a(h, n).abs() / habs).to_double();
  return b_rel - a_rel;
}

DnValue d_functional(const GreenSequence& h, int n) {
  require_level(h, n, h.truncation());
  if (h[n].sign() != good_sign(n))
    throw MembershipError(n, "D_n needs alternating signs");
  if (n == 3 && h[1].sign() != 1) throw MembershipError(1, "D_3 needs H^2 > 0");
  return {n, d_value(h, n, *PartitionTable::shared(h.truncation() + 2))};
}

GreenSequence apply_map_original(const GreenSequence& h, Exec exec) {
  require_map_input(h);
  const auto table = PartitionTable::shared(h.truncation() + 2);
  const auto terms = kernels::tree_table(h, *table, exec);
  GreenSequence out(h.coupling(), h.truncation());
  out.set_closure(h.closure());
  out[1] = ExtScalar::one() + h[3] * (-h.lambda());
  for (int n = 3; n <= h.truncation(); n += 2) {
    const auto& t = terms[slot(n)];
    out[n] = t.a + t.b + t.c;
  }
  return out;
}

GreenSequence apply_map_star(const GreenSequence& h, Exec exec,
                             int guard_top) {
  require_map_input(h);
  const int N = h.truncation();
  if (guard_top < 0) guard_top = N;
  const double lambda = h.lambda();
  const auto table = PartitionTable::shared(N + 2);
  const auto d = kernels::d_table(h, *table, exec);

  GreenSequence out(h.coupling(), N);
  out.set_closure(h.closure());
  out[1] = ExtScalar::one() + h[3] * (-lambda);
  if (guard_top >= 1 && out[1].sign() != 1)
    throw StabilityError(1, 0, "H^2' is not positive");

  for (int n = 3; n <= N; n += 2) {
    const double denom = 1.0 + d[slot(n)];
    if (!std::isfinite(denom) || denom == 0.0 ||
        (n <= guard_top && denom < 0.0))
      throw StabilityError(n, 0, "1 + D_n is not positive");
    if (n == 3)
      out[3] = out[1].pow(3) * (-6.0 * lambda / denom);
    else
      out[n] = tree_c(out, n, *table) * (1.0 / denom);
    if (n <= guard_top && out[n].sign() != good_sign(n))
      throw StabilityError(n, 0, "M* output lost the alternating sign");
  }
  return out;
}

double Residual::max_upto(int n_max) const {
  double m = 0.0;
  for (int n = 1; n <= std::min(n_max, r.truncation()); n += 2)
    if (!std::isnan(r[n])) m = std::max(m, r[n]);
  return m;
}

Residual residual(const GreenSequence& h, Exec exec) {
  require_map_input(h);
  const int N = h.truncation();
  const double lambda = h.lambda();
  const auto table = PartitionTable::shared(N + 2);

  Residual res;
  res.r = OddSeries(N, kNaN);
  res.contaminated_from = N - 2;

  const ExtScalar d1 = h[1] - ExtScalar::one() + h[3] * lambda;
  res.r[1] = d1.abs().to_double() / std::max(1.0, h[1].abs().to_double());

  // The strict closure cannot supply A^{N+1}.
  const bool top_ok = h.closure().policy != ClosurePolicy::strict;
  const int hi = top_ok ? N : N - 2;
  const int count = hi >= 3 ? slot(hi) : 0;
  std::vector<double> r(slot(N) + 1, kNaN);
  for_each_index(count, exec, [&](int i) {
    const int n = index_of_slot(i + 1);
    const TreeTerms t = tree_terms(h, n, *table);
    const ExtScalar diff = h[n] - (t.a + t.b + t.c);
    const ExtScalar scale = h[n].is_zero() ? ExtScalar::one() : h[n].abs();
    r[i + 1] = (diff.abs() / scale).to_double();
  });
  for (int n = 3; n <= hi; n += 2) res.r[n] = r[slot(n)];
  return res;
}

SplittingSequence extract_delta(const GreenSequence& h) {
  const int N = h.truncation();
  const double lambda = h.lambda();
  SplittingSequence d(N, kNaN);
  if (h[1].is_zero()) throw DegenerateInputError(1, "H^2 is zero");
  d[1] = (h[1] - ExtScalar::one()).to_double() / lambda;
  if (N < 3) return d;
  d[3] = -ratio(h[3], h[1].pow(3));
  const auto table = PartitionTable::shared(N + 2);
  for (int n = 5; n <= N; n += 2) {
    const ExtScalar c = tree_c(h, n, *table);
    if (c.is_zero()) throw DegenerateInputError(n, "C^{n+1} is zero");
    d[n] = splitting_scale(n, lambda) * ratio(h[n], c);
  }
  return d;
}

GreenSequence build_from_delta(Coupling lambda, const SplittingSequence& d) {
  const int N = d.truncation();
  const double l = lambda.value();
  GreenSequence h(lambda, N);
  h[1] = ExtScalar::from_double(1.0 + l * d[1]);
  if (N < 3) return h;
  h[3] = h[1].pow(3) * (-d[3]);
  const auto table = PartitionTable::shared(N + 2);
  for (int n = 5; n <= N; n += 2)
    h[n] = tree_c(h, n, *table) * (d[n] / splitting_scale(n, l));
  return h;
}

}  // namespace phi4
