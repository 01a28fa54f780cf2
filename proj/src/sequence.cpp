#include "phi4/sequence.hpp"

#include <cmath>
#include <string>

#include "phi4/errors.hpp"

namespace phi4 {

Coupling::Coupling(double lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw DomainError("lambda must be positive");
}

OddSeries::OddSeries(int truncation, double fill) : truncation_(truncation) {
  require_odd_index(truncation, 1);
  v_.assign(slot(truncation) + 1, fill);
}

double OddSeries::at(int n) const {
  if (!contains(n))
    throw DomainError("index n=" + std::to_string(n) + " outside [1, " +
                      std::to_string(truncation_) + "]");
  return v_[slot(n)];
}

std::string_view to_string(ClosurePolicy p) {
  switch (p) {
    case ClosurePolicy::strict:
      return "strict";
    case ClosurePolicy::zero_tail:
      return "zero_tail";
    case ClosurePolicy::envelope_max:
      return "envelope_max";
    case ClosurePolicy::envelope_min:
      return "envelope_min";
    case ClosurePolicy::bracket:
      return "bracket";
  }
  return "unknown";
}

ClosurePolicy parse_closure(std::string_view s) {
  for (auto p : {ClosurePolicy::strict, ClosurePolicy::zero_tail,
                 ClosurePolicy::envelope_max, ClosurePolicy::envelope_min,
                 ClosurePolicy::bracket})
    if (s == to_string(p)) return p;
  throw DomainError("unknown closure '" + std::string(s) + "'");
}

GreenSequence::GreenSequence(Coupling lambda, int truncation)
    : lambda_(lambda), truncation_(truncation) {
  require_odd_index(truncation, 1);
  v_.resize(slot(truncation) + 1);
}

const ExtScalar& GreenSequence::at(int n) const {
  if (n < 1 || n > truncation_ || n % 2 == 0)
    throw DomainError("index n=" + std::to_string(n) + " outside [1, " +
                      std::to_string(truncation_) + "]");
  return v_[slot(n)];
}

ExtScalar GreenSequence::upper(int n) const {
  const int m = n + 2;
  if (m <= truncation_) return v_[slot(m)];
  if (m > truncation_ + 2)
    throw DomainError("H^" + std::to_string(m + 1) +
                      " is more than one level beyond the truncation");
  switch (closure_.policy) {
    case ClosurePolicy::strict:
      throw TruncationError(n);
    case ClosurePolicy::zero_tail:
      return {};
    case ClosurePolicy::envelope_max:
    case ClosurePolicy::envelope_min:
      return closure_.tail;
    case ClosurePolicy::bracket:
      break;
  }
  throw DomainError("bracket closure is resolved by the solver, not a sequence");
}

GreenSequence GreenSequence::truncated(int n_max) const {
  require_odd_index(n_max, 1);
  if (n_max > truncation_) throw DomainError("cannot extend by truncation");
  GreenSequence out(lambda_, n_max);
  for (int n = 1; n <= n_max; n += 2) out[n] = v_[slot(n)];
  return out;
}

}  // namespace phi4
