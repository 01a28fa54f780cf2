#ifndef PHI4_SEQUENCE_HPP
#define PHI4_SEQUENCE_HPP

#include <span>
#include <string_view>
#include <vector>

#include "phi4/combinatorics.hpp"
#include "phi4/ext_scalar.hpp"

namespace phi4 {

// Upper end of the coupling range where stability of M* is asserted.
inline constexpr double kCertifiedLambdaMax = 0.05;
// Upper end used by the contraction estimates.
inline constexpr double kContractionLambdaMax = 0.045;

class Coupling {
 public:
  // Throws DomainError unless 0 < lambda < inf.
  explicit Coupling(double lambda);
  double value() const { return lambda_; }
  bool certified() const { return lambda_ <= kCertifiedLambdaMax; }
  friend bool operator==(const Coupling&, const Coupling&) = default;

 private:
  double lambda_;
};

// Real values at odd n in [1, N].  Used for splitting factors delta_n
// (delta_1 lives at n = 1), sweeping factors and per-level diagnostics.
class OddSeries {
 public:
  OddSeries() = default;
  explicit OddSeries(int truncation, double fill = 0.0);

  int truncation() const { return truncation_; }
  bool contains(int n) const {
    return n >= 1 && n <= truncation_ && n % 2 == 1;
  }
  double operator[](int n) const { return v_[slot(n)]; }
  double& operator[](int n) { return v_[slot(n)]; }
  double at(int n) const;
  std::span<const double> values() const { return v_; }

 private:
  int truncation_ = 0;
  std::vector<double> v_;
};

using SplittingSequence = OddSeries;

enum class ClosurePolicy { strict, zero_tail, envelope_max, envelope_min, bracket };

std::string_view to_string(ClosurePolicy p);
// Throws DomainError on an unknown tag.
ClosurePolicy parse_closure(std::string_view s);

// How H^{N+3} is supplied to A^{N+1}.
struct Closure {
  ClosurePolicy policy = ClosurePolicy::strict;
  ExtScalar tail;
};

// H^{n+1} for odd n in [1, N] at fixed coupling.
class GreenSequence {
 public:
  GreenSequence(Coupling lambda, int truncation);

  Coupling coupling() const { return lambda_; }
  double lambda() const { return lambda_.value(); }
  int truncation() const { return truncation_; }

  const ExtScalar& operator[](int n) const { return v_[slot(n)]; }
  ExtScalar& operator[](int n) { return v_[slot(n)]; }
  // Bounds-checked access.
  const ExtScalar& at(int n) const;

  const Closure& closure() const { return closure_; }
  void set_closure(const Closure& c) { closure_ = c; }

  // H^{n+3}: stored value when n + 2 <= N, otherwise from the closure.
  ExtScalar upper(int n) const;

  // Copy restricted to n <= n_max (closure reset to strict).
  GreenSequence truncated(int n_max) const;

  std::span<const ExtScalar> values() const { return v_; }

 private:
  Coupling lambda_;
  int truncation_;
  Closure closure_;
  std::vector<ExtScalar> v_;
};

// Expected sign of H^{n+1} on the admissible set: (-1)^((n-1)/2).
constexpr int good_sign(int n) { return (slot(n) % 2 == 0) ? 1 : -1; }

}  // namespace phi4

#endif
