#ifndef PHI4_ENVELOPES_HPP
#define PHI4_ENVELOPES_HPP

#include "phi4/sequence.hpp"

namespace phi4 {

inline constexpr double kDefaultD0 = 0.01;
// Sanity ceiling for |H^{n+1}| <= n! K0^n and for delta_n <= K0.
inline constexpr double kDefaultK0 = 200.0;

// n = 1 gives delta_1 = (H^2 - 1)/Lambda of the extremal sequences.
double delta_max_at(int n, double lambda, double d0 = kDefaultD0);
double delta_min_at(int n, double lambda);

struct DeltaEnvelopes {
  SplittingSequence max;
  SplittingSequence min;
};

DeltaEnvelopes delta_envelopes(Coupling lambda, int N, double d0 = kDefaultD0);

struct ExtremalPair {
  GreenSequence h_max;
  GreenSequence h_min;
};

// Splitting recursion driven by delta_max and delta_min.
ExtremalPair build_extremal(Coupling lambda, int N, double d0 = kDefaultD0);

// The extremal sequences are stored two levels past the truncation
// (up to N + 2) because D_{N,min} reads H_max^{N+3}.
struct EnvelopeSet {
  Coupling lambda;
  int truncation;
  double d0;
  SplittingSequence delta_max;
  SplittingSequence delta_min;
  GreenSequence h_max;
  GreenSequence h_min;
  GreenSequence h0;
};

EnvelopeSet build_envelopes(Coupling lambda, int N, double d0 = kDefaultD0);

// Throws ConsistencyError on a coupling mismatch and MembershipError(n) when
// delta_{n,0} leaves [delta_{n,min}, delta_{n,max}].
GreenSequence build_fundamental(Coupling lambda, const EnvelopeSet& env);

// Splitting factors of the fundamental sequence (index 1 holds delta_1).
SplittingSequence fundamental_delta(const EnvelopeSet& env);

// Y_3 = 1/6, Y_5 = 1/20, Y_n = -C^{n+1} / (3 Lambda n^2 (n-1)^2 H^{n-1}
// (H^2)^2) for n >= 7.  Index 1 is NaN.
OddSeries sweeping_factors(const GreenSequence& h);

// Frozen value for H^{N+3}: delta_{N+2,max|min} C^{N+3}(H0) /
// (3 Lambda (N+2)(N+1)), or zero for zero_tail.
ExtScalar closure_tail(const EnvelopeSet& env, ClosurePolicy policy);

}  // namespace phi4

#endif
