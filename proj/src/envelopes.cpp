#include "phi4/envelopes.hpp"

#include <cmath>
#include <limits>

#include "phi4/dynamics.hpp"
#include "phi4/errors.hpp"

namespace phi4 {

namespace {

// Band membership with a relative slack for rounding only.
bool in_band(double x, double lo, double hi) {
  const double eps = 1e-12;
  return x >= lo * (1.0 - eps) && x <= hi * (1.0 + eps);
}

}  // namespace

double delta_max_at(int n, double lambda, double d0) {
  require_odd_index(n, 1);
  if (n == 1) {
    const double m1 = std::pow(1.0 + 6.0 * lambda * lambda, 2);
    return (m1 - 1.0) / lambda;
  }
  if (n == 3) return 6.0 * lambda;
  const double s = splitting_scale(n, lambda);
  return s / (1.0 + s * d0);
}

double delta_min_at(int n, double lambda) {
  require_odd_index(n, 1);
  if (n == 1) return 0.0;
  if (n == 3) return 6.0 * lambda / (1.0 + 9.0 * lambda);
  const double s = splitting_scale(n, lambda);
  return s / (1.0 + s);
}

DeltaEnvelopes delta_envelopes(Coupling lambda, int N, double d0) {
  require_odd_index(N, 3);
  DeltaEnvelopes e{SplittingSequence(N), SplittingSequence(N)};
  for (int n = 1; n <= N; n += 2) {
    e.max[n] = delta_max_at(n, lambda.value(), d0);
    e.min[n] = delta_min_at(n, lambda.value());
  }
  return e;
}

ExtremalPair build_extremal(Coupling lambda, int N, double d0) {
  const auto e = delta_envelopes(lambda, N, d0);
  return {build_from_delta(lambda, e.max), build_from_delta(lambda, e.min)};
}

SplittingSequence fundamental_delta(const EnvelopeSet& env) {
  const int N = env.truncation;
  const double lambda = env.lambda.value();
  const GreenSequence& hmax = env.h_max;
  const GreenSequence& hmin = env.h_min;
  if (hmax.truncation() < N + 2 || hmin.truncation() < N + 2)
    throw ConsistencyError("extremal sequences must extend to N + 2");
  const auto table = PartitionTable::shared(N + 4);

  SplittingSequence d(N, std::numeric_limits<double>::quiet_NaN());
  d[1] = -hmin[3].to_double();
  d[3] = 6.0 * lambda /
         (1.0 + 9.0 * lambda * hmin[1].to_double() -
          lambda * ratio(hmin[5].abs(), hmax[3].abs()));
  for (int n = 5; n <= N; n += 2) {
    const double b = ratio(tree_b(hmin, n, *table).abs(), hmin[n].abs());
    const double a = ratio(tree_a(hmax, n).abs(), hmax[n].abs());
    d[n] = splitting_scale(n, lambda) / (1.0 + b - a);
  }
  return d;
}

GreenSequence build_fundamental(Coupling lambda, const EnvelopeSet& env) {
  if (!(lambda == env.lambda))
    throw ConsistencyError("envelopes were built for a different lambda");
  const SplittingSequence d = fundamental_delta(env);
  for (int n = 3; n <= env.truncation; n += 2)
    if (!in_band(d[n], env.delta_min[n], env.delta_max[n]))
      throw MembershipError(n, "delta_{n,0} outside the envelope band");
  return build_from_delta(lambda, d);
}

EnvelopeSet build_envelopes(Coupling lambda, int N, double d0) {
  require_odd_index(N, 3);
  if (!(d0 > 0.0) || d0 >= 1.0) throw DomainError("d0 must lie in (0, 1)");
  const auto e = delta_envelopes(lambda, N, d0);
  const auto x = build_extremal(lambda, N + 2, d0);
  EnvelopeSet env{lambda,  N,       d0,     e.max,
                  e.min,   x.h_max, x.h_min, GreenSequence(lambda, N)};
  env.h0 = build_fundamental(lambda, env);
  return env;
}

OddSeries sweeping_factors(const GreenSequence& h) {
  const int N = h.truncation();
  require_odd_index(N, 3);
  const double lambda = h.lambda();
  OddSeries y(N, std::numeric_limits<double>::quiet_NaN());
  y[3] = 1.0 / 6.0;
  if (N >= 5) y[5] = 1.0 / 20.0;
  const auto table = PartitionTable::shared(N + 2);
  for (int n = 7; n <= N; n += 2) {
    if (h[n - 2].is_zero())
      throw DegenerateInputError(n, "H^{n-1} is zero in Y_n");
    const ExtScalar den =
        h[n - 2] * h[1].pow(2) * (3.0 * lambda * n * n * (n - 1) * (n - 1));
    y[n] = -ratio(tree_c(h, n, *table), den);
  }
  return y;
}

ExtScalar closure_tail(const EnvelopeSet& env, ClosurePolicy policy) {
  const int top = env.truncation + 2;
  const double lambda = env.lambda.value();
  double delta = 0.0;
  switch (policy) {
    case ClosurePolicy::zero_tail:
      return {};
    case ClosurePolicy::envelope_max:
      delta = delta_max_at(top, lambda, env.d0);
      break;
    case ClosurePolicy::envelope_min:
      delta = delta_min_at(top, lambda);
      break;
    default:
      throw DomainError("closure policy has no tail value");
  }
  const auto table = PartitionTable::shared(top);
  return tree_c(env.h0, top, *table) * (delta / splitting_scale(top, lambda));
}

}  // namespace phi4
