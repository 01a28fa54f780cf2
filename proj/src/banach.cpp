#include "phi4/banach.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phi4/errors.hpp"
#include "phi4/verify.hpp"

namespace phi4 {

NormWeights::NormWeights(Coupling lambda, int N, double d0)
    : lambda_(lambda), truncation_(N) {
  require_odd_index(N, 1);
  const double l = lambda.value();
  m_.resize(slot(N) + 1);
  const ExtScalar m1 = ExtScalar::from_double(std::pow(1.0 + 6.0 * l * l, 2));
  m_[0] = m1;
  if (N >= 3) m_[slot(3)] = m1.pow(3) * delta_max_at(3, l, d0);
  for (int n = 5; n <= N; n += 2)
    m_[slot(n)] = m_[slot(n - 2)] * m1.pow(2) *
                  (static_cast<double>(n) * (n - 1) * delta_max_at(n, l, d0));
}

const ExtScalar& NormWeights::at(int n) const {
  if (n < 1 || n > truncation_ || n % 2 == 0)
    throw DomainError("weight index n=" + std::to_string(n) + " out of range");
  return m_[slot(n)];
}

namespace {

int checked_top(const GreenSequence& h, const NormWeights& w, int n_max) {
  if (!(h.coupling() == w.coupling()))
    throw ConsistencyError("sequence and weights have different lambda");
  const int top = n_max < 0 ? h.truncation() : std::min(n_max, h.truncation());
  if (top > w.truncation())
    throw ConsistencyError("weights do not cover the sequence");
  return top;
}

}  // namespace

double norm(const GreenSequence& h, const NormWeights& w, int n_max) {
  const int top = checked_top(h, w, n_max);
  double s = 0.0;
  for (int n = 1; n <= top; n += 2)
    if (!h[n].is_zero()) s = std::max(s, ratio(h[n].abs(), w[n]));
  return s;
}

double distance(const GreenSequence& a, const GreenSequence& b,
                const NormWeights& w, int n_max) {
  if (!(a.coupling() == b.coupling()))
    throw ConsistencyError("sequences have different lambda");
  const int top =
      std::min(checked_top(a, w, n_max), checked_top(b, w, n_max));
  double s = 0.0;
  for (int n = 1; n <= top; n += 2) {
    const ExtScalar d = a[n] - b[n];
    if (!d.is_zero()) s = std::max(s, ratio(d.abs(), w[n]));
  }
  return s;
}

BallSpec make_ball(const EnvelopeSet& env) { return {env.h0, 1.0 - env.d0}; }

bool in_ball(const GreenSequence& h, const BallSpec& ball,
             const NormWeights& w, const EnvelopeSet& env) {
  if (!check_membership(h, env).verdict) return false;
  return distance(h, ball.center, w) <= ball.rho;
}

double radius_at(int n, double lambda, double d0) {
  const double hi = delta_max_at(n, lambda, d0);
  return (hi - delta_min_at(n, lambda)) / hi;
}

double radius_sup(int n_max, double lambda, double d0) {
  require_odd_index(n_max, 3);
  double s = 0.0;
  for (int n = 3; n <= n_max; n += 2)
    s = std::max(s, radius_at(n, lambda, d0));
  return s;
}

}  // namespace phi4
