#ifndef PHI4_BANACH_HPP
#define PHI4_BANACH_HPP

#include <vector>

#include "phi4/envelopes.hpp"
#include "phi4/sequence.hpp"

namespace phi4 {

// M_1 = (1 + 6 Lambda^2)^2, M_3 = delta_{3,max} M_1^3,
// M_n = n (n-1) delta_{n,max} M_{n-2} M_1^2.
class NormWeights {
 public:
  NormWeights(Coupling lambda, int N, double d0 = kDefaultD0);

  Coupling coupling() const { return lambda_; }
  int truncation() const { return truncation_; }
  const ExtScalar& operator[](int n) const { return m_[slot(n)]; }
  const ExtScalar& at(int n) const;

 private:
  Coupling lambda_;
  int truncation_;
  std::vector<ExtScalar> m_;
};

inline NormWeights norm_weights(Coupling lambda, int N,
                                double d0 = kDefaultD0) {
  return NormWeights(lambda, N, d0);
}

// sup over odd n <= n_max of |H^{n+1}| / M_n (n_max < 0: all stored n).
double norm(const GreenSequence& h, const NormWeights& w, int n_max = -1);
double distance(const GreenSequence& a, const GreenSequence& b,
                const NormWeights& w, int n_max = -1);

struct BallSpec {
  GreenSequence center;
  double rho;
};

// Ball of radius 1 - d0 around the fundamental sequence.
BallSpec make_ball(const EnvelopeSet& env);

// Admissible-set membership and distance to the center at most rho.
bool in_ball(const GreenSequence& h, const BallSpec& ball,
             const NormWeights& w, const EnvelopeSet& env);

// (delta_{n,max} - delta_{n,min}) / delta_{n,max}
double radius_at(int n, double lambda, double d0 = kDefaultD0);
// Largest radius_at over odd n in [3, n_max].
double radius_sup(int n_max, double lambda, double d0 = kDefaultD0);

}  // namespace phi4

#endif
