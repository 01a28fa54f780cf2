#include <doctest.h>

#include <cmath>

#include "phi4/banach.hpp"
#include "phi4/envelopes.hpp"
#include "phi4/errors.hpp"

using namespace phi4;

TEST_CASE("norm weights") {
  const Coupling l(0.05);
  const NormWeights w(l, 21);
  const double m1 = 1.030225;
  CHECK(w[1].to_double() == doctest::Approx(m1).epsilon(1e-14));
  const double m3 = 0.3 * m1 * m1 * m1;
  CHECK(w[3].to_double() == doctest::Approx(m3).epsilon(1e-14));
  CHECK(w[5].to_double() ==
        doctest::Approx(20.0 * (3.0 / 1.03) * m3 * m1 * m1).epsilon(1e-13));
  CHECK_THROWS(w.at(23));
  CHECK(norm_weights(l, 21)[21] == w[21]);
}

TEST_CASE("norm and distance") {
  const Coupling l(0.02);
  const auto env = build_envelopes(l, 41);
  const NormWeights w(l, 41);
  // Every envelope entry sits inside the weight |H_max| <= M_n.
  CHECK(norm(env.h_max.truncated(41), w) <= 1.0 + 1e-12);
  CHECK(norm(env.h0, w) <= 1.0);
  CHECK(distance(env.h0, env.h0, w) == 0.0);
  const auto hmin = env.h_min.truncated(41);
  const auto hmax = env.h_max.truncated(41);
  const double ab = distance(hmin, hmax, w);
  CHECK(ab == distance(hmax, hmin, w));
  CHECK(ab <= distance(hmin, env.h0, w) + distance(env.h0, hmax, w) + 1e-15);
  CHECK(distance(hmin, hmax, w, 9) <= ab);
  const NormWeights other(Coupling(0.03), 41);
  CHECK_THROWS_AS(distance(hmin, hmax, other), ConsistencyError);
}

TEST_CASE("ball") {
  const Coupling l(0.02);
  const auto env = build_envelopes(l, 41);
  const NormWeights w(l, 41);
  const auto ball = make_ball(env);
  CHECK(ball.rho == doctest::Approx(0.99));
  CHECK(in_ball(env.h0, ball, w, env));
  auto flipped = env.h0;
  flipped[7] = -flipped[7];
  CHECK_FALSE(in_ball(flipped, ball, w, env));
}

TEST_CASE("radius approaches 1 - d0") {
  // radius = s (1 - d0) / (1 + s), s = 3 Lambda n (n-1)
  for (int n : {5, 41, 2001}) {
    const double s = 3.0 * 0.05 * n * (n - 1);
    CHECK(radius_at(n, 0.05) ==
          doctest::Approx(s * 0.99 / (1.0 + s)).epsilon(1e-13));
  }
  CHECK(0.99 - radius_at(2001, 0.05) == doctest::Approx(1.65e-6).epsilon(1e-2));
  CHECK(radius_sup(2001, 0.05) == radius_at(2001, 0.05));
}
