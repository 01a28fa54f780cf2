#include <doctest.h>

#include <cmath>

#include "phi4/dynamics.hpp"
#include "phi4/envelopes.hpp"
#include "phi4/errors.hpp"
#include "phi4/verify.hpp"

using namespace phi4;

TEST_CASE("delta envelopes at 0.05") {
  const double l = 0.05;
  CHECK(delta_max_at(3, l) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(delta_min_at(3, l) == doctest::Approx(0.3 / 1.45).epsilon(1e-14));
  CHECK(delta_max_at(5, l) == doctest::Approx(3.0 / 1.03).epsilon(1e-14));
  CHECK(delta_min_at(5, l) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(delta_max_at(1, l) == doctest::Approx(0.6045).epsilon(1e-12));
  CHECK(delta_min_at(1, l) == 0.0);
  // s / (1 + s d0) approaches 1/d0 from below
  CHECK(delta_max_at(2001, l) < 100.0);
  CHECK(delta_max_at(2001, l) > 99.9);
  CHECK(delta_min_at(2001, l) < 1.0);
  const auto e = delta_envelopes(Coupling(l), 41);
  for (int n = 3; n <= 41; n += 2) CHECK(e.min[n] < e.max[n]);
}

TEST_CASE("extremal sequences at 0.05") {
  const auto p = build_extremal(Coupling(0.05), 11);
  CHECK(p.h_max[1].to_double() == doctest::Approx(1.030225).epsilon(1e-13));
  CHECK(p.h_min[1].to_double() == 1.0);
  CHECK(p.h_max[3].to_double() ==
        doctest::Approx(-0.3 * std::pow(1.030225, 3)).epsilon(1e-13));
  CHECK(p.h_min[3].to_double() == doctest::Approx(-0.3 / 1.45).epsilon(1e-13));
  // C^6_min = -6 Lambda * 10 H^4 (H^2)^2 and H^6 = delta_5 C^6 / (60 Lambda)
  const double c6 = -0.3 * 10.0 * (-0.3 / 1.45);
  CHECK(c6 == doctest::Approx(0.6206897).epsilon(1e-7));
  CHECK(p.h_min[5].to_double() ==
        doctest::Approx(0.75 * c6 / 3.0).epsilon(1e-13));
  for (int n = 1; n <= 11; n += 2) {
    CHECK(p.h_max[n].sign() == good_sign(n));
    CHECK(p.h_min[n].sign() == good_sign(n));
    CHECK(compare_abs(p.h_min[n], p.h_max[n]) < 0);
  }
}

TEST_CASE("envelope set and fundamental sequence") {
  const Coupling l(0.05);
  const auto env = build_envelopes(l, 41);
  CHECK(env.h_max.truncation() == 43);
  CHECK(env.h_min.truncation() == 43);
  CHECK(env.h0.truncation() == 41);
  CHECK(env.h0[1].to_double() ==
        doctest::Approx(1.0 + 0.015 / 1.45).epsilon(1e-13));
  const auto d = fundamental_delta(env);
  CHECK(d[1] == doctest::Approx(0.3 / 1.45).epsilon(1e-13));
  const double h6 = 0.75 * 0.3 * 10.0 * (0.3 / 1.45) / 3.0;
  const double m3 = 0.3 * std::pow(1.030225, 3);
  CHECK(m3 == doctest::Approx(0.3280330).epsilon(1e-7));
  CHECK(d[3] == doctest::Approx(0.3 / (1.45 - 0.05 * h6 / m3)).epsilon(1e-12));
  for (int n = 3; n <= 41; n += 2) {
    CHECK(d[n] >= env.delta_min[n]);
    CHECK(d[n] <= env.delta_max[n]);
  }
  CHECK(check_membership(env.h0, env).verdict);
  // extract_delta recovers the construction
  const auto back = extract_delta(env.h0);
  for (int n = 1; n <= 41; n += 2)
    CHECK(back[n] == doctest::Approx(d[n]).epsilon(1e-11));
}

TEST_CASE("fundamental sequence errors") {
  const auto env = build_envelopes(Coupling(0.05), 21);
  CHECK_THROWS_AS(build_fundamental(Coupling(0.04), env), ConsistencyError);
  // Far outside the certified range delta_{5,0} leaves its band.
  try {
    build_envelopes(Coupling(0.2), 21);
    FAIL("expected MembershipError");
  } catch (const MembershipError& e) {
    CHECK(e.n() == 5);
  }
  CHECK_THROWS_AS(build_envelopes(Coupling(0.05), 21, 1.5), DomainError);
  CHECK_THROWS_AS(build_envelopes(Coupling(0.05), 21, 0.0), DomainError);
  CHECK_THROWS_AS(Coupling(-1.0), DomainError);
  CHECK_THROWS_AS(Coupling(0.0), DomainError);
}

TEST_CASE("sweeping factors") {
  const auto env = build_envelopes(Coupling(0.02), 21);
  const auto y = sweeping_factors(env.h0);
  CHECK(std::isnan(y[1]));
  CHECK(y[3] == doctest::Approx(1.0 / 6.0));
  CHECK(y[5] == doctest::Approx(1.0 / 20.0));
  for (int n = 7; n <= 21; n += 2) CHECK(y[n] > 0.0);
}

TEST_CASE("closure tails") {
  const auto env = build_envelopes(Coupling(0.02), 21);
  CHECK(closure_tail(env, ClosurePolicy::zero_tail).is_zero());
  const auto hi = closure_tail(env, ClosurePolicy::envelope_max);
  const auto lo = closure_tail(env, ClosurePolicy::envelope_min);
  CHECK(hi.sign() == good_sign(23));
  CHECK(lo.sign() == good_sign(23));
  CHECK(compare_abs(lo, hi) < 0);
  // tail / H0^{N+1} grows like n^2: of order Lambda-scaled n(n-1)
  CHECK(ratio(hi.abs(), env.h0[21].abs()) > 1.0);
}
