#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "phi4/envelopes.hpp"
#include "phi4/errors.hpp"
#include "phi4/verify.hpp"

using namespace phi4;

TEST_CASE("membership of the fundamental sequence") {
  const auto env = build_envelopes(Coupling(0.05), 41);
  const auto m = check_membership(env.h0, env);
  CHECK(m.verdict);
  CHECK(m.records.size() == 21);
  CHECK(m.first_n == 0);
}

TEST_CASE("membership reports the first injected fault") {
  const auto env = build_envelopes(Coupling(0.05), 41);
  auto h = env.h_max.truncated(41);
  h[7] = -h[7];
  const auto m = check_membership(h, env);
  CHECK_FALSE(m.verdict);
  CHECK(m.first_n == 7);
  CHECK(m.first_predicate == "sign_ok");

  auto g = env.h0;
  g[11] = g[11] * 10.0;
  const auto m2 = check_membership(g, env);
  CHECK_FALSE(m2.verdict);
  CHECK(m2.first_n == 11);
  // still inside the wide envelope, but delta_11 leaves its band
  CHECK(m2.first_predicate == "delta_in_band");

  auto big = env.h_max.truncated(41);
  big[3] = big[3] * 1.5;
  const auto m3 = check_membership(big, env);
  CHECK(m3.first_n == 3);
  CHECK(m3.first_predicate == "envelope_ok");
  // restricting the range hides the fault
  CHECK(check_membership(g, env, 9).verdict);
}

TEST_CASE("membership of the fixed point") {
  const auto r = solve(Coupling(0.01));
  const auto env = build_envelopes(Coupling(0.01), 41);
  CHECK(check_membership(r.fixed_point, env, 37).verdict);
}

TEST_CASE("small coupling limits") {
  const auto rep = check_small_lambda_limits(41, Coupling(1e-4));
  CHECK(rep.converged);
  CHECK(rep.ok);
  for (const auto& row : rep.rows) {
    CAPTURE(row.quantity);
    CAPTURE(row.n);
    CHECK(row.rel_error < row.tolerance);
  }
  CHECK_THROWS_AS(check_small_lambda_limits(41, Coupling(0.01)), DomainError);
}

TEST_CASE("monotonicity on the envelopes") {
  const auto rep = check_appendix_monotonicity(build_envelopes(Coupling(0.05), 41));
  CHECK(rep.rows.front().n == 7);
  CHECK(rep.rows.back().n == 37);
  CHECK(rep.a_decreasing);
  CHECK(rep.d_bracket);
  // Measured on the envelope data: the B and D ratios decrease.
  CHECK_FALSE(rep.b_increasing);
  CHECK_FALSE(rep.d_increasing);
  CHECK(rep.rows.front().b_ratio > rep.rows.back().b_ratio);
  CHECK(rep.d5_ratio > rep.d5_reference);

  // D_n shrinks with the coupling
  const auto small = check_appendix_monotonicity(build_envelopes(Coupling(0.001), 41));
  const auto big = check_appendix_monotonicity(build_envelopes(Coupling(0.04), 41));
  CHECK(small.rows.back().d_ratio * 0.003 * 37 * 36 <
        big.rows.back().d_ratio * 0.12 * 37 * 36);
}

TEST_CASE("tree term bounds") {
  for (double l : {0.01, 0.045}) {
    const auto rep = check_tree_term_bounds(build_envelopes(Coupling(l), 41));
    CHECK(rep.ok);
    CHECK(rep.rows.front().count == 1);
    CHECK(rep.rows.front().min_side == doctest::Approx(1.0));
    for (const auto& row : rep.rows) {
      CHECK(row.count == static_cast<int>(enumerate_triples(row.n).size()));
    }
  }
}

TEST_CASE("splitting identities") {
  const auto env = build_envelopes(Coupling(0.03), 41);
  const auto rep = check_splitting_identities(env.h0);
  CHECK(rep.ok);
  CHECK(rep.local_max_error < 1e-10);
  CHECK(rep.product_max_error < 1e-10);
}

TEST_CASE("figure functions") {
  const double l = 0.05;
  // hand evaluation at n = 7
  const double q = 72.0;
  CHECK(f_l(7, l, l) ==
        doctest::Approx(q / (1.0 + 3.0 * l * l * q) * (1.0 + 15.0 / 7 + 48.0 / 42)));
  const auto t = appendix_inequality_functions(Coupling(l));
  CHECK(t.rows.size() == 1998);
  CHECK(t.f_l_limit == doctest::Approx(133.3333333));
  CHECK(std::fabs(t.f_l_terminal_rel) < 5e-3);
  // f_L peaks at n = 11 before decreasing.
  CHECK_FALSE(t.f_l_decreasing);
  CHECK(t.f_l_first_increase == 11);
  CHECK(t.f_b_above_one);
  CHECK(t.f_b_decreasing);
  CHECK(t.f_b_terminal == doctest::Approx(1.0122).epsilon(1e-3));
  CHECK_THROWS_AS(appendix_inequality_functions(Coupling(l), 5, 11), DomainError);
}

TEST_CASE("contraction constants") {
  const auto c = contraction_constants(Coupling(0.045));
  const double m1 = std::pow(1.0 + 6.0 * 0.045 * 0.045, 2);
  CHECK(c.m1 == doctest::Approx(m1));
  CHECK(c.k1 == doctest::Approx(12.0 * 0.045 * 0.045 * m1 * m1));
  CHECK(c.k1 == doctest::Approx(0.0249).epsilon(5e-3));
  CHECK(c.k3 == doctest::Approx(9.0 * 0.045 * m1 * (1.0 + 0.18)));
  CHECK(c.k5 == doctest::Approx((1.0 + c.k3 + 2.0 * c.k1) / 20.0));
  CHECK(c.k5 + c.k5_0 < 0.25);
  CHECK(c.closed_form_error < 1e-14);
  CHECK(c.kn.size() == 98);
  CHECK(c.kn.back() == doctest::Approx(c.k_limit_recursion).epsilon(1e-12));
  CHECK(c.k_limit_recursion > c.k_limit_stated);
  CHECK(c.k_sup == doctest::Approx(0.096).epsilon(5e-3));
  CHECK(c.k0_sup == doctest::Approx(0.094).epsilon(5e-3));
  CHECK(c.grid_max == doctest::Approx(0.05));
  CHECK(c.applicable);
  CHECK(c.sum_below_one);
  CHECK_FALSE(contraction_constants(Coupling(0.05)).applicable);
}

TEST_CASE("suite gating outside the certified range") {
  SuiteOptions o;
  o.contraction_trials = 4;
  const auto checks = run_verification(Coupling(0.2), o);
  int skipped = 0;
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.status != "");
    if (c.threshold > 0.0) {
      CHECK(c.status == "skipped");
      ++skipped;
    }
  }
  CHECK(skipped > 10);
  const auto it = std::find_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.name == "envelope_ordering";
  });
  REQUIRE(it != checks.end());
  CHECK(it->status == "pass");
}
