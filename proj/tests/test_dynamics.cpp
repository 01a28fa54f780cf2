#include <doctest.h>

#include <cmath>
#include <random>

#include "phi4/dynamics.hpp"
#include "phi4/envelopes.hpp"
#include "phi4/errors.hpp"

using namespace phi4;

namespace {

// Lambda = 0.05, H^2 = 1, H^4 = -0.3, H^6 = 0.2, zero tail.
GreenSequence toy() {
  GreenSequence h(Coupling(0.05), 5);
  h[1] = ExtScalar::from_double(1.0);
  h[3] = ExtScalar::from_double(-0.3);
  h[5] = ExtScalar::from_double(0.2);
  h.set_closure({ClosurePolicy::zero_tail, {}});
  return h;
}

}  // namespace

TEST_CASE("tree terms on a hand-computed sequence") {
  const auto h = toy();
  const auto t3 = tree_terms(h, 3);
  CHECK(t3.a.to_double() == doctest::Approx(-0.01));
  CHECK(t3.b.to_double() == doctest::Approx(0.135));
  CHECK(t3.c.to_double() == doctest::Approx(-0.3));
  const auto t5 = tree_terms(h, 5);
  CHECK(t5.a.is_zero());
  // B^6 = -3 Lambda (5 H^6 H^2 + 10 H^4 H^4)
  CHECK(t5.b.to_double() == doctest::Approx(-0.285));
  // C^6 = -6 Lambda * 10 H^4 (H^2)^2
  CHECK(t5.c.to_double() == doctest::Approx(0.9));
}

TEST_CASE("D functional") {
  const auto h = toy();
  CHECK(d_functional(h, 3).value ==
        doctest::Approx(0.3 * (1.5 - 0.2 / 1.8)).epsilon(1e-14));
  CHECK(d_functional(h, 5).value == doctest::Approx(0.285 / 0.2));
  auto bad = h;
  bad[5] = -bad[5];
  CHECK_THROWS_AS(d_functional(bad, 5), MembershipError);
  const auto table = PartitionTable::shared(9);
  // flipping H^6 changes B^6 to -3 Lambda (-5 * 0.2 + 10 * 0.09)
  CHECK(d_value(bad, 5, *table) == doctest::Approx(0.015 / 0.2));
  bad[5] = ExtScalar{};
  CHECK_THROWS_AS(d_value(bad, 5, *table), DegenerateInputError);
}

TEST_CASE("closure handling at the top level") {
  auto h = toy();
  h.set_closure({ClosurePolicy::strict, {}});
  CHECK_THROWS_AS(tree_a(h, 5), TruncationError);
  CHECK_NOTHROW(tree_a(h, 3));
  h.set_closure({ClosurePolicy::bracket, {}});
  CHECK_THROWS_AS(tree_a(h, 5), DomainError);
  h.set_closure({ClosurePolicy::envelope_max, ExtScalar::from_double(-0.5)});
  CHECK(tree_a(h, 5).to_double() == doctest::Approx(0.025));
  CHECK_THROWS_AS(tree_b(h, 7, *PartitionTable::shared(9)), DomainError);
  CHECK_NOTHROW(tree_c(h, 7, *PartitionTable::shared(9)));
}

TEST_CASE("original map by hand") {
  const auto m = apply_map_original(toy());
  CHECK(m[1].to_double() == doctest::Approx(1.015));
  CHECK(m[3].to_double() == doctest::Approx(-0.175));
  CHECK(m[5].to_double() == doctest::Approx(0.615));
}

TEST_CASE("sweeping map by hand") {
  const auto m = apply_map_star(toy());
  const double h2 = 1.015;
  const double d3 = 0.3 * (1.5 - 0.2 / 1.8);
  const double h4 = -0.3 * h2 * h2 * h2 / (1.0 + d3);
  CHECK(m[1].to_double() == doctest::Approx(h2));
  CHECK(m[3].to_double() == doctest::Approx(h4).epsilon(1e-14));
  // C^6 on primed entries, D_5 on the input
  const double h6 = -0.3 * 10.0 * h4 * h2 * h2 / (1.0 + 1.425);
  CHECK(m[5].to_double() == doctest::Approx(h6).epsilon(1e-14));
}

TEST_CASE("sweeping map stability traps") {
  auto h = toy();
  // H^2' = 1 - Lambda H^4 < 0
  h[3] = ExtScalar::from_double(40.0);
  CHECK_THROWS_AS(apply_map_star(h), StabilityError);
  // guard 0 disables the sign traps
  CHECK_NOTHROW(apply_map_star(h, Exec::serial, 0));
  try {
    apply_map_star(h);
  } catch (const StabilityError& e) {
    CHECK(e.n() == 1);
    CHECK(e.iteration() == 0);
  }
}

TEST_CASE("residual") {
  // Free sequence: H^2 = 1, everything else zero.  r_3 is absolute.
  GreenSequence h(Coupling(0.05), 5);
  h[1] = ExtScalar::one();
  h.set_closure({ClosurePolicy::zero_tail, {}});
  const auto r = residual(h);
  CHECK(r.r[1] == 0.0);
  CHECK(r.r[3] == doctest::Approx(0.3));
  CHECK(r.contaminated(5));
  CHECK_FALSE(r.contaminated(1));
  h.set_closure({ClosurePolicy::strict, {}});
  const auto rs = residual(h);
  CHECK(std::isnan(rs.r[5]));
  CHECK(rs.max_upto(5) == doctest::Approx(0.3));
}

TEST_CASE("splitting recursion round trip") {
  const Coupling l(0.03);
  const auto env = delta_envelopes(l, 41);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    SplittingSequence d(41);
    for (int n = 1; n <= 41; n += 2)
      d[n] = std::uniform_real_distribution<double>(env.min[n], env.max[n])(rng);
    const auto h = build_from_delta(l, d);
    const auto back = extract_delta(h);
    for (int n = 1; n <= 41; n += 2) {
      CHECK(back[n] == doctest::Approx(d[n]).epsilon(1e-12));
      CHECK(h[n].sign() == good_sign(n));
    }
  }
}
