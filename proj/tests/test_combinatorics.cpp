#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "phi4/combinatorics.hpp"
#include "phi4/errors.hpp"

using namespace phi4;

namespace {

// All ordered odd triples summing to n, collapsed by sorting.
std::set<std::tuple<int, int, int>> brute_triples(int n) {
  std::set<std::tuple<int, int, int>> s;
  for (int a = 1; a <= n; a += 2)
    for (int b = 1; a + b < n; b += 2) {
      const int c = n - a - b;
      if (c < 1 || c % 2 == 0) continue;
      int v[3] = {a, b, c};
      std::sort(v, v + 3, std::greater<>());
      s.insert({v[0], v[1], v[2]});
    }
  return s;
}

int ordered_count(int n) {
  int k = 0;
  for (int a = 1; a <= n; a += 2)
    for (int b = 1; a + b < n; b += 2)
      if ((n - a - b) % 2 == 1) ++k;
  return k;
}

}  // namespace

TEST_CASE("slot mapping") {
  CHECK(slot(1) == 0);
  CHECK(slot(3) == 1);
  CHECK(slot(41) == 20);
  CHECK(index_of_slot(20) == 41);
  CHECK_THROWS_AS(require_odd_index(4, 1), DomainError);
  CHECK_THROWS_AS(require_odd_index(3, 5), DomainError);
  CHECK_NOTHROW(require_odd_index(5, 5));
}

TEST_CASE("pairs") {
  const auto p = enumerate_pairs(7);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == PairPartition{1, 6});
  CHECK(p[2] == PairPartition{5, 2});
  CHECK(multinomial_weight(5, PairPartition{3, 2}).to_double() ==
        doctest::Approx(10.0));
  CHECK(multinomial_weight(5, PairPartition{1, 4}).to_double() ==
        doctest::Approx(5.0));
}

TEST_CASE("triples match brute force for odd n <= 101") {
  for (int n = 3; n <= 101; n += 2) {
    const auto t = enumerate_triples(n);
    const auto b = brute_triples(n);
    REQUIRE(t.size() == b.size());
    int orderings = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      CHECK(b.count({t[k].i1, t[k].i2, t[k].i3}) == 1);
      CHECK(t[k].i1 >= t[k].i2);
      CHECK(t[k].i2 >= t[k].i3);
      orderings += 6 / t[k].sigma;
      if (k > 0) {
        const auto& prev = t[k - 1];
        CHECK(std::tie(prev.i1, prev.i2) > std::tie(t[k].i1, t[k].i2));
      }
    }
    CHECK(orderings == ordered_count(n));
  }
}

TEST_CASE("small triple counts and the count formula") {
  CHECK(enumerate_triples(3).size() == 1);
  CHECK(enumerate_triples(5).size() == 1);
  CHECK(enumerate_triples(7).size() == 2);
  CHECK(enumerate_triples(9).size() == 3);
  CHECK(enumerate_triples(13).size() == 5);
  CHECK(enumerate_triples(15).size() == 7);
  CHECK(partition_count_formula(7) == 2.0);
  CHECK(partition_count_formula(9) == 3.0);
  // The formula overcounts from n = 11 on.
  CHECK(partition_count_formula(15) == doctest::Approx(8.0));
  CHECK(partition_count_formula(15) != enumerate_triples(15).size());
  CHECK_THROWS_AS(partition_count_formula(5), DomainError);
}

TEST_CASE("symmetry factors and weights") {
  CHECK(symmetry_factor(1, 1, 1) == 6);
  CHECK(symmetry_factor(3, 1, 1) == 2);
  CHECK(symmetry_factor(5, 3, 1) == 1);
  CHECK(multinomial_weight(3, TriplePartition{1, 1, 1, 6}).to_double() ==
        doctest::Approx(1.0));
  CHECK(multinomial_weight(5, TriplePartition{3, 1, 1, 2}).to_double() ==
        doctest::Approx(10.0));
}

TEST_CASE("weight sums match generating functions") {
  // sum over odd compositions of n!/(a! b! c!) = n! [x^n] sinh^3 x
  // = (3^n - 3)/4; pairs with j1 odd, j2 >= 2 even give 2^(n-1) - 1.
  for (int n = 3; n <= 31; n += 2) {
    double ts = 0.0;
    for (const auto& t : enumerate_triples(n))
      ts += multinomial_weight(n, t).to_double();
    CHECK(ts == doctest::Approx((std::pow(3.0, n) - 3.0) / 24.0).epsilon(1e-12));
    double ps = 0.0;
    for (const auto& p : enumerate_pairs(n))
      ps += multinomial_weight(n, p).to_double();
    CHECK(ps == doctest::Approx(std::pow(2.0, n - 1) - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("limit constants") {
  const auto c = limit_constants(11);
  CHECK(c[slot(1)] == 1.0);
  CHECK(c[slot(3)] == 1.0);
  CHECK(c[slot(5)] == doctest::Approx(3.0));
  CHECK(c[slot(7)] == doctest::Approx(12.0));
  CHECK(c[slot(9)] == doctest::Approx(55.0));
  CHECK(c[slot(11)] == doctest::Approx(273.0));
}

TEST_CASE("partition table") {
  const PartitionTable t(21);
  CHECK(t.pairs(5).size() == 2);
  CHECK(t.triples(9).size() == 3);
  // pair (j1; j2) = (1; 4) enters as H^6 H^2
  CHECK(t.pairs(5)[0].a == 5);
  CHECK(t.pairs(5)[0].b == 1);
  CHECK(std::exp(t.pairs(5)[0].logw) == doctest::Approx(5.0));
  CHECK_THROWS_AS(t.pairs(23), DomainError);
  const auto s = PartitionTable::shared(31);
  CHECK(s->n_max() >= 31);
  CHECK(PartitionTable::shared(11) == PartitionTable::shared(31));
}
