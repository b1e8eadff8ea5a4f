#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace fca;
using fca::testing::sample_context;

TEST_CASE("enumerate_concepts counts", "[lattice]") {
  CHECK(enumerate_concepts(contranominal(3)).size() == 8);
  CHECK(enumerate_concepts(family_k1(2)).size() == 7);
  CHECK(enumerate_concepts(sample_context()).size() == 7);
  CHECK(enumerate_concepts(FormalContext{}).size() == 1);
}

TEST_CASE("sample lattice has the centre concept", "[lattice]") {
  const auto k = sample_context();
  const auto lat = enumerate_concepts(k);
  const auto i = lat.index_of(k.objects({"c", "g"}));
  REQUIRE(i);
  CHECK(lat.intent(*i) == k.attributes({"u", "v"}));
  for (const auto& c : lat.concepts()) CHECK(is_concept_of(k, c));
}

TEST_CASE("brute_force_concepts", "[lattice]") {
  CHECK(brute_force_concepts(family_k1(3)).size() == 13);
  const auto empty = brute_force_concepts(FormalContext{});
  REQUIRE(empty.size() == 1);
  CHECK(empty.extent(0).width() == 0);
  const auto k = sample_context();
  CHECK(brute_force_concepts(add_attribute(k, "m", k.objects({"a", "b", "c"}))).size() == 14);
  CHECK(brute_force_concepts(add_attribute(k, "m", k.objects({"a", "c"}))).size() == 11);
  CHECK_THROWS_AS(brute_force_concepts(contranominal(21)), CapacityError);
}

TEST_CASE("degenerate contexts have a single concept", "[lattice]") {
  const FormalContext no_objects({}, {"p", "q"}, std::vector<AttributeSet>{});
  const auto lat = enumerate_concepts(no_objects);
  REQUIRE(lat.size() == 1);
  CHECK(lat.intent(0) == AttributeSet::full(2));

  const FormalContext no_attributes({"x", "y"}, {}, {AttributeSet(0), AttributeSet(0)});
  const auto lat2 = enumerate_concepts(no_attributes);
  REQUIRE(lat2.size() == 1);
  CHECK(lat2.extent(0) == ObjectSet::full(2));
}

TEST_CASE("concept cap", "[lattice]") {
  EnumerationOptions opts;
  opts.max_concepts = 100;
  CHECK_THROWS_AS(enumerate_concepts(contranominal(7), opts), CapacityError);
  CHECK(count_concepts(contranominal(6), opts) == 64);
}

TEST_CASE("order_leq", "[lattice]") {
  const auto k = sample_context();
  const auto bottom = generated_concept(k, k.objects({"g"}));
  const auto centre = generated_concept(k, k.objects({"c", "g"}));
  CHECK(order_leq(bottom, centre));
  CHECK(order_leq(centre, centre));
  const auto ag = generated_concept(k, k.objects({"a", "g"}));
  const auto bcg = generated_concept(k, k.objects({"b", "c", "g"}));
  CHECK(ag.intent == k.attributes({"u", "a"}));
  CHECK(bcg.intent == k.attributes({"v"}));
  CHECK_FALSE(order_leq(ag, bcg));
  CHECK_FALSE(order_leq(bcg, ag));

  const auto other = generated_concept(contranominal(4), ObjectSet(4));
  CHECK_THROWS_AS(order_leq(bottom, other), ContextMismatchError);
}

TEST_CASE("covering_relation", "[lattice]") {
  CHECK(covering_relation(enumerate_concepts(contranominal(2))).size() == 4);
  CHECK(covering_relation(enumerate_concepts(contranominal(4))).size() == 32);
  CHECK(covering_relation(enumerate_concepts(FormalContext{})).empty());
  // sample context: hand-checked Hasse diagram of the 7-element lattice
  CHECK(covering_relation(enumerate_concepts(sample_context())).size() == 9);
}

TEST_CASE("lattice order is canonical and deterministic", "[lattice]") {
  const auto k = family_kk(5, 2);
  const auto a = enumerate_concepts(k);
  const auto b = enumerate_concepts(k);
  CHECK(a == b);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(lectic_less(a.extent(i - 1), a.extent(i)));
}

TEST_CASE("enumeration matches the brute-force oracle", "[lattice][property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    const auto ctx = fca::testing::random_context(rng, 10, 10);
    const auto fast = enumerate_concepts(ctx);
    const auto slow = brute_force_concepts(ctx);
    REQUIRE(fast == slow);
    CHECK(fca::testing::extent_indices(fast) == fca::testing::naive_extents(ctx));
  }
}

TEST_CASE("lattice invariants on random contexts", "[lattice][property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const auto ctx = fca::testing::random_context(rng, 8, 8);
    const auto lat = enumerate_concepts(ctx);

    // top and bottom
    CHECK(lat.contains_extent(ctx.all_objects()));
    CHECK(lat.contains_extent(ctx.derive(ctx.all_attributes())));

    // extents closed under intersection; intents pairwise distinct
    for (std::size_t i = 0; i < lat.size(); ++i) {
      for (std::size_t j = i + 1; j < lat.size(); ++j) {
        CHECK(lat.contains_extent(lat.extent(i) & lat.extent(j)));
        CHECK(lat.intent(i) != lat.intent(j));
      }
    }

    // transitive closure of the covers is the full order
    const auto edges = covering_relation(lat);
    const std::size_t n = lat.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& e : edges) {
      CHECK(lat.leq(e.lower, e.upper));
      CHECK(e.lower != e.upper);
      reach[e.lower][e.upper] = true;
    }
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i][m]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[m][j]) reach[i][j] = true;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(reach[i][j] == order_leq(lat.concept_at(i), lat.concept_at(j)));
      }
    }
    // no cover edge is implied by two others
    for (const auto& e : edges) {
      for (std::size_t m = 0; m < n; ++m) {
        if (m == e.lower || m == e.upper) continue;
        CHECK_FALSE((lat.leq(e.lower, m) && lat.leq(m, e.upper)));
      }
    }
  }
}

TEST_CASE("contranominal scale has 2^n concepts", "[lattice]") {
  for (std::size_t n = 1; n <= 14; ++n) {
    CHECK(count_concepts(contranominal(n)) == (std::uint64_t{1} << n));
  }
}
