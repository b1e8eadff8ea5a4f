#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"

using namespace fca;
using fca::testing::sample_context;

namespace {

GeneralizationScheme random_partition(std::mt19937_64& rng, const FormalContext& ctx, GeneralizationMode mode) {
  std::vector<std::string> names = ctx.attribute_names();
  std::shuffle(names.begin(), names.end(), rng);
  GeneralizationScheme s;
  s.mode = mode;
  std::uniform_int_distribution<std::size_t> size(1, 3);
  for (std::size_t i = 0; i < names.size();) {
    const std::size_t take = std::min(size(rng), names.size() - i);
    AttributeBlock block;
    block.members.assign(names.begin() + static_cast<std::ptrdiff_t>(i),
                         names.begin() + static_cast<std::ptrdiff_t>(i + take));
    s.blocks.push_back(std::move(block));
    i += take;
  }
  return s;
}

}  // namespace

TEST_CASE("generalize K1_2 with exists", "[generalization]") {
  const auto k = family_k1(2);
  const auto ge = generalize(k, merge_scheme(k, "m12", {"m1", "m2"}));
  CHECK(ge.attribute_names() == std::vector<std::string>{"1", "2", "m12"});
  CHECK(ge == FormalContext::from_crosses({"1", "2", "g1"}, {"1", "2", "m12"}, {".XX", "X.X", "XX."}));
  CHECK(count_concepts(ge) == 8);
}

TEST_CASE("generalize K1_2 with forall empties the merged column", "[generalization]") {
  const auto k = family_k1(2);
  const auto gf = generalize(k, merge_scheme(k, "m12", {"m1", "m2"}, ForallMode{}));
  CHECK(gf.column(2).none());
  CHECK(count_concepts(gf) == 5);
  CHECK(brute_force_concepts(gf).size() == 5);
}

TEST_CASE("identity scheme copies the context", "[generalization]") {
  const auto k = sample_context();
  for (GeneralizationMode mode : {GeneralizationMode{ExistsMode{}}, GeneralizationMode{ForallMode{}},
                                  GeneralizationMode{AlphaMode{1, 3}}}) {
    CHECK(generalize(k, identity_scheme(k, mode)) == k);
  }
}

TEST_CASE("default block labels join members", "[generalization]") {
  const auto k = sample_context();
  GeneralizationScheme s;
  s.blocks = {{"", {"v", "u"}}, {"", {"a"}}, {"b", {"b"}}};
  CHECK(generalize(k, s).attribute_names() == std::vector<std::string>{"v+u", "a", "b"});
}

TEST_CASE("schemes must partition the attributes", "[generalization]") {
  const auto k = sample_context();
  GeneralizationScheme overlap;
  overlap.blocks = {{"x", {"v", "u"}}, {"y", {"u", "a", "b"}}};
  CHECK_THROWS_AS(generalize(k, overlap), SchemeError);
  GeneralizationScheme missing;
  missing.blocks = {{"x", {"v", "u"}}};
  CHECK_THROWS_AS(generalize(k, missing), SchemeError);
  GeneralizationScheme unknown;
  unknown.blocks = {{"x", {"v", "u", "a", "b", "zz"}}};
  CHECK_THROWS_AS(generalize(k, unknown), SchemeError);
  CHECK_THROWS_AS(generalize(k, identity_scheme(k, AlphaMode{0, 1})), ParameterError);
  CHECK_THROWS_AS(generalize(k, identity_scheme(k, AlphaMode{3, 2})), ParameterError);
  CHECK_THROWS_AS(generalize(k, identity_scheme(k, AlphaMode{1, 0})), ParameterError);
}

TEST_CASE("alpha threshold uses exact rational comparison", "[generalization]") {
  const auto k = FormalContext::from_crosses({"x", "y", "z"}, {"p", "q", "r"}, {"XX.", "X..", "..."});
  auto column = [&](AlphaMode alpha) {
    return generalize(k, merge_scheme(k, "s", {"p", "q", "r"}, alpha)).column(0);
  };
  CHECK(column({2, 3}) == k.objects({"x"}));       // 2/3 >= 2/3
  CHECK(column({1, 3}) == k.objects({"x", "y"}));  // 1/3 >= 1/3
  CHECK(column({667, 1000}) == k.no_objects());    // 2/3 < 0.667
  CHECK(column({1, 1}) == k.no_objects());
}

TEST_CASE("alpha agrees with exists and forall at the extremes", "[generalization][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ctx = fca::testing::random_context(rng, 8, 8);
    auto scheme = random_partition(rng, ctx, ExistsMode{});
    std::size_t max_block = 1;
    for (const auto& b : scheme.blocks) max_block = std::max(max_block, b.members.size());
    const auto exists = generalize(ctx, scheme);
    scheme.mode = ForallMode{};
    const auto forall = generalize(ctx, scheme);
    scheme.mode = AlphaMode{1, max_block};
    CHECK(generalize(ctx, scheme) == exists);
    scheme.mode = AlphaMode{1, 1};
    CHECK(generalize(ctx, scheme) == forall);
  }
}

TEST_CASE("forall generalization never grows the lattice", "[generalization][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ctx = fca::testing::random_context(rng, 8, 8);
    const auto scheme = random_partition(rng, ctx, ForallMode{});
    CHECK(count_concepts(generalize(ctx, scheme)) <= count_concepts(ctx));
  }
}

TEST_CASE("phi_a examples", "[generalization]") {
  const auto k = sample_context();
  const auto left = add_attribute(k, "m", k.objects({"a", "b", "c"}));
  const auto right = add_attribute(k, "m", k.objects({"a", "c"}));

  const auto bottom = generated_concept(k, k.objects({"g"}));
  const auto img = phi_a(k, left, "m", bottom);
  CHECK(img.extent == k.objects({"g"}));
  CHECK(img.intent == left.attributes({"v", "u", "a", "b"}));
  CHECK(is_concept_of(left, img));

  // g is in every extent and not in m', so every concept takes the second branch
  for (const auto& c : enumerate_concepts(k).concepts()) {
    const auto image = phi_a(k, left, "m", c);
    CHECK(image.extent == c.extent);
    CHECK_FALSE(image.intent.test(4));
  }

  const auto ag = generated_concept(k, k.objects({"a", "g"}));
  const auto img2 = phi_a(k, right, "m", ag);
  CHECK(img2.extent == k.objects({"a", "g"}));
  CHECK(img2.intent == right.attributes({"u", "a"}));
  CHECK(enumerate_concepts(right).contains_extent(img2.extent));

  // a context where the first branch fires: a' contains the extent
  const auto k00 = remove_attributes(family_k1(3), {"m1", "m2"});
  const auto ka = add_attribute(k00, "top", k00.all_objects());
  const auto c = generated_concept(k00, k00.objects({"1", "g1"}));
  const auto img3 = phi_a(k00, ka, "top", c);
  CHECK(img3.intent.test(ka.attribute_at("top")));
  CHECK(is_concept_of(ka, img3));

  Concept bogus{k.objects({"c"}), k.attributes({"u", "v"}), k.id()};
  CHECK_THROWS_AS(phi_a(k, left, "m", bogus), ContractError);
}

TEST_CASE("new_extents examples", "[generalization]") {
  const auto k13 = family_k1(3);
  const auto k00 = remove_attributes(k13, {"m1", "m2"});
  CHECK(new_extents(k00, k13.column(k13.attribute_at("m2"))).size() == 4);

  const auto k02 = remove_attributes(k13, {"m1"});
  const ObjectSet m1 = k13.column(k13.attribute_at("m1"));
  const auto h = new_extents(k02, m1);
  REQUIRE(h.size() == 1);
  CHECK(h[0] == m1);

  CHECK(new_extents(sample_context(), ObjectSet::full(4)).empty());
  CHECK_THROWS_AS(new_extents(sample_context(), ObjectSet(3)), DimensionError);
}

TEST_CASE("doubling_condition and check_doubling", "[generalization]") {
  const auto k = sample_context();
  CHECK(doubling_condition(k, k.objects({"a", "b", "c"})));
  CHECK(doubling_condition(k, k.objects({"a", "c"})));
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto c = contranominal(n);
    CHECK_FALSE(doubling_condition(c, ObjectSet(n)));
    CHECK_FALSE(doubling_condition(c, ObjectSet::full(n).reset(0)));
  }

  CHECK(check_doubling(k, k.objects({"a", "b", "c"})));
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto k1 = family_k1(n);
    const auto k00 = remove_attributes(k1, {"m1", "m2"});
    ObjectSet s_n = k00.all_objects();
    s_n.reset(k00.object_at("g1"));
    CHECK(check_doubling(k00, s_n));
  }
  const FormalContext single({"g"}, {}, {AttributeSet(0)});
  CHECK(check_doubling(single, ObjectSet(1)));

  CHECK_THROWS_AS(check_doubling(k, k.objects({"a", "c"})), ContractError);
  CHECK_THROWS_AS(check_doubling(contranominal(3), ObjectSet::full(3)), ContractError);
}

TEST_CASE("exists_bound", "[generalization]") {
  CHECK(exists_bound(1, 2) == 3);
  for (std::uint64_t n = 0; n < 20; ++n) CHECK(exists_bound(0, n) == 0);
  CHECK(exists_bound(2, 2) == 9);
  CHECK(exists_bound(31, 31) == ((std::uint64_t{1} << 31) - 1) * ((std::uint64_t{1} << 31) - 1));
  CHECK_THROWS_AS(exists_bound(40, 23), CapacityError);
}

TEST_CASE("pair_increase_report on the families", "[generalization]") {
  const auto r3 = pair_increase_report(family_k1(3), "m1", "m2");
  CHECK(r3.realized_increase == 3);
  CHECK(r3.upper_bound == 3);
  CHECK(r3.h_a == 2);
  CHECK(r3.h_b == 4);
  CHECK(r3.h_a_and_b == 1);
  CHECK(r3.h_a_or_b == 8);
  CHECK(r3.h_pair == 5);
  CHECK(r3.disjoint);
  CHECK(r3.identity_holds());
  CHECK(r3.concepts_initial == 13);
  CHECK(r3.concepts_generalized == 16);

  const auto r4 = pair_increase_report(family_kk(4, 2), "m1", "m2");
  CHECK(r4.realized_increase == 9);
  CHECK(r4.upper_bound == 9);
  CHECK(r4.identity_holds());

  CHECK_THROWS_AS(pair_increase_report(family_k1(3), "m1", "zz"), LookupError);
  CHECK_THROWS_AS(pair_increase_report(family_k1(3), "m1", "m1"), ParameterError);
}

TEST_CASE("pair_increase_report with duplicate columns", "[generalization]") {
  const auto base = remove_attributes(family_kk(4, 2), {"m2"});
  const auto k = add_attribute(base, "m1b", base.column(base.attribute_at("m1")));
  const auto r = pair_increase_report(k, "m1", "m1b");
  CHECK(r.h_a == r.h_b);
  CHECK(r.h_a == r.h_a_and_b);
  CHECK(r.h_a == r.h_a_or_b);
  CHECK(r.realized_increase == 0);
  CHECK(r.identity_holds());
}

TEST_CASE("pair identity h(a,b) = h(a)+h(b)-h(a^b) is not universal", "[generalization]") {
  // K00 has a single extent G; a' = {1} and b' = {2} each add one extent and
  // a' ∩ b' = ∅ adds a third, so |B(K12)| = 4 while the formula gives 1 + 1.
  const auto k = FormalContext::from_crosses({"1", "2", "3"}, {"a", "b"}, {"X.", ".X", ".."});
  const auto r = pair_increase_report(k, "a", "b");
  CHECK(r.concepts_removed == 1);
  CHECK(r.concepts_initial == 4);
  CHECK(r.h_a == 1);
  CHECK(r.h_b == 1);
  CHECK(r.h_a_and_b == 1);
  CHECK(r.h_pair == 1);
  CHECK(r.pair_gain() == 3);
  CHECK_FALSE(r.identity_holds());
  CHECK(r.realized_increase == -2);
  CHECK(r.predicted_increase() == 0);
}

TEST_CASE("single-attribute propositions on random contexts", "[generalization][property]") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 300; ++trial) {
    const auto k = fca::testing::random_context(rng, 8, 8);
    const auto a_ext = fca::testing::random_subset<ObjectTag>(rng, k.num_objects());
    const auto ka = add_attribute(k, "new", a_ext);
    const auto lat = enumerate_concepts(k);
    const auto lat_a = enumerate_concepts(ka);

    // phi_a is an injection into genuine concepts of K_a
    std::set<std::vector<std::size_t>> images;
    for (const auto& c : lat.concepts()) {
      const auto img = phi_a(k, ka, "new", c);
      CHECK(is_concept_of(ka, img));
      CHECK(lat_a.contains_extent(img.extent));
      images.insert(img.extent.indices());
    }
    CHECK(images.size() == lat.size());

    // the gain is exactly h(a), and never more than |B(K)|
    const auto h = new_extents(lat, a_ext);
    CHECK(lat_a.size() - lat.size() == h.size());
    CHECK(h.size() <= lat.size());

    // doubling criterion against an exhaustive extent scan
    bool every_meet_new = true;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (lat.contains_extent(lat.extent(i) & a_ext)) every_meet_new = false;
    }
    CHECK(doubling_condition(k, a_ext) == every_meet_new);

    // exact doubling when a' = G ∖ ∅″
    const auto bottom = k.close(k.no_objects());
    if (bottom.any()) CHECK(check_doubling(k, bottom.complement()));
  }
}

TEST_CASE("pair accounting invariants on random contexts", "[generalization][property]") {
  std::mt19937_64 rng(271);
  int disjoint_pairs = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto k = fca::testing::random_context(rng, 7, 7);
    for (std::size_t i = 0; i < k.num_attributes(); ++i) {
      for (std::size_t j = i + 1; j < k.num_attributes(); ++j) {
        const auto r = pair_increase_report(k, k.attribute_names()[i], k.attribute_names()[j]);
        CHECK(r.h_pair == static_cast<std::int64_t>(r.h_a + r.h_b) - static_cast<std::int64_t>(r.h_a_and_b));
        CHECK(r.realized_increase <= static_cast<std::int64_t>(r.upper_bound));
        CHECK(r.concepts_generalized == r.concepts_removed + r.h_a_or_b);
        CHECK(r.realized_increase == static_cast<std::int64_t>(r.h_a_or_b) - r.pair_gain());
        CHECK(r.d1 <= r.d0);
        CHECK(r.d2 <= r.d0);
        if (r.disjoint) {
          ++disjoint_pairs;
          CHECK(r.h_a_and_b <= 1);
          // ∅ ⊆ a′ and ∅ ⊆ b′ is the only extent counted by both d1 and d2
          CHECK(r.d1 + r.d2 <= r.d0 + (r.empty_is_extent ? 1 : 0));
        }
      }
    }
  }
  CHECK(disjoint_pairs > 50);
}
