#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/errors.hpp"
#include "fca/lattice.hpp"

namespace fca {

// ---------------------------------------------------------------------------
// Generalization schemes
// ---------------------------------------------------------------------------

/// An object has the merged attribute iff it has at least one member.
struct ExistsMode {};
/// An object has the merged attribute iff it has every member.
struct ForallMode {};
/// An object has the merged attribute iff it has at least p/q of the members.
struct AlphaMode {
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 1;
};

using GeneralizationMode = std::variant<ExistsMode, ForallMode, AlphaMode>;

inline void validate_alpha(const AlphaMode& alpha) {
  if (alpha.denominator == 0 || alpha.numerator == 0 || alpha.numerator > alpha.denominator) {
    throw ParameterError("alpha must be a rational in (0,1], got " +
                         std::to_string(alpha.numerator) + "/" +
                         std::to_string(alpha.denominator));
  }
}

struct AttributeBlock {
  /// Label of the generalized attribute; empty means the members joined by '+'.
  std::string name;
  std::vector<std::string> members;

  std::string label() const {
    if (!name.empty()) return name;
    std::string out;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i != 0) out += '+';
      out += members[i];
    }
    return out;
  }
};

struct GeneralizationScheme {
  std::vector<AttributeBlock> blocks;
  GeneralizationMode mode = ExistsMode{};
};

/// Scheme with one singleton block per attribute.
inline GeneralizationScheme identity_scheme(const FormalContext& ctx,
                                            GeneralizationMode mode = ExistsMode{}) {
  GeneralizationScheme s;
  s.mode = mode;
  for (const auto& m : ctx.attribute_names()) s.blocks.push_back({m, {m}});
  return s;
}

/// Scheme merging `members` into `name` and keeping every other attribute.
/// The merged block takes the position of its first member.
inline GeneralizationScheme merge_scheme(const FormalContext& ctx, std::string name,
                                         const std::vector<std::string>& members,
                                         GeneralizationMode mode = ExistsMode{}) {
  AttributeSet merged(ctx.num_attributes());
  for (const auto& m : members) merged.set(ctx.attribute_at(m));
  GeneralizationScheme s;
  s.mode = mode;
  bool placed = false;
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    const auto& label = ctx.attribute_names()[m];
    if (!merged.test(m)) {
      s.blocks.push_back({label, {label}});
    } else if (!placed) {
      s.blocks.push_back({name, members});
      placed = true;
    }
  }
  return s;
}

/// Throws SchemeError unless the blocks partition the context's attributes.
inline void validate_scheme(const FormalContext& ctx, const GeneralizationScheme& scheme) {
  if (const auto* alpha = std::get_if<AlphaMode>(&scheme.mode)) validate_alpha(*alpha);
  AttributeSet seen(ctx.num_attributes());
  std::unordered_set<std::string> labels;
  for (const auto& block : scheme.blocks) {
    if (block.members.empty()) throw SchemeError("block '" + block.label() + "' is empty");
    if (!labels.insert(block.label()).second) {
      throw SchemeError("duplicate generalized attribute '" + block.label() + "'");
    }
    for (const auto& m : block.members) {
      const auto idx = ctx.find_attribute(m);
      if (!idx) throw SchemeError("block '" + block.label() + "' names unknown attribute '" + m + "'");
      if (seen.test(*idx)) throw SchemeError("attribute '" + m + "' appears in more than one block");
      seen.set(*idx);
    }
  }
  if (!seen.all()) {
    std::string missing;
    (seen.complement()).for_each([&](std::size_t m) {
      if (!missing.empty()) missing += ", ";
      missing += ctx.attribute_names()[m];
    });
    throw SchemeError("scheme does not cover attributes: " + missing);
  }
}

/// (G, S, J): one column per block, in block declaration order.
inline FormalContext generalize(const FormalContext& ctx, const GeneralizationScheme& scheme) {
  validate_scheme(ctx, scheme);
  const std::size_t n = ctx.num_objects();
  std::vector<std::string> names;
  std::vector<ObjectSet> columns;
  for (const auto& block : scheme.blocks) {
    names.push_back(block.label());
    std::vector<std::size_t> members;
    for (const auto& m : block.members) members.push_back(ctx.attribute_at(m));

    ObjectSet column = std::visit(
        [&](const auto& mode) -> ObjectSet {
          using Mode = std::decay_t<decltype(mode)>;
          if constexpr (std::is_same_v<Mode, ExistsMode>) {
            ObjectSet c(n);
            for (std::size_t m : members) c |= ctx.column(m);
            return c;
          } else if constexpr (std::is_same_v<Mode, ForallMode>) {
            ObjectSet c = ObjectSet::full(n);
            for (std::size_t m : members) c &= ctx.column(m);
            return c;
          } else {
            // count/|s| >= p/q  <=>  count*q >= p*|s|
            ObjectSet c(n);
            for (std::size_t g = 0; g < n; ++g) {
              std::uint64_t have = 0;
              for (std::size_t m : members) have += ctx.incident(g, m) ? 1 : 0;
              if (have * mode.denominator >= mode.numerator * members.size()) c.set(g);
            }
            return c;
          }
        },
        scheme.mode);
    columns.push_back(std::move(column));
  }
  std::vector<AttributeSet> rows(n, AttributeSet(names.size()));
  for (std::size_t s = 0; s < columns.size(); ++s) {
    columns[s].for_each([&](std::size_t g) { rows[g].set(s); });
  }
  return FormalContext(ctx.object_names(), std::move(names), std::move(rows));
}

// ---------------------------------------------------------------------------
// Adding one attribute
// ---------------------------------------------------------------------------

/// Embeds a concept of K into K_a: (A, B ∪ {a}) if A ⊆ a′, else (A, B).
inline Concept phi_a(const FormalContext& k, const FormalContext& k_a, const std::string& a,
                     const Concept& c) {
  if (!is_concept_of(k, c)) throw ContractError("phi_a: argument is not a concept of K");
  const std::size_t a_index = k_a.attribute_at(a);
  if (k_a.num_objects() != k.num_objects() || k_a.num_attributes() != k.num_attributes() + 1 ||
      k.find_attribute(a)) {
    throw ContractError("phi_a: K_a is not K extended by '" + a + "'");
  }
  AttributeSet intent(k_a.num_attributes());
  c.intent.for_each([&](std::size_t m) { intent.set(k_a.attribute_at(k.attribute_names()[m])); });
  if (c.extent.is_subset_of(k_a.column(a_index))) intent.set(a_index);
  return Concept{c.extent, std::move(intent), k_a.id()};
}

/// H(a) computed over an already enumerated lattice of K.
inline std::vector<ObjectSet> new_extents(const ConceptLattice& lat, const ObjectSet& a_extent) {
  if (a_extent.width() != lat.context().num_objects()) {
    throw DimensionError("attribute extent width does not match the context");
  }
  std::unordered_set<ObjectSet, BitSetHash> fresh;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    ObjectSet meet = lat.extent(i) & a_extent;
    if (!lat.contains_extent(meet)) fresh.insert(std::move(meet));
  }
  std::vector<ObjectSet> out(fresh.begin(), fresh.end());
  std::sort(out.begin(), out.end(), [](const ObjectSet& x, const ObjectSet& y) { return lectic_less(x, y); });
  return out;
}

/// H(a) = { A ∩ a′ | A ∈ Ext(K), A ∩ a′ ∉ Ext(K) }, deduplicated and
/// sorted lectically. Its size is the number of concepts gained by adding a.
inline std::vector<ObjectSet> new_extents(const FormalContext& k, const ObjectSet& a_extent,
                                          const EnumerationOptions& options = {}) {
  if (a_extent.width() != k.num_objects()) {
    throw DimensionError("attribute extent width does not match the context");
  }
  return new_extents(enumerate_concepts(k, options), a_extent);
}

/// ∅″ ∖ a′ ≠ ∅: no extent of K survives intersection with a′ as an extent.
inline bool doubling_condition(const FormalContext& k, const ObjectSet& a_extent) {
  if (a_extent.width() != k.num_objects()) {
    throw DimensionError("attribute extent width does not match the context");
  }
  return (k.close(k.no_objects()) - a_extent).any();
}

/// Executable witness of exact doubling: requires ∅″ ≠ ∅ and a′ = G ∖ ∅″,
/// then checks |B(K_a)| = 2·|B(K)| by enumeration.
inline bool check_doubling(const FormalContext& k, const ObjectSet& a_extent,
                           const EnumerationOptions& options = {}) {
  if (a_extent.width() != k.num_objects()) {
    throw DimensionError("attribute extent width does not match the context");
  }
  const ObjectSet bottom = k.close(k.no_objects());
  if (bottom.none()) throw ContractError("check_doubling requires a non-empty closure of the empty set");
  if (a_extent != bottom.complement()) throw ContractError("check_doubling requires a' = G minus the closure of the empty set");

  std::string name = "a";
  while (k.find_attribute(name)) name += "'";
  const std::uint64_t before = count_concepts(k, options);
  const std::uint64_t after = count_concepts(k.with_attribute(name, a_extent), options);
  return after == 2 * before;
}

// ---------------------------------------------------------------------------
// Merging two attributes
// ---------------------------------------------------------------------------

/// (2^a − 1)(2^b − 1) = 2^{a+b} − 2^a − 2^b + 1.
inline std::uint64_t exists_bound(std::uint64_t size_a, std::uint64_t size_b) {
  if (size_a + size_b > 62) {
    throw CapacityError("exists_bound: exponent " + std::to_string(size_a + size_b) +
                        " exceeds 62");
  }
  return ((std::uint64_t{1} << size_a) - 1) * ((std::uint64_t{1} << size_b) - 1);
}

/// Accounting for the ∃-merge of two attributes a, b of K = K12.
///
/// All h values are taken relative to K00 = K without a and b. The counts
/// d0, d1, d2 are the numbers of extents of K00 contained in a′ ∪ b′, a′
/// and b′ respectively (the empty extent included when present).
struct IncreaseReport {
  std::uint64_t h_a = 0;
  std::uint64_t h_b = 0;
  std::uint64_t h_a_and_b = 0;
  std::uint64_t h_a_or_b = 0;
  /// h_a + h_b − h_a_and_b.
  std::int64_t h_pair = 0;
  /// |B(K0s)| − |B(K12)| by enumeration; negative when merging shrinks the lattice.
  std::int64_t realized_increase = 0;
  std::uint64_t upper_bound = 0;
  std::uint64_t d0 = 0;
  std::uint64_t d1 = 0;
  std::uint64_t d2 = 0;
  bool disjoint = false;
  bool empty_is_extent = false;

  std::uint64_t concepts_removed = 0;      // |B(K00)|
  std::uint64_t concepts_initial = 0;      // |B(K12)|
  std::uint64_t concepts_generalized = 0;  // |B(K0s)|

  /// |B(K12)| − |B(K00)|, the true gain from adding both attributes.
  std::int64_t pair_gain() const {
    return static_cast<std::int64_t>(concepts_initial) - static_cast<std::int64_t>(concepts_removed);
  }

  /// h(a∪b) − h(a) − h(b) + h(a∩b).
  std::int64_t predicted_increase() const { return static_cast<std::int64_t>(h_a_or_b) - h_pair; }

  /// Whether h_pair matches the enumerated pair gain, which is what makes
  /// the predicted increase equal the realized one.
  bool identity_holds() const { return h_pair == pair_gain(); }
};

inline IncreaseReport pair_increase_report(const FormalContext& k, const std::string& a,
                                           const std::string& b,
                                           const EnumerationOptions& options = {}) {
  const std::size_t ia = k.attribute_at(a);
  const std::size_t ib = k.attribute_at(b);
  if (ia == ib) throw ParameterError("pair_increase_report needs two distinct attributes");
  const ObjectSet& a_ext = k.column(ia);
  const ObjectSet& b_ext = k.column(ib);

  const FormalContext k00 = remove_attributes(k, {a, b});
  const ConceptLattice lat00 = enumerate_concepts(k00, options);

  IncreaseReport r;
  r.h_a = new_extents(lat00, a_ext).size();
  r.h_b = new_extents(lat00, b_ext).size();
  r.h_a_and_b = new_extents(lat00, a_ext & b_ext).size();
  r.h_a_or_b = new_extents(lat00, a_ext | b_ext).size();
  r.h_pair = static_cast<std::int64_t>(r.h_a + r.h_b) - static_cast<std::int64_t>(r.h_a_and_b);
  r.upper_bound = exists_bound(a_ext.count(), b_ext.count());
  r.disjoint = !a_ext.intersects(b_ext);
  r.empty_is_extent = lat00.contains_extent(k00.no_objects());

  const ObjectSet union_ext = a_ext | b_ext;
  for (std::size_t i = 0; i < lat00.size(); ++i) {
    const ObjectSet e = lat00.extent(i);
    if (e.is_subset_of(union_ext)) ++r.d0;
    if (e.is_subset_of(a_ext)) ++r.d1;
    if (e.is_subset_of(b_ext)) ++r.d2;
  }

  const FormalContext k0s = generalize(k, merge_scheme(k, a + "+" + b, {a, b}, ExistsMode{}));
  r.concepts_removed = lat00.size();
  r.concepts_initial = count_concepts(k, options);
  r.concepts_generalized = count_concepts(k0s, options);
  r.realized_increase = static_cast<std::int64_t>(r.concepts_generalized) -
                        static_cast<std::int64_t>(r.concepts_initial);

  // Adding a single attribute gains exactly h concepts; a mismatch here
  // means the enumeration or the H computation is broken.
  if (r.concepts_generalized != r.concepts_removed + r.h_a_or_b) {
    throw VerificationError("|B(K0s)| differs from |B(K00)| + h(a or b)");
  }
  return r;
}

}  // namespace fca
