#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/errors.hpp"

namespace fca {

/// A formal concept (A, B) with A′ = B and B′ = A in its owning context.
struct Concept {
  ObjectSet extent;
  AttributeSet intent;
  ContextId context = 0;

  friend bool operator==(const Concept& a, const Concept& b) {
    return a.context == b.context && a.extent == b.extent && a.intent == b.intent;
  }
};

/// The concept generated by an object set: (A″, A′).
inline Concept generated_concept(const FormalContext& ctx, const ObjectSet& objects) {
  AttributeSet intent = ctx.derive(objects);
  ObjectSet extent = ctx.derive(intent);
  return Concept{std::move(extent), std::move(intent), ctx.id()};
}

inline bool is_concept_of(const FormalContext& ctx, const Concept& c) {
  if (c.extent.width() != ctx.num_objects() || c.intent.width() != ctx.num_attributes()) {
    return false;
  }
  return ctx.derive(c.extent) == c.intent && ctx.derive(c.intent) == c.extent;
}

/// Concept hierarchy: c1 ⩽ c2 iff extent(c1) ⊆ extent(c2).
inline bool order_leq(const Concept& lower, const Concept& upper) {
  if (lower.context != upper.context) {
    throw ContextMismatchError("cannot compare concepts of different contexts");
  }
  return lower.extent.is_subset_of(upper.extent);
}

struct EnumerationOptions {
  /// Enumeration aborts with CapacityError once more concepts than this are found.
  std::uint64_t max_concepts = std::uint64_t{1} << 25;
};

namespace detail {

// Incidence matrix seen from the side being enumerated: closed sets of
// `items` are produced together with their supporting `rows`.
struct PackedIncidence {
  std::size_t n_rows = 0;
  std::size_t n_items = 0;
  std::size_t row_words = 0;   // words per row (an item set)
  std::size_t item_words = 0;  // words per item (a row set)
  std::vector<Word> rows;
  std::vector<Word> items;

  std::span<const Word> row(std::size_t r) const {
    return {rows.data() + r * row_words, row_words};
  }
  std::span<const Word> item(std::size_t i) const {
    return {items.data() + i * item_words, item_words};
  }
};

inline PackedIncidence pack_by_attributes(const FormalContext& ctx) {
  PackedIncidence p;
  p.n_rows = ctx.num_objects();
  p.n_items = ctx.num_attributes();
  p.row_words = words_for(p.n_items);
  p.item_words = words_for(p.n_rows);
  for (const auto& r : ctx.rows()) p.rows.insert(p.rows.end(), r.words().begin(), r.words().end());
  for (const auto& c : ctx.columns()) {
    p.items.insert(p.items.end(), c.words().begin(), c.words().end());
  }
  return p;
}

inline PackedIncidence pack_by_objects(const FormalContext& ctx) {
  PackedIncidence p;
  p.n_rows = ctx.num_attributes();
  p.n_items = ctx.num_objects();
  p.row_words = words_for(p.n_items);
  p.item_words = words_for(p.n_rows);
  for (const auto& c : ctx.columns()) {
    p.rows.insert(p.rows.end(), c.words().begin(), c.words().end());
  }
  for (const auto& r : ctx.rows()) p.items.insert(p.items.end(), r.words().begin(), r.words().end());
  return p;
}

inline void fill_full(std::span<Word> words, std::size_t width) {
  std::fill(words.begin(), words.end(), ~Word{0});
  if (const std::size_t tail = width % kWordBits; tail != 0 && !words.empty()) {
    words.back() = (Word{1} << tail) - 1;
  }
}

// Equality of two packed sets restricted to indices below `limit`.
inline bool equal_below(std::span<const Word> a, std::span<const Word> b, std::size_t limit) {
  const std::size_t full = limit / kWordBits;
  for (std::size_t w = 0; w < full; ++w) {
    if (a[w] != b[w]) return false;
  }
  if (const std::size_t tail = limit % kWordBits; tail != 0) {
    const Word mask = (Word{1} << tail) - 1;
    if (((a[full] ^ b[full]) & mask) != 0) return false;
  }
  return true;
}

// Close-by-One: depth-first generation of closed item sets, where a branch
// adding item j survives only if the closure does not add any item below j.
// Every closed set is therefore reached exactly once without a lookup table.
template <class Visitor>
class CloseByOne {
 public:
  CloseByOne(const PackedIncidence& m, std::uint64_t cap, Visitor& visit)
      : m_(m), cap_(cap), visit_(visit) {
    const std::size_t levels = m_.n_items + 2;
    row_sets_.assign(levels * m_.item_words, 0);
    item_sets_.assign(levels * m_.row_words, 0);
  }

  std::uint64_t run() {
    auto rows0 = row_set(0);
    auto items0 = item_set(0);
    fill_full(rows0, m_.n_rows);
    fill_full(items0, m_.n_items);
    for (std::size_t r = 0; r < m_.n_rows; ++r) intersect(items0, m_.row(r));
    emit(rows0, items0);
    descend(0, 0);
    return found_;
  }

 private:
  std::span<Word> row_set(std::size_t level) {
    return {row_sets_.data() + level * m_.item_words, m_.item_words};
  }
  std::span<Word> item_set(std::size_t level) {
    return {item_sets_.data() + level * m_.row_words, m_.row_words};
  }

  static void intersect(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] &= src[w];
  }

  static bool has(std::span<const Word> s, std::size_t i) {
    return (s[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void emit(std::span<const Word> rows, std::span<const Word> items) {
    if (++found_ > cap_) {
      throw CapacityError("concept count exceeds the configured cap of " + std::to_string(cap_));
    }
    visit_(rows, items);
  }

  void descend(std::size_t level, std::size_t first_item) {
    const auto rows = row_set(level);
    const auto items = item_set(level);
    auto next_rows = row_set(level + 1);
    auto next_items = item_set(level + 1);
    for (std::size_t j = first_item; j < m_.n_items; ++j) {
      if (has(items, j)) continue;
      const auto support = m_.item(j);
      for (std::size_t w = 0; w < next_rows.size(); ++w) next_rows[w] = rows[w] & support[w];
      fill_full(next_items, m_.n_items);
      for (std::size_t w = 0; w < next_rows.size(); ++w) {
        Word bits = next_rows[w];
        while (bits != 0) {
          intersect(next_items, m_.row(w * kWordBits + std::countr_zero(bits)));
          bits &= bits - 1;
        }
      }
      if (!equal_below(items, next_items, j)) continue;
      emit(next_rows, next_items);
      descend(level + 1, j + 1);
    }
  }

  const PackedIncidence& m_;
  std::uint64_t cap_;
  Visitor& visit_;
  std::uint64_t found_ = 0;
  std::vector<Word> row_sets_;
  std::vector<Word> item_sets_;
};

}  // namespace detail

/// Calls `visit(extent_words, intent_words)` once per concept of `ctx`.
///
/// The enumeration branches over whichever side of the context is smaller.
/// Visiting order is the search-tree order, not the canonical order; use
/// enumerate_concepts() for a sorted list. Returns the number of concepts.
template <class Visitor>
std::uint64_t for_each_concept(const FormalContext& ctx, Visitor&& visit,
                               const EnumerationOptions& options = {}) {
  if (ctx.num_attributes() <= ctx.num_objects()) {
    const auto packed = detail::pack_by_attributes(ctx);
    auto adapter = [&](std::span<const Word> extent, std::span<const Word> intent) {
      visit(extent, intent);
    };
    return detail::CloseByOne<decltype(adapter)>(packed, options.max_concepts, adapter).run();
  }
  const auto packed = detail::pack_by_objects(ctx);
  auto adapter = [&](std::span<const Word> intent, std::span<const Word> extent) {
    visit(extent, intent);
  };
  return detail::CloseByOne<decltype(adapter)>(packed, options.max_concepts, adapter).run();
}

/// |B(K)| without materializing the concepts.
inline std::uint64_t count_concepts(const FormalContext& ctx, const EnumerationOptions& options = {}) {
  return for_each_concept(ctx, [](std::span<const Word>, std::span<const Word>) {}, options);
}

struct CoverEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;

  friend bool operator==(const CoverEdge&, const CoverEdge&) = default;
  friend auto operator<=>(const CoverEdge&, const CoverEdge&) = default;
};

/// All concepts of a context, in lectic order of their extents.
///
/// Extents and intents are held in two flat word arrays; concept(i)
/// materializes a Concept value on demand.
class ConceptLattice {
 public:
  std::size_t size() const noexcept { return count_; }
  const FormalContext& context() const noexcept { return *context_; }

  ObjectSet extent(std::size_t i) const {
    return ObjectSet::from_words(context_->num_objects(), extent_words(i));
  }

  AttributeSet intent(std::size_t i) const {
    return AttributeSet::from_words(context_->num_attributes(), intent_words(i));
  }

  Concept concept_at(std::size_t i) const { return Concept{extent(i), intent(i), context_->id()}; }

  std::vector<Concept> concepts() const {
    std::vector<Concept> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(concept_at(i));
    return out;
  }

  std::vector<ObjectSet> extents() const {
    std::vector<ObjectSet> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(extent(i));
    return out;
  }

  /// Index of the concept with the given extent, by binary search in lectic order.
  std::optional<std::size_t> index_of(const ObjectSet& extent) const {
    if (extent.width() != context_->num_objects()) {
      throw DimensionError("extent width does not match the lattice's context");
    }
    std::size_t lo = 0;
    std::size_t hi = count_;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (detail::lectic_less(extent_words(mid), extent.words())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < count_ && std::ranges::equal(extent_words(lo), extent.words())) return lo;
    return std::nullopt;
  }

  bool contains_extent(const ObjectSet& extent) const { return index_of(extent).has_value(); }

  /// concept(i) ⩽ concept(j).
  bool leq(std::size_t i, std::size_t j) const {
    const auto a = extent_words(i);
    const auto b = extent_words(j);
    for (std::size_t w = 0; w < a.size(); ++w) {
      if ((a[w] & ~b[w]) != 0) return false;
    }
    return true;
  }

  /// Same concepts in the same order (contexts compared by content).
  friend bool operator==(const ConceptLattice& a, const ConceptLattice& b) {
    return a.count_ == b.count_ && *a.context_ == *b.context_ && a.extents_ == b.extents_ &&
           a.intents_ == b.intents_;
  }

 private:
  template <class Pairs>
  friend ConceptLattice make_lattice(const FormalContext& ctx, Pairs&& pairs);

  ConceptLattice(std::shared_ptr<const FormalContext> ctx, std::size_t count,
                 std::vector<Word> extents, std::vector<Word> intents)
      : context_(std::move(ctx)),
        count_(count),
        ext_words_(words_for(context_->num_objects())),
        int_words_(words_for(context_->num_attributes())),
        extents_(std::move(extents)),
        intents_(std::move(intents)) {}

  std::span<const Word> extent_words(std::size_t i) const {
    if (i >= count_) throw DimensionError("concept index out of range");
    return {extents_.data() + i * ext_words_, ext_words_};
  }

  std::span<const Word> intent_words(std::size_t i) const {
    if (i >= count_) throw DimensionError("concept index out of range");
    return {intents_.data() + i * int_words_, int_words_};
  }

  std::shared_ptr<const FormalContext> context_;
  std::size_t count_ = 0;
  std::size_t ext_words_ = 0;
  std::size_t int_words_ = 0;
  std::vector<Word> extents_;
  std::vector<Word> intents_;
};

namespace detail {

// Unordered (extent, intent) word buffers collected during enumeration.
struct PackedPairs {
  std::size_t ext_words = 0;
  std::size_t int_words = 0;
  std::size_t count = 0;
  std::vector<Word> extents;
  std::vector<Word> intents;

  void push(std::span<const Word> e, std::span<const Word> i) {
    extents.insert(extents.end(), e.begin(), e.end());
    intents.insert(intents.end(), i.begin(), i.end());
    ++count;
  }
};

}  // namespace detail

template <class Pairs>
ConceptLattice make_lattice(const FormalContext& ctx, Pairs&& pairs) {
  const std::size_t ew = pairs.ext_words;
  const std::size_t iw = pairs.int_words;
  std::vector<std::size_t> order(pairs.count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const Word* ext = pairs.extents.data();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detail::lectic_less({ext + a * ew, ew}, {ext + b * ew, ew});
  });
  std::vector<Word> extents(pairs.count * ew);
  std::vector<Word> intents(pairs.count * iw);
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::copy_n(pairs.extents.begin() + static_cast<std::ptrdiff_t>(order[k] * ew), ew,
                extents.begin() + static_cast<std::ptrdiff_t>(k * ew));
    std::copy_n(pairs.intents.begin() + static_cast<std::ptrdiff_t>(order[k] * iw), iw,
                intents.begin() + static_cast<std::ptrdiff_t>(k * iw));
  }
  return ConceptLattice(std::make_shared<const FormalContext>(ctx), pairs.count,
                        std::move(extents), std::move(intents));
}

/// Every concept of `ctx` exactly once, ordered lectically by extent.
inline ConceptLattice enumerate_concepts(const FormalContext& ctx,
                                         const EnumerationOptions& options = {}) {
  detail::PackedPairs pairs;
  pairs.ext_words = words_for(ctx.num_objects());
  pairs.int_words = words_for(ctx.num_attributes());
  for_each_concept(
      ctx, [&](std::span<const Word> e, std::span<const Word> i) { pairs.push(e, i); }, options);
  return make_lattice(ctx, pairs);
}

inline constexpr std::size_t kBruteForceMaxSide = 20;

/// Test oracle: closes every subset of the smaller side and deduplicates.
inline ConceptLattice brute_force_concepts(const FormalContext& ctx) {
  const bool by_attributes = ctx.num_attributes() <= ctx.num_objects();
  const std::size_t side = by_attributes ? ctx.num_attributes() : ctx.num_objects();
  if (side > kBruteForceMaxSide) {
    throw CapacityError("brute force is limited to 2^" + std::to_string(kBruteForceMaxSide) +
                        " subsets");
  }
  std::unordered_set<ObjectSet, BitSetHash> extents;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << side); ++mask) {
    if (by_attributes) {
      AttributeSet b(side);
      for (std::size_t i = 0; i < side; ++i) {
        if ((mask >> i) & 1U) b.set(i);
      }
      extents.insert(ctx.derive(b));
    } else {
      ObjectSet a(side);
      for (std::size_t i = 0; i < side; ++i) {
        if ((mask >> i) & 1U) a.set(i);
      }
      extents.insert(ctx.close(a));
    }
  }
  detail::PackedPairs pairs;
  pairs.ext_words = words_for(ctx.num_objects());
  pairs.int_words = words_for(ctx.num_attributes());
  for (const auto& e : extents) pairs.push(e.words(), ctx.derive(e).words());
  return make_lattice(ctx, pairs);
}

/// Hasse diagram edges, sorted by (lower, upper).
///
/// The upper covers of (A, B) are the minimal sets among (A ∪ {g})″ for
/// g ∉ A.
inline std::vector<CoverEdge> covering_relation(const ConceptLattice& lat) {
  const FormalContext& ctx = lat.context();
  std::vector<CoverEdge> edges;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const ObjectSet a = lat.extent(i);
    std::vector<ObjectSet> candidates;
    for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
      if (a.test(g)) continue;
      ObjectSet grown = a;
      grown.set(g);
      ObjectSet closed = ctx.close(grown);
      if (std::find(candidates.begin(), candidates.end(), closed) == candidates.end()) {
        candidates.push_back(std::move(closed));
      }
    }
    for (const auto& c : candidates) {
      const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const ObjectSet& d) {
        return d != c && d.is_subset_of(c);
      });
      if (!minimal) continue;
      const auto upper = lat.index_of(c);
      if (!upper) throw VerificationError("closure of an extent is missing from the lattice");
      edges.push_back({i, *upper});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace fca
