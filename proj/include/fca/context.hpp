#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/errors.hpp"

namespace fca {

using ContextId = std::uint64_t;

namespace detail {

inline ContextId next_context_id() {
  static std::atomic<ContextId> counter{0};
  return ++counter;
}

inline std::unordered_map<std::string, std::size_t> index_names(
    const std::vector<std::string>& names, std::string_view kind) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) {
      throw NameCollisionError("duplicate " + std::string(kind) + " name '" + names[i] + "'");
    }
  }
  return index;
}

}  // namespace detail

/// A finite binary context (G, M, I).
///
/// Incidence is stored twice: one attribute row per object and one object
/// column per attribute, both packed into words. Instances are immutable;
/// the editing operations return new contexts. Copies share the identity
/// returned by id(), which concepts use to detect cross-context mixing.
class FormalContext {
 public:
  FormalContext() : FormalContext({}, {}, std::vector<AttributeSet>{}) {}

  FormalContext(std::vector<std::string> object_names, std::vector<std::string> attribute_names,
                std::vector<AttributeSet> rows)
      : objects_(std::move(object_names)),
        attributes_(std::move(attribute_names)),
        rows_(std::move(rows)),
        id_(detail::next_context_id()) {
    object_index_ = detail::index_names(objects_, "object");
    attribute_index_ = detail::index_names(attributes_, "attribute");
    if (rows_.size() != objects_.size()) {
      throw DimensionError("expected " + std::to_string(objects_.size()) + " rows, got " +
                           std::to_string(rows_.size()));
    }
    columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
    for (std::size_t g = 0; g < rows_.size(); ++g) {
      if (rows_[g].width() != attributes_.size()) {
        throw DimensionError("row " + std::to_string(g) + " has width " +
                             std::to_string(rows_[g].width()) + ", expected " +
                             std::to_string(attributes_.size()));
      }
      rows_[g].for_each([&](std::size_t m) { columns_[m].set(g); });
    }
  }

  /// Builds a context from cross strings, one per object ('X' = incident).
  static FormalContext from_crosses(std::vector<std::string> object_names,
                                    std::vector<std::string> attribute_names,
                                    std::span<const std::string> crosses) {
    std::vector<AttributeSet> rows;
    rows.reserve(crosses.size());
    for (const std::string& line : crosses) {
      if (line.size() != attribute_names.size()) {
        throw DimensionError("cross row '" + line + "' does not match attribute count");
      }
      AttributeSet row(attribute_names.size());
      for (std::size_t m = 0; m < line.size(); ++m) {
        if (line[m] == 'X') row.set(m);
      }
      rows.push_back(std::move(row));
    }
    return FormalContext(std::move(object_names), std::move(attribute_names), std::move(rows));
  }

  static FormalContext from_crosses(std::vector<std::string> object_names,
                                    std::vector<std::string> attribute_names,
                                    std::initializer_list<std::string> crosses) {
    return from_crosses(std::move(object_names), std::move(attribute_names),
                        std::span<const std::string>(crosses.begin(), crosses.size()));
  }

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_attributes() const noexcept { return attributes_.size(); }
  const std::vector<std::string>& object_names() const noexcept { return objects_; }
  const std::vector<std::string>& attribute_names() const noexcept { return attributes_; }
  ContextId id() const noexcept { return id_; }

  bool incident(std::size_t g, std::size_t m) const { return rows_.at(g).test(m); }

  /// g′ as an attribute set.
  const AttributeSet& row(std::size_t g) const { return rows_.at(g); }
  /// m′ as an object set.
  const ObjectSet& column(std::size_t m) const { return columns_.at(m); }
  const std::vector<AttributeSet>& rows() const noexcept { return rows_; }
  const std::vector<ObjectSet>& columns() const noexcept { return columns_; }

  std::optional<std::size_t> find_object(std::string_view name) const {
    auto it = object_index_.find(std::string(name));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find_attribute(std::string_view name) const {
    auto it = attribute_index_.find(std::string(name));
    if (it == attribute_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t object_at(std::string_view name) const {
    if (auto i = find_object(name)) return *i;
    throw LookupError("unknown object '" + std::string(name) + "'");
  }

  std::size_t attribute_at(std::string_view name) const {
    if (auto i = find_attribute(name)) return *i;
    throw LookupError("unknown attribute '" + std::string(name) + "'");
  }

  ObjectSet objects(std::initializer_list<std::string_view> names) const {
    ObjectSet s(num_objects());
    for (auto n : names) s.set(object_at(n));
    return s;
  }

  AttributeSet attributes(std::initializer_list<std::string_view> names) const {
    AttributeSet s(num_attributes());
    for (auto n : names) s.set(attribute_at(n));
    return s;
  }

  ObjectSet no_objects() const { return ObjectSet(num_objects()); }
  ObjectSet all_objects() const { return ObjectSet::full(num_objects()); }
  AttributeSet no_attributes() const { return AttributeSet(num_attributes()); }
  AttributeSet all_attributes() const { return AttributeSet::full(num_attributes()); }

  /// A′: attributes shared by every object of A.
  AttributeSet derive(const ObjectSet& objects) const {
    check(objects);
    AttributeSet out = all_attributes();
    objects.for_each([&](std::size_t g) { out &= rows_[g]; });
    return out;
  }

  /// B′: objects having every attribute of B.
  ObjectSet derive(const AttributeSet& attributes) const {
    check(attributes);
    ObjectSet out = all_objects();
    attributes.for_each([&](std::size_t m) { out &= columns_[m]; });
    return out;
  }

  ObjectSet close(const ObjectSet& objects) const { return derive(derive(objects)); }
  AttributeSet close(const AttributeSet& attributes) const { return derive(derive(attributes)); }

  FormalContext with_attribute(std::string name, const ObjectSet& extent) const {
    check(extent);
    if (find_attribute(name)) {
      throw NameCollisionError("attribute '" + name + "' already exists");
    }
    std::vector<std::string> attrs = attributes_;
    attrs.push_back(std::move(name));
    std::vector<AttributeSet> rows;
    rows.reserve(rows_.size());
    for (std::size_t g = 0; g < rows_.size(); ++g) {
      AttributeSet row(attrs.size());
      rows_[g].for_each([&](std::size_t m) { row.set(m); });
      if (extent.test(g)) row.set(attrs.size() - 1);
      rows.push_back(std::move(row));
    }
    return FormalContext(objects_, std::move(attrs), std::move(rows));
  }

  FormalContext without_attributes(std::span<const std::string> names) const {
    AttributeSet drop(num_attributes());
    for (const auto& n : names) drop.set(attribute_at(n));
    return select_attributes(drop.complement());
  }

  /// Subcontext on the attributes in `keep`, in their original order.
  FormalContext select_attributes(const AttributeSet& keep) const {
    check(keep);
    const std::vector<std::size_t> kept = keep.indices();
    std::vector<std::string> attrs;
    attrs.reserve(kept.size());
    for (std::size_t m : kept) attrs.push_back(attributes_[m]);
    std::vector<AttributeSet> rows;
    rows.reserve(rows_.size());
    for (const auto& old : rows_) {
      AttributeSet row(kept.size());
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (old.test(kept[j])) row.set(j);
      }
      rows.push_back(std::move(row));
    }
    return FormalContext(objects_, std::move(attrs), std::move(rows));
  }

  /// Bit-exact comparison of names and incidence; ids are ignored.
  friend bool operator==(const FormalContext& a, const FormalContext& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  void check(const ObjectSet& s) const {
    if (s.width() != num_objects()) {
      throw DimensionError("object set has width " + std::to_string(s.width()) +
                           ", context has " + std::to_string(num_objects()) + " objects");
    }
  }

  void check(const AttributeSet& s) const {
    if (s.width() != num_attributes()) {
      throw DimensionError("attribute set has width " + std::to_string(s.width()) +
                           ", context has " + std::to_string(num_attributes()) + " attributes");
    }
  }

  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::unordered_map<std::string, std::size_t> attribute_index_;
  ContextId id_;
};

inline AttributeSet derive_objects(const FormalContext& ctx, const ObjectSet& objects) {
  return ctx.derive(objects);
}

inline ObjectSet derive_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  return ctx.derive(attributes);
}

/// A″, the smallest extent containing A.
inline ObjectSet close_objects(const FormalContext& ctx, const ObjectSet& objects) {
  return ctx.close(objects);
}

inline AttributeSet close_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  return ctx.close(attributes);
}

inline bool is_extent(const FormalContext& ctx, const ObjectSet& objects) {
  return ctx.close(objects) == objects;
}

inline bool is_intent(const FormalContext& ctx, const AttributeSet& attributes) {
  return ctx.close(attributes) == attributes;
}

/// K_a: the context with one more attribute whose column is `extent`.
inline FormalContext add_attribute(const FormalContext& ctx, std::string name,
                                   const ObjectSet& extent) {
  return ctx.with_attribute(std::move(name), extent);
}

inline FormalContext remove_attributes(const FormalContext& ctx,
                                       std::span<const std::string> names) {
  return ctx.without_attributes(names);
}

inline FormalContext remove_attributes(const FormalContext& ctx,
                                       std::initializer_list<std::string> names) {
  return ctx.without_attributes(std::span<const std::string>(names.begin(), names.size()));
}

/// True iff no column is the intersection of other columns. The full column
/// counts as the empty intersection, so a context with m′ = G is not reduced.
inline bool is_attribute_reduced(const FormalContext& ctx) {
  const auto& cols = ctx.columns();
  for (std::size_t m = 0; m < cols.size(); ++m) {
    // The largest intersection of other columns that still contains m′ is
    // the meet of all columns above it; m is reducible iff that meet is m′.
    ObjectSet meet = ctx.all_objects();
    for (std::size_t x = 0; x < cols.size(); ++x) {
      if (x != m && cols[m].is_subset_of(cols[x])) meet &= cols[x];
    }
    if (meet == cols[m]) return false;
  }
  return true;
}

}  // namespace fca
