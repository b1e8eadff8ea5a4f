#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/errors.hpp"
#include "fca/generalization.hpp"
#include "fca/lattice.hpp"

namespace fca {

inline constexpr std::size_t kMaxFamilySize = 24;

namespace detail {

inline std::uint64_t pow2(std::uint64_t e) {
  if (e > 62) throw CapacityError("2^" + std::to_string(e) + " does not fit the counting range");
  return std::uint64_t{1} << e;
}

inline void check_family_size(std::size_t n) {
  if (n > kMaxFamilySize) {
    throw CapacityError("family size " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxFamilySize));
  }
}

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n + 2);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

// (Sₙ ∪ {g1}, Sₙ ∪ {m1, m2}, I): objects 1..n have Sₙ∖{i}, g1 has all of Sₙ,
// and the two extra columns are given as subsets of Sₙ (g1 never has them).
inline FormalContext two_attribute_context(std::size_t n, const ObjectSet& m1, const ObjectSet& m2) {
  check_family_size(n);
  if (m1.width() != n || m2.width() != n) {
    throw DimensionError("m1/m2 extents must have width n = " + std::to_string(n));
  }
  std::vector<std::string> objects = numbered(n);
  objects.push_back("g1");
  std::vector<std::string> attributes = numbered(n);
  attributes.push_back("m1");
  attributes.push_back("m2");

  std::vector<AttributeSet> rows;
  rows.reserve(n + 1);
  for (std::size_t g = 0; g < n; ++g) {
    AttributeSet row(n + 2);
    for (std::size_t m = 0; m < n; ++m) {
      if (m != g) row.set(m);
    }
    if (m1.test(g)) row.set(n);
    if (m2.test(g)) row.set(n + 1);
    rows.push_back(std::move(row));
  }
  AttributeSet top(n + 2);
  for (std::size_t m = 0; m < n; ++m) top.set(m);
  rows.push_back(std::move(top));
  return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

}  // namespace detail

/// (E, E, ≠) with |E| = n; its lattice is the Boolean lattice with 2ⁿ elements.
inline FormalContext contranominal(std::size_t n) {
  detail::check_family_size(n);
  std::vector<AttributeSet> rows;
  rows.reserve(n);
  for (std::size_t g = 0; g < n; ++g) rows.push_back(AttributeSet::full(n).reset(g));
  return FormalContext(detail::numbered(n), detail::numbered(n), std::move(rows));
}

/// Kᵏₙ: m1′ = {1..k}, m2′ = {k+1..n}.
inline FormalContext family_kk(std::size_t n, std::size_t k) {
  if (n < 2) throw ParameterError("family_kk requires n >= 2");
  if (k < 1 || k >= n) throw ParameterError("family_kk requires 1 <= k < n");
  ObjectSet m1(n);
  ObjectSet m2(n);
  for (std::size_t i = 0; i < n; ++i) (i < k ? m1 : m2).set(i);
  return detail::two_attribute_context(n, m1, m2);
}

/// K¹ₙ: object 1 has m1, objects 2..n have m2.
inline FormalContext family_k1(std::size_t n) {
  if (n < 2) throw ParameterError("family_k1 requires n >= 2");
  return family_kk(n, 1);
}

/// m1′ and m2′ as subsets of Sₙ; neither contains the other.
inline bool cover_incomparable(const ObjectSet& m1, const ObjectSet& m2) {
  return !m1.is_subset_of(m2) && !m2.is_subset_of(m1);
}

/// Two-attribute context over a covering m1′ ∪ m2′ = Sₙ by proper non-empty
/// subsets. Such subsets are never comparable.
inline FormalContext family_cover(std::size_t n, const ObjectSet& m1, const ObjectSet& m2) {
  if (n < 2) throw ParameterError("family_cover requires n >= 2");
  if (m1.width() != n || m2.width() != n) {
    throw DimensionError("m1/m2 extents must have width n = " + std::to_string(n));
  }
  if (!(m1 | m2).all()) throw ParameterError("m1' and m2' do not cover S_n");
  if (m1.none() || m2.none() || m1.all() || m2.all()) {
    throw ParameterError("m1' and m2' must be proper non-empty subsets of S_n");
  }
  return detail::two_attribute_context(n, m1, m2);
}

enum class FamilyTag { k1, kk, cover };

struct FamilyPrediction {
  std::uint64_t initial_count = 0;
  std::uint64_t generalized_count = 0;
  /// generalized_count − initial_count; negative only for degenerate inputs.
  std::int64_t increase = 0;
  FamilyTag family = FamilyTag::kk;
};

/// Closed forms for Kᵏₙ: 2ⁿ + 2^{n−k} + 2^k − 1 concepts before, 2^{n+1}
/// after merging m1 and m2.
inline FamilyPrediction predicted_counts_kk(std::size_t n, std::size_t k) {
  if (n < 2) throw ParameterError("predicted_counts_kk requires n >= 2");
  if (k < 1 || k >= n) throw ParameterError("predicted_counts_kk requires 1 <= k < n");
  using detail::pow2;
  FamilyPrediction p;
  p.family = k == 1 ? FamilyTag::k1 : FamilyTag::kk;
  p.initial_count = pow2(n) + pow2(n - k) + pow2(k) - 1;
  p.generalized_count = pow2(n + 1);
  p.increase = static_cast<std::int64_t>(pow2(n) + 1 - pow2(k) - pow2(n - k));
  return p;
}

/// Closed forms for the two-attribute context with |m1′| = s1, |m2′| = s2,
/// |m1′ ∩ m2′| = s12 over Sₙ. The union need not be all of Sₙ: merging
/// adds 2^{|m1′ ∪ m2′|} extents to the 2ⁿ of the base context.
inline FamilyPrediction predicted_counts_cover(std::size_t n, std::size_t s1, std::size_t s2,
                                               std::size_t s12) {
  if (s1 > n || s2 > n) throw ParameterError("attribute extents larger than n");
  if (s12 > std::min(s1, s2)) throw ParameterError("intersection larger than an attribute extent");
  const std::size_t s_union = s1 + s2 - s12;
  if (s_union > n) throw ParameterError("union of attribute extents larger than n");
  using detail::pow2;
  FamilyPrediction p;
  p.family = FamilyTag::cover;
  p.initial_count = pow2(n) + pow2(s1) + pow2(s2) - pow2(s12);
  p.generalized_count = pow2(n) + pow2(s_union);
  p.increase = static_cast<std::int64_t>(p.generalized_count) - static_cast<std::int64_t>(p.initial_count);
  return p;
}

/// fₙ(k) = 2ⁿ − 2^k − 2^{n−k} + 1.
inline std::int64_t split_increase(std::size_t n, std::size_t k) {
  return predicted_counts_kk(n, k).increase;
}

struct OptimalSplit {
  std::vector<std::size_t> arg_max;
  std::int64_t max_increase = 0;
};

/// The most balanced splits maximize fₙ: k = n/2 for even n, ⌊n/2⌋ and
/// ⌊n/2⌋+1 for odd n.
inline OptimalSplit optimal_split(std::size_t n) {
  if (n < 2) throw ParameterError("optimal_split requires n >= 2");
  OptimalSplit out;
  const std::size_t q = n / 2;
  out.arg_max.push_back(q);
  if (n % 2 == 1) out.arg_max.push_back(q + 1);
  const auto a = static_cast<std::int64_t>(detail::pow2(q)) - 1;
  const auto b = static_cast<std::int64_t>(detail::pow2(n - q)) - 1;
  out.max_increase = a * b;
  return out;
}

/// Result of scanning every proper incomparable covering of Sₙ.
struct CoverScan {
  std::size_t n = 0;
  std::size_t coverings = 0;
  std::int64_t min_increase = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_increase = std::numeric_limits<std::int64_t>::min();
  /// Distinct (|m1′|, |m2′|, |m1′ ∩ m2′|) triples attaining the minimum, with |m1′| ≤ |m2′|.
  std::vector<std::array<std::size_t, 3>> minimizers;
  /// Coverings whose enumerated counts disagree with predicted_counts_cover.
  std::size_t prediction_mismatches = 0;
};

/// Enumerates both lattices for every ordered covering (m1′, m2′) of Sₙ by
/// incomparable proper subsets; `overlapping_only` restricts the scan to
/// m1′ ∩ m2′ ≠ ∅.
inline CoverScan scan_cover_increases(std::size_t n, bool overlapping_only = false) {
  if (n < 2 || n > 12) throw ParameterError("scan_cover_increases supports 2 <= n <= 12");
  CoverScan scan;
  scan.n = n;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t x = 1; x < full; ++x) {
    for (std::uint64_t y = 1; y < full; ++y) {
      if ((x | y) != full) continue;
      if ((x & ~y) == 0 || (y & ~x) == 0) continue;
      if (overlapping_only && (x & y) == 0) continue;
      ObjectSet m1(n);
      ObjectSet m2(n);
      for (std::size_t i = 0; i < n; ++i) {
        if ((x >> i) & 1U) m1.set(i);
        if ((y >> i) & 1U) m2.set(i);
      }
      const FormalContext k12 = family_cover(n, m1, m2);
      const FormalContext k0s = generalize(k12, merge_scheme(k12, "m12", {"m1", "m2"}));
      const auto initial = count_concepts(k12);
      const auto generalized = count_concepts(k0s);
      const auto increase = static_cast<std::int64_t>(generalized) - static_cast<std::int64_t>(initial);

      const std::size_t s1 = m1.count();
      const std::size_t s2 = m2.count();
      const std::size_t s12 = (m1 & m2).count();
      const auto predicted = predicted_counts_cover(n, s1, s2, s12);
      if (predicted.initial_count != initial || predicted.generalized_count != generalized) {
        ++scan.prediction_mismatches;
      }

      ++scan.coverings;
      const std::array<std::size_t, 3> sizes{std::min(s1, s2), std::max(s1, s2), s12};
      if (increase < scan.min_increase) {
        scan.min_increase = increase;
        scan.minimizers.assign(1, sizes);
      } else if (increase == scan.min_increase &&
                 std::find(scan.minimizers.begin(), scan.minimizers.end(), sizes) == scan.minimizers.end()) {
        scan.minimizers.push_back(sizes);
      }
      scan.max_increase = std::max(scan.max_increase, increase);
    }
  }
  std::sort(scan.minimizers.begin(), scan.minimizers.end());
  return scan;
}

}  // namespace fca
