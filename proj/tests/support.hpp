#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fca/fca.hpp"

namespace fca::testing {

inline std::vector<std::string> labels(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, prefix) + std::to_string(i));
  return out;
}

/// Random context with each cell set with probability `density`.
inline FormalContext random_context(std::mt19937_64& rng, std::size_t n_objects,
                                    std::size_t n_attributes, double density) {
  std::bernoulli_distribution cell(density);
  std::vector<AttributeSet> rows;
  for (std::size_t g = 0; g < n_objects; ++g) {
    AttributeSet row(n_attributes);
    for (std::size_t m = 0; m < n_attributes; ++m) {
      if (cell(rng)) row.set(m);
    }
    rows.push_back(std::move(row));
  }
  return FormalContext(labels('g', n_objects), labels('m', n_attributes), std::move(rows));
}

inline FormalContext random_context(std::mt19937_64& rng, std::size_t max_objects,
                                    std::size_t max_attributes) {
  std::uniform_int_distribution<std::size_t> gs(0, max_objects);
  std::uniform_int_distribution<std::size_t> ms(0, max_attributes);
  const double densities[] = {0.3, 0.5, 0.7};
  std::uniform_int_distribution<std::size_t> d(0, 2);
  const std::size_t g = gs(rng);
  const std::size_t m = ms(rng);
  return random_context(rng, g, m, densities[d(rng)]);
}

template <class Tag>
BitSet<Tag> random_subset(std::mt19937_64& rng, std::size_t width, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BitSet<Tag> s(width);
  for (std::size_t i = 0; i < width; ++i) {
    if (bit(rng)) s.set(i);
  }
  return s;
}

/// Extents as sorted index vectors, computed as the closure system generated
/// by the attribute columns (G plus every intersection of columns). Shares no
/// code with the library's enumeration or derivation operators.
inline std::set<std::vector<std::size_t>> naive_extents(const FormalContext& ctx) {
  const std::size_t n = ctx.num_objects();
  std::vector<std::vector<bool>> columns(ctx.num_attributes(), std::vector<bool>(n));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) columns[m][g] = ctx.incident(g, m);
  }
  std::set<std::vector<bool>> family{std::vector<bool>(n, true)};
  for (const auto& col : columns) {
    std::set<std::vector<bool>> next = family;
    for (const auto& e : family) {
      std::vector<bool> meet(n);
      for (std::size_t g = 0; g < n; ++g) meet[g] = e[g] && col[g];
      next.insert(meet);
    }
    family = std::move(next);
  }
  std::set<std::vector<std::size_t>> out;
  for (const auto& e : family) {
    std::vector<std::size_t> idx;
    for (std::size_t g = 0; g < n; ++g) {
      if (e[g]) idx.push_back(g);
    }
    out.insert(idx);
  }
  return out;
}

inline std::set<std::vector<std::size_t>> extent_indices(const ConceptLattice& lat) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < lat.size(); ++i) out.insert(lat.extent(i).indices());
  return out;
}

inline FormalContext sample_context() {
  return FormalContext::from_crosses({"a", "b", "c", "g"}, {"v", "u", "a", "b"},
                                     {".XX.", "X..X", "XX..", "XXXX"});
}

}  // namespace fca::testing
