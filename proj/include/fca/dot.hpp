#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "fca/context.hpp"
#include "fca/lattice.hpp"

namespace fca {

/// Reduced labeling: each attribute m sits at its attribute concept (m′, m″),
/// the largest concept whose intent contains m, and each object g at its
/// object concept (g″, g′), the smallest concept whose extent contains g.
struct ReducedLabels {
  std::vector<std::vector<std::string>> attributes;  // per concept index
  std::vector<std::vector<std::string>> objects;
};

inline ReducedLabels reduced_labels(const ConceptLattice& lat) {
  const FormalContext& ctx = lat.context();
  ReducedLabels labels;
  labels.attributes.resize(lat.size());
  labels.objects.resize(lat.size());
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    const auto i = lat.index_of(ctx.column(m));
    if (!i) throw VerificationError("attribute extent missing from the lattice");
    labels.attributes[*i].push_back(ctx.attribute_names()[m]);
  }
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    ObjectSet single(ctx.num_objects());
    single.set(g);
    const auto i = lat.index_of(ctx.close(single));
    if (!i) throw VerificationError("object closure missing from the lattice");
    labels.objects[*i].push_back(ctx.object_names()[g]);
  }
  return labels;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += ", ";
    out += dot_escape(parts[i]);
  }
  return out;
}

}  // namespace detail

/// Hasse diagram in Graphviz DOT. Nodes c0..c(n-1) follow the lattice order;
/// edges run from lower to upper cover with the top drawn uppermost.
inline std::string export_dot(const ConceptLattice& lat) {
  const ReducedLabels labels = reduced_labels(lat);
  std::ostringstream out;
  out << "digraph lattice {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out << "  c" << i << " [label=\"" << detail::join(labels.attributes[i]) << "\\n"
        << detail::join(labels.objects[i]) << "\"];\n";
  }
  for (const CoverEdge& e : covering_relation(lat)) {
    out << "  c" << e.lower << " -> c" << e.upper << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fca
