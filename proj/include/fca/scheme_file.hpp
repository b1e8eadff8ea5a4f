#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fca/context.hpp"
#include "fca/cxt.hpp"
#include "fca/errors.hpp"
#include "fca/generalization.hpp"

namespace fca {

/// Reads `name = m1, m2, ...` lines. Blank lines and lines starting with
/// '#' are ignored.
inline std::vector<AttributeBlock> parse_scheme_file(std::string_view text) {
  std::vector<AttributeBlock> blocks;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(i + 1, "expected 'name = attr, attr, ...'");
    AttributeBlock block;
    block.name = std::string(detail::trim(line.substr(0, eq)));
    if (block.name.empty()) throw ParseError(i + 1, "missing generalized attribute name");
    std::string_view rest = line.substr(eq + 1);
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = detail::trim(rest.substr(0, comma));
      if (item.empty()) throw ParseError(i + 1, "empty attribute name in block '" + block.name + "'");
      block.members.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

/// Turns the declared blocks into a full partition: attributes not named in
/// any block stay as singletons, and every block sits at the position of its
/// first member in the context's attribute order.
inline GeneralizationScheme complete_scheme(const FormalContext& ctx,
                                            const std::vector<AttributeBlock>& declared,
                                            GeneralizationMode mode) {
  std::vector<std::ptrdiff_t> owner(ctx.num_attributes(), -1);
  for (std::size_t b = 0; b < declared.size(); ++b) {
    for (const auto& m : declared[b].members) {
      const auto idx = ctx.find_attribute(m);
      if (!idx) throw SchemeError("block '" + declared[b].label() + "' names unknown attribute '" + m + "'");
      if (owner[*idx] != -1) throw SchemeError("attribute '" + m + "' appears in more than one block");
      owner[*idx] = static_cast<std::ptrdiff_t>(b);
    }
  }
  GeneralizationScheme scheme;
  scheme.mode = mode;
  std::vector<bool> placed(declared.size(), false);
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    if (owner[m] < 0) {
      const auto& label = ctx.attribute_names()[m];
      scheme.blocks.push_back({label, {label}});
    } else if (!placed[static_cast<std::size_t>(owner[m])]) {
      placed[static_cast<std::size_t>(owner[m])] = true;
      scheme.blocks.push_back(declared[static_cast<std::size_t>(owner[m])]);
    }
  }
  for (std::size_t b = 0; b < declared.size(); ++b) {
    if (!placed[b]) throw SchemeError("block '" + declared[b].label() + "' is empty");
  }
  validate_scheme(ctx, scheme);
  return scheme;
}

}  // namespace fca
