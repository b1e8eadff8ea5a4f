#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/errors.hpp"

// Burmeister .cxt reader and writer.
//
//   B
//   <name line, may be blank>
//   |G|
//   |M|
//   <blank>
//   |G| object names, one per line
//   |M| attribute names, one per line
//   |G| rows of '.' / 'X', each |M| characters wide

namespace fca {

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(current));
      current.clear();
    } else if (c == '\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<std::size_t> parse_count(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

inline FormalContext parse_cxt(std::string_view text) {
  const std::vector<std::string> lines = detail::split_lines(text);
  std::size_t pos = 0;
  auto line_no = [&] { return pos + 1; };
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= lines.size()) throw ParseError(line_no(), std::string("unexpected end of input, expected ") + what);
    return lines[pos++];
  };

  if (detail::trim(next("header 'B'")) != "B") throw ParseError(1, "expected header 'B'");

  // The name line is optional. Three integers in a row mean it is present
  // and numeric; two integers followed by a non-integer mean it is absent.
  const bool has_name = [&] {
    if (pos + 2 >= lines.size()) return !detail::parse_count(lines[pos]).has_value();
    const bool a = detail::parse_count(lines[pos]).has_value();
    const bool b = detail::parse_count(lines[pos + 1]).has_value();
    const bool c = detail::parse_count(lines[pos + 2]).has_value();
    return !(a && b && !c);
  }();
  if (has_name) ++pos;

  const std::size_t g_line = line_no();
  const auto n_objects = detail::parse_count(next("object count"));
  if (!n_objects) throw ParseError(g_line, "invalid object count");
  const std::size_t m_line = line_no();
  const auto n_attributes = detail::parse_count(next("attribute count"));
  if (!n_attributes) throw ParseError(m_line, "invalid attribute count");
  if (!detail::trim(next("blank separator")).empty()) {
    throw ParseError(pos, "expected a blank line after the dimensions");
  }

  std::vector<std::string> objects;
  objects.reserve(*n_objects);
  for (std::size_t i = 0; i < *n_objects; ++i) objects.push_back(next("object name"));
  std::vector<std::string> attributes;
  attributes.reserve(*n_attributes);
  for (std::size_t i = 0; i < *n_attributes; ++i) attributes.push_back(next("attribute name"));

  std::vector<AttributeSet> rows;
  rows.reserve(*n_objects);
  for (std::size_t g = 0; g < *n_objects; ++g) {
    const std::size_t row_line = line_no();
    const std::string_view cells = detail::trim(next("incidence row"));
    if (cells.size() != *n_attributes) {
      throw ParseError(row_line, "row has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(*n_attributes));
    }
    AttributeSet row(*n_attributes);
    for (std::size_t m = 0; m < cells.size(); ++m) {
      if (cells[m] == 'X') {
        row.set(m);
      } else if (cells[m] != '.') {
        throw ParseError(row_line, std::string("illegal cell '") + cells[m] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  for (; pos < lines.size(); ++pos) {
    if (!detail::trim(lines[pos]).empty()) throw ParseError(line_no(), "trailing content after the incidence rows");
  }

  try {
    return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
  } catch (const NameCollisionError& e) {
    throw ParseError(g_line, e.what());
  }
}

/// Canonical serialization with a blank name line and '\n' line endings.
inline std::string write_cxt(const FormalContext& ctx) {
  std::ostringstream out;
  out << "B\n\n" << ctx.num_objects() << '\n' << ctx.num_attributes() << "\n\n";
  for (const auto& g : ctx.object_names()) out << g << '\n';
  for (const auto& m : ctx.attribute_names()) out << m << '\n';
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) out << (ctx.incident(g, m) ? 'X' : '.');
    out << '\n';
  }
  return out.str();
}

}  // namespace fca
