#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fca/context.hpp"
#include "fca/cxt.hpp"
#include "fca/dot.hpp"
#include "fca/errors.hpp"
#include "fca/families.hpp"
#include "fca/generalization.hpp"
#include "fca/lattice.hpp"
#include "fca/scheme_file.hpp"

namespace fca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

/// Reference counts for K¹ₙ and its merge, keyed by n.
struct ReferenceRow {
  std::size_t n;
  std::uint64_t initial;
  std::uint64_t generalized;
  std::uint64_t increase;
};

inline constexpr ReferenceRow kReferenceK1Counts[] = {
    {2, 7, 8, 1},   {3, 13, 16, 3},     {4, 25, 32, 7},           {5, 49, 64, 15},
    {10, 1537, 2048, 511}, {20, 1572865, 2097152, 524287},
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << data;
}

inline FormalContext load_context(const std::string& path) { return parse_cxt(read_file(path)); }

/// "exists", "forall" or "alpha:p/q".
inline GeneralizationMode parse_mode(const std::string& text) {
  if (text == "exists") return ExistsMode{};
  if (text == "forall") return ForallMode{};
  if (text.rfind("alpha:", 0) == 0) {
    const std::string ratio = text.substr(6);
    const auto slash = ratio.find('/');
    if (slash == std::string::npos) throw ParameterError("alpha must be given as p/q");
    const auto p = detail::parse_count(ratio.substr(0, slash));
    const auto q = detail::parse_count(ratio.substr(slash + 1));
    if (!p || !q) throw ParameterError("alpha must be given as p/q with non-negative integers");
    AlphaMode alpha{*p, *q};
    validate_alpha(alpha);
    return alpha;
  }
  throw ParameterError("unknown mode '" + text + "' (expected exists, forall or alpha:p/q)");
}

inline std::string format_set(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i != 0) out += ", ";
    out += names[idx[i]];
  }
  return out + "}";
}

/// One `{extent} | {intent}` line per concept, in lattice order.
inline void print_concepts(const ConceptLattice& lat, std::ostream& out) {
  const FormalContext& ctx = lat.context();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out << format_set(ctx.object_names(), lat.extent(i).indices()) << " | "
        << format_set(ctx.attribute_names(), lat.intent(i).indices()) << '\n';
  }
}

/// Human-readable block followed by the key=value lines.
inline void print_report(const IncreaseReport& r, const std::string& a, const std::string& b,
                         std::ostream& out) {
  auto row = [&](const std::string& label, auto value) {
    out << "  " << std::left << std::setw(26) << label << std::right << std::setw(12) << value << '\n';
  };
  out << "exists-generalization of " << a << " and " << b << '\n';
  row("a' and b' disjoint", r.disjoint ? "yes" : "no");
  row("|B(K00)|", r.concepts_removed);
  row("|B(K12)| (initial)", r.concepts_initial);
  row("|B(K0s)| (generalized)", r.concepts_generalized);
  row("h(a)", r.h_a);
  row("h(b)", r.h_b);
  row("h(a and b)", r.h_a_and_b);
  row("h(a or b)", r.h_a_or_b);
  row("h(a,b) = h(a)+h(b)-h(a^b)", r.h_pair);
  row("|B(K12)| - |B(K00)|", r.pair_gain());
  row("realized increase", r.realized_increase);
  row("predicted increase", r.predicted_increase());
  row("upper bound", r.upper_bound);
  row("d0", r.d0);
  row("d1", r.d1);
  row("d2", r.d2);
  row("identity", r.identity_holds() ? "holds" : "VIOLATED");
  out << "h_a=" << r.h_a << '\n'
      << "h_b=" << r.h_b << '\n'
      << "h_a_and_b=" << r.h_a_and_b << '\n'
      << "h_a_or_b=" << r.h_a_or_b << '\n'
      << "h_pair=" << r.h_pair << '\n'
      << "increase=" << r.realized_increase << '\n'
      << "bound=" << r.upper_bound << '\n'
      << "d0=" << r.d0 << '\n'
      << "d1=" << r.d1 << '\n'
      << "d2=" << r.d2 << '\n';
}

struct Table2Row {
  std::size_t n = 0;
  std::uint64_t initial = 0;
  std::uint64_t generalized = 0;
  std::int64_t increase = 0;
  bool matches = false;
};

/// Enumerates K¹ₙ and its ∃-merge of m1, m2 and compares with the closed
/// forms and, where available, the reference counts.
inline Table2Row table2_row(std::size_t n) {
  const FormalContext k = family_k1(n);
  const FormalContext ge = generalize(k, merge_scheme(k, "m12", {"m1", "m2"}));
  Table2Row row;
  row.n = n;
  row.initial = count_concepts(k);
  row.generalized = count_concepts(ge);
  row.increase = static_cast<std::int64_t>(row.generalized) - static_cast<std::int64_t>(row.initial);
  const auto predicted = predicted_counts_kk(n, 1);
  row.matches = row.initial == predicted.initial_count && row.generalized == predicted.generalized_count &&
                row.increase == predicted.increase;
  for (const auto& pub : kReferenceK1Counts) {
    if (pub.n == n) {
      row.matches = row.matches && row.initial == pub.initial && row.generalized == pub.generalized &&
                    row.increase == static_cast<std::int64_t>(pub.increase);
    }
  }
  return row;
}

inline std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto value = detail::parse_count(rest.substr(0, comma));
    if (!value || *value < 1 || *value > n) {
      throw ParameterError("'" + text + "' must list elements of 1.." + std::to_string(n));
    }
    out.push_back(*value - 1);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concept lattice enumeration and attribute generalization analysis", "fca"};
  app.require_subcommand(1);

  std::string ctx_path;
  std::string dot_path;
  std::string scheme_path;
  std::string mode_text = "exists";
  std::string out_path;
  std::string attr_a;
  std::string attr_b;
  std::size_t max_n = 10;
  bool big = false;

  auto* count_cmd = app.add_subcommand("count", "Print the number of concepts");
  count_cmd->add_option("context", ctx_path, "Burmeister .cxt file")->required();

  auto* concepts_cmd = app.add_subcommand("concepts", "List all concepts in lectic order");
  concepts_cmd->add_option("context", ctx_path, "Burmeister .cxt file")->required();
  concepts_cmd->add_option("--dot", dot_path, "Also write the Hasse diagram as DOT");

  auto* gen_cmd = app.add_subcommand("generalize", "Merge attribute blocks and emit the new context");
  gen_cmd->add_option("context", ctx_path, "Burmeister .cxt file")->required();
  gen_cmd->add_option("--scheme", scheme_path, "Scheme file: 'name = m1, m2, ...' per line")->required();
  gen_cmd->add_option("--mode", mode_text, "exists | forall | alpha:p/q");
  gen_cmd->add_option("--out", out_path, "Write the .cxt here and print concept counts");

  auto* pair_cmd = app.add_subcommand("analyze-pair", "Increase accounting for merging two attributes");
  pair_cmd->add_option("context", ctx_path, "Burmeister .cxt file")->required();
  pair_cmd->add_option("--a", attr_a, "First attribute")->required();
  pair_cmd->add_option("--b", attr_b, "Second attribute")->required();

  auto* family_cmd = app.add_subcommand("family", "Emit a generated context as .cxt");
  family_cmd->require_subcommand(1);
  family_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  std::size_t fam_n = 0;
  std::size_t fam_k = 0;
  std::string cover_m1;
  std::string cover_m2;
  auto* fam_k1 = family_cmd->add_subcommand("k1", "K1_n");
  fam_k1->add_option("n", fam_n)->required();
  auto* fam_kk = family_cmd->add_subcommand("kk", "Kk_n");
  fam_kk->add_option("n", fam_n)->required();
  fam_kk->add_option("k", fam_k)->required();
  auto* fam_cover = family_cmd->add_subcommand("cover", "Covering of S_n by m1', m2'");
  fam_cover->add_option("n", fam_n)->required();
  fam_cover->add_option("--m1", cover_m1, "Comma-separated elements of m1' (1-based)")->required();
  fam_cover->add_option("--m2", cover_m2, "Comma-separated elements of m2' (1-based)")->required();
  auto* fam_contra = family_cmd->add_subcommand("contranominal", "(E, E, !=)");
  fam_contra->add_option("n", fam_n)->required();

  auto* table_cmd = app.add_subcommand("table2", "Re-derive the K1_n increase table");
  table_cmd->add_option("--max-n", max_n, "Largest n to enumerate (2..16, more with --big)");
  table_cmd->add_flag("--big", big, "Allow n up to 24 and add the n = 20 row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count_cmd) {
      out << count_concepts(load_context(ctx_path)) << '\n';
      return kExitOk;
    }

    if (*concepts_cmd) {
      const ConceptLattice lat = enumerate_concepts(load_context(ctx_path));
      print_concepts(lat, out);
      if (!dot_path.empty()) write_file(dot_path, export_dot(lat));
      return kExitOk;
    }

    if (*gen_cmd) {
      const FormalContext ctx = load_context(ctx_path);
      const auto blocks = parse_scheme_file(read_file(scheme_path));
      const FormalContext result = generalize(ctx, complete_scheme(ctx, blocks, parse_mode(mode_text)));
      if (out_path.empty()) {
        out << write_cxt(result);
      } else {
        write_file(out_path, write_cxt(result));
        out << "concepts_before=" << count_concepts(ctx) << '\n'
            << "concepts_after=" << count_concepts(result) << '\n';
      }
      return kExitOk;
    }

    if (*pair_cmd) {
      const IncreaseReport report = pair_increase_report(load_context(ctx_path), attr_a, attr_b);
      print_report(report, attr_a, attr_b, out);
      if (!report.identity_holds()) {
        err << "verification mismatch: h(a)+h(b)-h(a^b) = " << report.h_pair
            << " but |B(K12)| - |B(K00)| = " << report.pair_gain() << '\n';
        return kExitMismatch;
      }
      return kExitOk;
    }

    if (*family_cmd) {
      FormalContext ctx;
      if (*fam_k1) {
        ctx = family_k1(fam_n);
      } else if (*fam_kk) {
        ctx = family_kk(fam_n, fam_k);
      } else if (*fam_cover) {
        ctx = family_cover(fam_n, ObjectSet::from_indices(fam_n, parse_index_list(cover_m1, fam_n)),
                           ObjectSet::from_indices(fam_n, parse_index_list(cover_m2, fam_n)));
      } else {
        ctx = contranominal(fam_n);
      }
      if (out_path.empty()) {
        out << write_cxt(ctx);
      } else {
        write_file(out_path, write_cxt(ctx));
      }
      return kExitOk;
    }

    if (*table_cmd) {
      const std::size_t limit = big ? kMaxFamilySize : 16;
      if (max_n < 2 || max_n > limit) {
        err << "--max-n must be in 2.." << limit << (big ? "" : " (use --big for more)") << '\n';
        return kExitUsage;
      }
      std::vector<std::size_t> ns;
      for (std::size_t n = 2; n <= max_n; ++n) ns.push_back(n);
      if (big && max_n < 20) ns.push_back(20);

      bool all_match = true;
      out << std::setw(4) << "n" << std::setw(12) << "|B(K1n)|" << std::setw(12) << "|B(K1nge)|"
          << std::setw(12) << "increase" << "  status\n";
      for (std::size_t n : ns) {
        const Table2Row row = table2_row(n);
        all_match = all_match && row.matches;
        out << std::setw(4) << row.n << std::setw(12) << row.initial << std::setw(12) << row.generalized
            << std::setw(12) << row.increase << "  " << (row.matches ? "ok" : "MISMATCH") << '\n';
      }
      return all_match ? kExitOk : kExitMismatch;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fca");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fca::cli
