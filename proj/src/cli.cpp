#include "acspec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acspec/equivalence.hpp"
#include "acspec/errors.hpp"
#include "acspec/formulas.hpp"
#include "acspec/groupoid.hpp"
#include "acspec/report.hpp"
#include "acspec/spectrum.hpp"
#include "acspec/terms.hpp"

namespace acspec {

namespace {

struct Resolved {
  std::string label;
  std::optional<std::string> catalog_id;
  GroupoidSpec spec;
};

Resolved resolve_groupoid(const std::string& name) {
  if (const CatalogEntry* entry = catalog_find(name))
    return {entry->id, entry->id, entry->spec};
  const bool path_like = name.find('/') != std::string::npos ||
                         (name.size() > 5 && name.substr(name.size() - 5) == ".json");
  if (path_like || std::filesystem::exists(name)) {
    FiniteTable table = load_finite_table_file(name);
    return {name, std::nullopt, std::move(table)};
  }
  throw UnknownIdError("unknown groupoid id \"" + name + "\" (not in catalog, not a file)");
}

SpectrumKind parse_kind(const std::string& kind) {
  if (kind == "ac") return SpectrumKind::ac;
  if (kind == "assoc") return SpectrumKind::assoc;
  throw ValidationError("unknown kind \"" + kind + "\" (expected ac or assoc)");
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ValidationError("cannot write output file " + out_path);
  file << text;
}

std::string format_report(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return emit_json(doc);
  if (format == "csv") return emit_csv(doc);
  if (format == "text") return emit_text(doc);
  throw ValidationError("unknown format \"" + format + "\"");
}

std::string command_echo(const std::vector<std::string>& args) {
  std::string echo = "acspec";
  for (const std::string& a : args) {
    echo += ' ';
    echo += a;
  }
  return echo;
}

struct StructuralFlags {
  bool commutative;
  bool associative;
};

StructuralFlags structural_flags(StructuralKind kind) {
  switch (kind) {
    case StructuralKind::free_groupoid:
      return {false, false};
    case StructuralKind::free_commutative:
      return {true, false};
    case StructuralKind::free_semigroup_two_gen:
      return {false, true};
    case StructuralKind::exponentiation:
      return {false, false};
  }
  return {false, false};
}

std::string kind_name(const GroupoidSpec& g) {
  if (const FiniteTable* ft = std::get_if<FiniteTable>(&g))
    return "table(" + std::to_string(ft->size()) + ")";
  if (std::holds_alternative<Linear>(g)) return "linear";
  if (const Bilinear* bil = std::get_if<Bilinear>(&g))
    return "bilinear(" + std::to_string(bil->dim) + ")";
  return "structural";
}

int cmd_list(const std::string& format, const std::string& out_path,
             const std::vector<std::string>& args, std::ostream& out) {
  TermTree x1x2 = parse_term("(x1 x2)");
  TermTree x2x1 = parse_term("(x2 x1)");
  TermTree left_assoc = parse_term("((x1 x2) x3)");
  TermTree right_assoc = parse_term("(x1 (x2 x3))");
  struct Row {
    std::string id;
    std::string kind;
    bool commutative;
    bool associative;
    std::string description;
  };
  std::vector<Row> rows;
  for (const CatalogEntry& entry : catalog()) {
    Row row;
    row.id = entry.id;
    row.kind = kind_name(entry.spec);
    row.description = entry.description;
    if (const Structural* s = std::get_if<Structural>(&entry.spec)) {
      StructuralFlags flags = structural_flags(s->kind);
      row.commutative = flags.commutative;
      row.associative = flags.associative;
    } else {
      row.commutative = verify_identity(entry.spec, x1x2, x2x1).holds;
      row.associative = verify_identity(entry.spec, left_assoc, right_assoc).holds;
    }
    rows.push_back(std::move(row));
  }
  std::string text;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["command"] = command_echo(args);
    j["groupoids"] = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
      j["groupoids"].push_back({{"id", r.id},
                                {"kind", r.kind},
                                {"commutative", r.commutative},
                                {"associative", r.associative},
                                {"description", r.description}});
    }
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    os << "id,kind,commutative,associative\n";
    for (const Row& r : rows)
      os << r.id << "," << r.kind << "," << (r.commutative ? "true" : "false") << ","
         << (r.associative ? "true" : "false") << "\n";
    text = os.str();
  } else {
    std::ostringstream os;
    for (const Row& r : rows) {
      os << r.id;
      for (std::size_t i = r.id.size(); i < 24; ++i) os << ' ';
      os << r.kind;
      for (std::size_t i = r.kind.size(); i < 14; ++i) os << ' ';
      os << (r.commutative ? "commutative    " : "noncommutative ")
         << (r.associative ? "associative    " : "nonassociative ") << r.description << "\n";
    }
    text = os.str();
  }
  write_output(text, out_path, out);
  return 0;
}

int cmd_spectrum(const std::string& groupoid, const std::string& kind_str, int n_max,
                 const std::string& format, int jobs, const std::string& out_path,
                 const std::vector<std::string>& args, std::ostream& out) {
  Resolved g = resolve_groupoid(groupoid);
  SpectrumKind kind = parse_kind(kind_str);
  SpectrumOptions options;
  options.jobs = jobs;
  ReportDocument doc;
  doc.command = command_echo(args);
  for (int n = 1; n <= n_max; ++n) {
    SpectrumEntry entry = kind == SpectrumKind::ac ? ac_spectrum(g.spec, n, options)
                                                   : assoc_spectrum(g.spec, n, options);
    doc.entries.push_back(make_report_entry(g.label, g.catalog_id, kind, entry, jobs));
  }
  write_output(format_report(doc, format), out_path, out);
  return doc.all_match() ? 0 : 1;
}

int cmd_table1(int n_max, const std::string& format, int jobs, const std::string& out_path,
               const std::vector<std::string>& args, std::ostream& out) {
  SpectrumOptions options;
  options.jobs = jobs;
  ReportDocument doc;
  doc.command = command_echo(args);
  for (const CatalogEntry& entry : catalog()) {
    const int cap = effective_spectrum_cap(entry.spec);
    const int row_max = std::min(n_max, cap);
    for (SpectrumKind kind : {SpectrumKind::ac, SpectrumKind::assoc}) {
      for (int n = 1; n <= row_max; ++n) {
        SpectrumEntry computed = kind == SpectrumKind::ac ? ac_spectrum(entry.spec, n, options)
                                                          : assoc_spectrum(entry.spec, n, options);
        doc.entries.push_back(make_report_entry(entry.id, entry.id, kind, computed, jobs));
      }
    }
  }
  write_output(format_report(doc, format), out_path, out);
  return doc.all_match() ? 0 : 1;
}

int cmd_classes(const std::string& groupoid, const std::string& kind_str, int n,
                const std::string& format, int jobs, const std::string& out_path,
                const std::vector<std::string>& args, std::ostream& out) {
  Resolved g = resolve_groupoid(groupoid);
  SpectrumKind kind = parse_kind(kind_str);
  SpectrumOptions options;
  options.jobs = jobs;
  FinePartition part = fine_spectrum(g.spec, n, kind, options);
  const Universe universe = universe_of(kind);
  const std::uint64_t universe_size =
      universe == Universe::bracketings ? bracketing_count(n) : full_linear_count(n);
  auto term_of = [&](std::uint64_t index) {
    return universe == Universe::bracketings ? bracketing_at(n, index)
                                             : full_linear_term_at(n, index);
  };
  const bool with_members = universe_size <= 5000;

  std::string text;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["command"] = command_echo(args);
    j["groupoid"] = g.label;
    j["kind"] = kind_str;
    j["n"] = n;
    j["term_count"] = universe_size;
    j["class_count"] = part.classes.size();
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& members : part.classes) {
      nlohmann::ordered_json jc;
      jc["representative"] = render_term(term_of(members.front()));
      jc["size"] = members.size();
      if (with_members) {
        nlohmann::ordered_json jm = nlohmann::ordered_json::array();
        for (std::uint64_t idx : members) jm.push_back(render_term(term_of(idx)));
        jc["members"] = std::move(jm);
      }
      j["classes"].push_back(std::move(jc));
    }
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    os << "class,representative,size\n";
    for (std::size_t c = 0; c < part.classes.size(); ++c)
      os << c + 1 << ",\"" << render_term(term_of(part.classes[c].front())) << "\","
         << part.classes[c].size() << "\n";
    text = os.str();
  } else {
    std::ostringstream os;
    os << "# " << command_echo(args) << "\n";
    os << g.label << " " << kind_str << " n=" << n << ": " << part.classes.size()
       << " classes over " << universe_size << " terms\n";
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      const auto& members = part.classes[c];
      os << "class " << c + 1 << ": size " << members.size() << ", representative "
         << render_term(term_of(members.front())) << "\n";
      if (with_members) {
        os << "  members:";
        for (std::uint64_t idx : members) os << " " << render_term(term_of(idx));
        os << "\n";
      }
    }
    text = os.str();
  }
  write_output(text, out_path, out);
  return 0;
}

int cmd_formula(const std::string& name, const std::vector<int>& fargs, std::ostream& out) {
  std::string key = name;
  for (char& c : key)
    if (c == '_') c = '-';
  auto need = [&](std::size_t count) {
    if (fargs.size() != count)
      throw ValidationError("formula " + name + " takes " + std::to_string(count) +
                            " argument(s)");
  };
  BigCount value;
  if (key == "catalan") {
    need(1);
    value = catalan(fargs[0]);
  } else if (key == "double-factorial" || key == "double-factorial-d") {
    need(1);
    value = double_factorial_D(fargs[0]);
  } else if (key == "stirling2") {
    need(2);
    value = stirling2(fargs[0], fargs[1]);
  } else if (key == "factorial") {
    need(1);
    value = factorial(fargs[0]);
  } else if (key == "tree-power") {
    need(1);
    value = tree_power(fargs[0]);
  } else if (key == "ac-right-k") {
    need(2);
    value = ac_right_k(fargs[0], fargs[1]);
  } else if (key == "jacobsthal-ac") {
    need(1);
    value = jacobsthal_ac(fargs[0]);
  } else if (key == "floor-two-thirds") {
    need(1);
    value = floor_two_thirds(fargs[0]);
  } else if (key == "compositions-of-one") {
    need(1);
    value = compositions_of_one(fargs[0]);
  } else {
    throw UnknownIdError("unknown formula \"" + name + "\"");
  }
  out << value.get_str() << "\n";
  return 0;
}

int cmd_verify(int jobs, std::uint64_t seed, const std::string& out_path,
               const std::vector<std::string>& args, std::ostream& out) {
  std::ostringstream os;
  os << "# " << command_echo(args) << "\n";
  bool all_ok = true;
  auto check = [&](bool ok, const std::string& what) {
    os << (ok ? "PASS " : "FAIL ") << what << "\n";
    all_ok = all_ok && ok;
  };
  SpectrumOptions sopt;
  sopt.jobs = jobs;
  ClassCountOptions copt;
  copt.jobs = jobs;

  for (int k = 2; k <= 4; ++k) {
    const GroupoidSpec& g = catalog_find("add-zeta" + std::to_string(k))->spec;
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t classes = class_count(KRightDepth{k}, n, Universe::full_linear_terms, copt);
      std::uint64_t spectrum = ac_spectrum(g, n, sopt).class_count;
      check(classes == spectrum, "k-right-depth(" + std::to_string(k) + ") classes = ac(add-zeta" +
                                     std::to_string(k) + ") at n=" + std::to_string(n) + " [" +
                                     std::to_string(classes) + "]");
    }
  }
  {
    const GroupoidSpec& g = catalog_find("double-minus")->spec;
    for (int n = 1; n <= 7; ++n) {
      std::uint64_t classes = class_count(KDepth{2}, n, Universe::full_linear_terms, copt);
      std::uint64_t spectrum = ac_spectrum(g, n, sopt).class_count;
      check(classes == spectrum, "k-depth(2) classes = ac(double-minus) at n=" +
                                     std::to_string(n) + " [" + std::to_string(classes) + "]");
    }
  }
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 7; ++n) {
      std::uint64_t right = class_count(KRightDepth{k}, n, Universe::bracketings, copt);
      std::uint64_t left = class_count(KLeftDepth{k}, n, Universe::bracketings, copt);
      check(right == left, "left/right mirror symmetry over bracketings, k=" + std::to_string(k) +
                               ", n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t syntactic = class_count(SyntacticEquality{}, n, Universe::full_linear_terms, copt);
    std::uint64_t order = class_count(LeafOrder{}, n, Universe::full_linear_terms, copt);
    check(syntactic == full_linear_count(n),
          "syntactic-equality classes = n! C_{n-1} at n=" + std::to_string(n));
    check(order == factorial(n).get_ui(), "leaf-order classes = n! at n=" + std::to_string(n));
  }
  for (int n = 1; n <= 5; ++n) {
    ExponentiationSanity sanity = exponentiation_sanity(n, 100, seed);
    check(sanity.passed(), "exponentiation sanity at n=" + std::to_string(n) + " (classes=" +
                               std::to_string(sanity.class_count) + ")");
  }
  os << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES above\n");
  write_output(os.str(), out_path, out);
  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"associative and ac-spectrum computations by exact enumeration"};
  app.require_subcommand(1);

  std::string groupoid;
  std::string kind = "ac";
  std::string format = "text";
  std::string out_path;
  int n_max = 6;
  int n_single = 3;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string formula_name;
  std::vector<int> formula_args;

  CLI::App* list = app.add_subcommand("list", "catalog ids with commutative/associative flags");
  list->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  list->add_option("--out", out_path);

  CLI::App* spectrum = app.add_subcommand("spectrum", "spectrum of one groupoid for n = 1..n-max");
  spectrum->add_option("groupoid", groupoid, "catalog id or finite groupoid JSON file")->required();
  spectrum->add_option("--kind", kind)->check(CLI::IsMember({"ac", "assoc"}));
  spectrum->add_option("--n-max", n_max)->check(CLI::Range(1, 12));
  spectrum->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  spectrum->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
  spectrum->add_option("--out", out_path);

  CLI::App* table1 = app.add_subcommand("table1", "reproduce every summary-table row, PASS/FAIL per cell");
  table1->add_option("--n-max", n_max)->check(CLI::Range(1, 12));
  table1->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  table1->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
  table1->add_option("--out", out_path);

  CLI::App* classes = app.add_subcommand("classes", "fine-spectrum partition dump");
  classes->add_option("groupoid", groupoid)->required();
  classes->add_option("--kind", kind)->check(CLI::IsMember({"ac", "assoc"}));
  classes->add_option("--n", n_single)->check(CLI::Range(1, 12));
  classes->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  classes->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
  classes->add_option("--out", out_path);

  CLI::App* formula = app.add_subcommand("formula", "evaluate one counting formula");
  formula->add_option("name", formula_name)->required();
  formula->add_option("args", formula_args);

  CLI::App* verify = app.add_subcommand("verify", "relation-vs-groupoid consistency suite");
  verify->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
  verify->add_option("--seed", seed, "seed for the exponentiation sanity check");
  verify->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 64;
  }

  try {
    if (list->parsed()) return cmd_list(format, out_path, args, out);
    if (spectrum->parsed())
      return cmd_spectrum(groupoid, kind, n_max, format, jobs, out_path, args, out);
    if (table1->parsed()) return cmd_table1(n_max, format, jobs, out_path, args, out);
    if (classes->parsed())
      return cmd_classes(groupoid, kind, n_single, format, jobs, out_path, args, out);
    if (formula->parsed()) return cmd_formula(formula_name, formula_args, out);
    if (verify->parsed()) return cmd_verify(jobs, seed, out_path, args, out);
  } catch (const UnknownIdError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 64;
}

}  // namespace acspec
