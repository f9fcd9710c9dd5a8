#include "acspec/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "acspec/equivalence.hpp"
#include "acspec/errors.hpp"

namespace acspec {

bool ReportDocument::all_match() const {
  for (const ReportEntry& e : entries)
    if (e.verdict == "mismatch") return false;
  return true;
}

std::string emit_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["version"] = doc.version;
  j["command"] = doc.command;
  j["entries"] = nlohmann::ordered_json::array();
  for (const ReportEntry& e : doc.entries) {
    nlohmann::ordered_json je;
    je["groupoid"] = e.groupoid;
    je["kind"] = e.kind;
    je["n"] = e.n;
    je["count"] = e.count;
    if (e.expected)
      je["expected"] = *e.expected;
    else
      je["expected"] = nullptr;
    je["verdict"] = e.verdict;
    je["millis"] = e.millis;
    j["entries"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

ReportDocument parse_json_report(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("report: invalid JSON: ") + e.what());
  }
  ReportDocument doc;
  doc.version = j.at("version").get<std::string>();
  doc.command = j.at("command").get<std::string>();
  for (const nlohmann::json& je : j.at("entries")) {
    ReportEntry e;
    e.groupoid = je.at("groupoid").get<std::string>();
    e.kind = je.at("kind").get<std::string>();
    e.n = je.at("n").get<int>();
    e.count = je.at("count").get<std::uint64_t>();
    if (!je.at("expected").is_null()) e.expected = je.at("expected").get<std::uint64_t>();
    e.verdict = je.at("verdict").get<std::string>();
    e.millis = je.at("millis").get<double>();
    doc.entries.push_back(std::move(e));
  }
  return doc;
}

std::string emit_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "groupoid,kind,n,count,expected,verdict\n";
  for (const ReportEntry& e : doc.entries) {
    out << e.groupoid << "," << e.kind << "," << e.n << "," << e.count << ",";
    if (e.expected) out << *e.expected;
    out << "," << e.verdict << "\n";
  }
  return out.str();
}

std::string emit_text(const ReportDocument& doc) {
  std::ostringstream out;
  out << "# " << doc.command << "\n";
  out << "groupoid                 kind    n  count        expected     verdict\n";
  for (const ReportEntry& e : doc.entries) {
    out << e.groupoid;
    for (std::size_t i = e.groupoid.size(); i < 25; ++i) out << ' ';
    out << e.kind;
    for (std::size_t i = e.kind.size(); i < 8; ++i) out << ' ';
    std::string ns = std::to_string(e.n);
    out << ns;
    for (std::size_t i = ns.size(); i < 3; ++i) out << ' ';
    std::string cs = std::to_string(e.count);
    out << cs;
    for (std::size_t i = cs.size(); i < 13; ++i) out << ' ';
    std::string es = e.expected ? std::to_string(*e.expected) : std::string("-");
    out << es;
    for (std::size_t i = es.size(); i < 13; ++i) out << ' ';
    out << e.verdict << "\n";
  }
  return out.str();
}

namespace {

std::uint64_t class_count_u64(const RelationId& r, int n, Universe universe, int jobs) {
  ClassCountOptions opt;
  opt.jobs = jobs;
  return class_count(r, n, universe, opt);
}

}  // namespace

std::optional<BigCount> expected_count(const std::string& id, SpectrumKind kind, int n,
                                       int jobs) {
  const bool ac = kind == SpectrumKind::ac;
  if (id == "const1" || id == "min" || id == "xor") return BigCount(1);
  if (id == "proj") return ac ? BigCount(n) : BigCount(1);
  if (id == "succ2") {
    if (ac) return n <= 2 ? BigCount(n) : BigCount(2 * n);
    return n <= 2 ? BigCount(1) : BigCount(2);
  }
  if (id == "nor" || id == "rps" || id == "rps-e" || id == "join" || id == "free-commutative")
    return ac ? double_factorial_D(n - 1) : catalan(n - 1);
  if (id == "implication" || id == "converse-implication" || id == "exponentiation")
    return ac ? tree_power(n) : catalan(n - 1);
  if (id == "leftzero-e" || id == "free-semigroup2")
    return ac ? factorial(n) : BigCount(1);
  if (id == "free-groupoid")
    return ac ? factorial(n) * catalan(n - 1) : catalan(n - 1);
  if (id == "mean" || id == "harmonic")
    return ac ? compositions_of_one(n) : catalan(n - 1);
  if (id == "cross" || id == "sl2") {
    if (ac) return n == 1 ? BigCount(1) : 2 * double_factorial_D(n - 1);
    return catalan(n - 1);
  }
  if (id == "sub" || id == "add-zeta2" || id == "add-zeta3" || id == "add-zeta4") {
    const int k = id == "sub" ? 2 : id.back() - '0';
    if (ac) return ac_right_k(n, k);
    // modular Catalan: no closed formula in scope; the depth relation is an
    // independent engine
    return BigCount(class_count_u64(KRightDepth{k}, n, Universe::bracketings, jobs));
  }
  if (id == "double-minus" || id == "scale-zeta2") {
    if (ac) return jacobsthal_ac(n);
    return n == 1 ? BigCount(1) : floor_two_thirds(n);
  }
  if (id == "scale-zeta3" || id == "scale-zeta4") {
    const int k = id.back() - '0';
    const Universe universe = ac ? Universe::full_linear_terms : Universe::bracketings;
    return BigCount(class_count_u64(KDepth{k}, n, universe, jobs));
  }
  return std::nullopt;
}

ReportEntry make_report_entry(const std::string& groupoid_label,
                              const std::optional<std::string>& catalog_id, SpectrumKind kind,
                              const SpectrumEntry& computed, int jobs) {
  ReportEntry e;
  e.groupoid = groupoid_label;
  e.kind = kind == SpectrumKind::ac ? "ac" : "assoc";
  e.n = computed.n;
  e.count = computed.class_count;
  e.millis = computed.millis;
  std::optional<BigCount> expected =
      catalog_id ? expected_count(*catalog_id, kind, computed.n, jobs) : std::nullopt;
  if (!expected) {
    e.verdict = "no-formula";
    return e;
  }
  if (!expected->fits_ulong_p()) {
    e.verdict = "no-formula";
    return e;
  }
  e.expected = static_cast<std::uint64_t>(expected->get_ui());
  e.verdict = (*e.expected == e.count) ? "match" : "mismatch";
  return e;
}

}  // namespace acspec
