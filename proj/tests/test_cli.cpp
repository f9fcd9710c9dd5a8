#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "acspec/cli.hpp"
#include "acspec/report.hpp"

using namespace acspec;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::uint64_t> counts_of(const ReportDocument& doc) {
  std::vector<std::uint64_t> counts;
  for (const ReportEntry& e : doc.entries) counts.push_back(e.count);
  return counts;
}

}  // namespace

TEST_CASE("list computes commutative/associative flags") {
  CliRun r = run({"list", "--format", "csv"});
  CHECK(r.exit_code == 0);
  // the full classification, entry by entry
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"const1", "true,true"},
      {"proj", "false,true"},
      {"min", "true,true"},
      {"xor", "true,true"},
      {"succ2", "false,false"},
      {"nor", "true,false"},
      {"implication", "false,false"},
      {"converse-implication", "false,false"},
      {"rps", "true,false"},
      {"rps-e", "true,false"},
      {"leftzero-e", "false,true"},
      {"mean", "true,false"},
      {"harmonic", "true,false"},
      {"sub", "false,false"},
      {"double-minus", "true,false"},
      {"add-zeta2", "false,false"},
      {"add-zeta3", "false,false"},
      {"add-zeta4", "false,false"},
      {"scale-zeta2", "true,false"},
      {"scale-zeta3", "true,false"},
      {"scale-zeta4", "true,false"},
      {"cross", "false,false"},
      {"join", "true,false"},
      {"sl2", "false,false"},
      {"free-groupoid", "false,false"},
      {"free-commutative", "true,false"},
      {"free-semigroup2", "false,true"},
      {"exponentiation", "false,false"},
  };
  for (const auto& [id, flags] : expected) {
    bool found = false;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.rfind(id + ",", 0) == 0) {
        found = line.size() >= flags.size() &&
                line.compare(line.size() - flags.size(), flags.size(), flags) == 0;
        break;
      }
    }
    INFO(id);
    CHECK(found);
  }
}

TEST_CASE("spectrum command with formula cross-checks") {
  CliRun r = run({"spectrum", "rps", "--kind", "ac", "--n-max", "5", "--format", "json"});
  CHECK(r.exit_code == 0);
  ReportDocument doc = parse_json_report(r.out);
  CHECK(counts_of(doc) == std::vector<std::uint64_t>{1, 1, 3, 15, 105});
  for (const ReportEntry& e : doc.entries) CHECK(e.verdict == "match");

  CliRun succ = run({"spectrum", "succ2", "--kind", "ac", "--n-max", "4", "--format", "json"});
  CHECK(succ.exit_code == 0);
  CHECK(counts_of(parse_json_report(succ.out)) == std::vector<std::uint64_t>{1, 2, 6, 8});

  CliRun cross = run({"spectrum", "cross", "--kind", "ac", "--n-max", "4", "--format", "json"});
  CHECK(cross.exit_code == 0);
  CHECK(counts_of(parse_json_report(cross.out)) == std::vector<std::uint64_t>{1, 2, 6, 30});
}

TEST_CASE("json reports round-trip") {
  CliRun r = run({"spectrum", "nor", "--kind", "ac", "--n-max", "4", "--format", "json"});
  ReportDocument doc = parse_json_report(r.out);
  ReportDocument again = parse_json_report(emit_json(doc));
  CHECK(doc == again);
}

TEST_CASE("csv schema") {
  CliRun r = run({"spectrum", "mean", "--kind", "assoc", "--n-max", "3", "--format", "csv"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "groupoid,kind,n,count,expected,verdict");
  std::string row;
  std::getline(lines, row);
  CHECK(row == "mean,assoc,1,1,1,match");
}

TEST_CASE("exit codes") {
  CHECK(run({"spectrum", "no-such-groupoid", "--n-max", "2"}).exit_code == 2);
  CHECK(run({"formula", "no-such-formula", "1"}).exit_code == 2);

  std::filesystem::path tmp = std::filesystem::temp_directory_path() / "acspec_bad_groupoid.json";
  {
    std::ofstream f(tmp);
    f << R"({"elements":["a","b"],"table":[[0,5],[0,0]]})";
  }
  CHECK(run({"spectrum", tmp.string(), "--n-max", "2"}).exit_code == 3);
  std::filesystem::remove(tmp);

  CHECK(run({"spectrum", "nor", "--n-max", "9"}).exit_code == 4);
  CHECK(run({"spectrum", "rps", "--n-max", "7"}).exit_code == 4);
}

TEST_CASE("user-supplied groupoid files run without formulas") {
  std::filesystem::path tmp = std::filesystem::temp_directory_path() / "acspec_user_groupoid.json";
  {
    std::ofstream f(tmp);
    // NOR written out by hand
    f << R"({"elements":["0","1"],"table":[[1,0],[0,0]]})";
  }
  CliRun r = run({"spectrum", tmp.string(), "--kind", "ac", "--n-max", "4", "--format", "json"});
  CHECK(r.exit_code == 0);
  ReportDocument doc = parse_json_report(r.out);
  CHECK(counts_of(doc) == std::vector<std::uint64_t>{1, 1, 3, 15});
  for (const ReportEntry& e : doc.entries) CHECK(e.verdict == "no-formula");
  std::filesystem::remove(tmp);
}

TEST_CASE("formula command") {
  CHECK(run({"formula", "ac_right_k", "4", "3"}).out == "40\n");
  CHECK(run({"formula", "compositions-of-one", "4"}).out == "13\n");
  CHECK(run({"formula", "catalan", "4"}).out == "14\n");
  CHECK(run({"formula", "stirling2", "4", "2"}).out == "7\n");
  CHECK(run({"formula", "jacobsthal-ac", "5"}).out == "11\n");
  CHECK(run({"formula", "catalan"}).exit_code == 3);
}

TEST_CASE("classes command") {
  CliRun r = run({"classes", "mean", "--kind", "ac", "--n", "3", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"class_count\": 3") != std::string::npos);

  CliRun text = run({"classes", "free-commutative", "--kind", "ac", "--n", "3"});
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("3 classes over 12 terms") != std::string::npos);
}

TEST_CASE("jobs flag does not change results") {
  CliRun serial = run({"spectrum", "nor", "--kind", "ac", "--n-max", "5", "--format", "csv"});
  CliRun parallel =
      run({"spectrum", "nor", "--kind", "ac", "--n-max", "5", "--format", "csv", "--jobs", "8"});
  CHECK(serial.exit_code == 0);
  CHECK(parallel.exit_code == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("table1 at small n") {
  CliRun r = run({"table1", "--n-max", "3", "--format", "csv"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mismatch") == std::string::npos);
  CHECK(r.out.find("free-groupoid,ac,3,12,12,match") != std::string::npos);
}

TEST_CASE("table1 full run matches the summary rows") {
  CliRun r = run({"table1", "--n-max", "6", "--format", "csv", "--jobs", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mismatch") == std::string::npos);
  // spot rows quoted in the summary
  CHECK(r.out.find("free-groupoid,ac,4,120,120,match") != std::string::npos);
  CHECK(r.out.find("free-groupoid,assoc,4,5,5,match") != std::string::npos);
  CHECK(r.out.find("leftzero-e,ac,4,24,24,match") != std::string::npos);
  CHECK(r.out.find("leftzero-e,assoc,4,1,1,match") != std::string::npos);
  CHECK(r.out.find("double-minus,ac,6,21,21,match") != std::string::npos);
  CHECK(r.out.find("double-minus,assoc,6,21,21,match") != std::string::npos);
  CHECK(r.out.find("nor,ac,6,945,945,match") != std::string::npos);
  CHECK(r.out.find("implication,ac,6,7776,7776,match") != std::string::npos);
}

TEST_CASE("output file flag") {
  std::filesystem::path tmp = std::filesystem::temp_directory_path() / "acspec_out.csv";
  CliRun r = run({"spectrum", "xor", "--n-max", "3", "--format", "csv", "--out", tmp.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(tmp);
  std::string header;
  std::getline(in, header);
  CHECK(header == "groupoid,kind,n,count,expected,verdict");
  std::filesystem::remove(tmp);
}

TEST_CASE("exit code tracks cross-check verdicts") {
  ReportDocument doc;
  doc.command = "synthetic";
  doc.entries.push_back({"g", "ac", 1, 1, std::nullopt, "no-formula", 0.0});
  doc.entries.push_back({"g", "ac", 2, 2, 2, "match", 0.0});
  CHECK(doc.all_match());
  doc.entries.push_back({"g", "ac", 3, 5, 6, "mismatch", 0.0});
  CHECK_FALSE(doc.all_match());
}

TEST_CASE("usage errors") {
  CHECK(run({"spectrum"}).exit_code == 64);
  CHECK(run({}).exit_code == 64);
  CHECK(run({"--help"}).exit_code == 0);
}
