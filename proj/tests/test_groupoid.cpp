#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "acspec/errors.hpp"
#include "acspec/groupoid.hpp"
#include "test_util.hpp"

using namespace acspec;
using acspec::testing::T;

namespace {

const GroupoidSpec& spec_of(const std::string& id) {
  const CatalogEntry* entry = catalog_find(id);
  REQUIRE(entry != nullptr);
  return entry->spec;
}

Assignment finite_assignment(std::initializer_list<std::pair<int, int>> pairs) {
  Assignment h;
  for (auto [var, value] : pairs) h[var] = value;
  return h;
}

}  // namespace

TEST_CASE("catalog content") {
  CHECK(catalog_find("does-not-exist") == nullptr);
  const FiniteTable& nor = std::get<FiniteTable>(spec_of("nor"));
  CHECK(nor.apply(0, 0) == 1);
  CHECK(nor.apply(0, 1) == 0);
  CHECK(nor.apply(1, 0) == 0);
  CHECK(nor.apply(1, 1) == 0);

  const Bilinear& sl2 = std::get<Bilinear>(spec_of("sl2"));
  CHECK(sl2.constants[0][1] == QVec{0, 0, 1});   // [e,f] = h
  CHECK(sl2.constants[2][0] == QVec{2, 0, 0});   // [h,e] = 2e
  CHECK(sl2.constants[2][1] == QVec{0, -2, 0});  // [h,f] = -2f

  const Linear& mean = std::get<Linear>(spec_of("mean"));
  CHECK(mean.alpha == Scalar(Rational(1, 2)));
  CHECK(mean.beta == Scalar(Rational(1, 2)));

  // every required id is present
  for (const char* id :
       {"const1", "proj", "min", "xor", "succ2", "nor", "implication", "converse-implication",
        "rps", "rps-e", "leftzero-e", "mean", "harmonic", "sub", "double-minus", "add-zeta2",
        "add-zeta3", "add-zeta4", "scale-zeta2", "scale-zeta3", "scale-zeta4", "cross", "join",
        "sl2", "free-groupoid", "free-commutative", "free-semigroup2", "exponentiation"})
    CHECK(catalog_find(id) != nullptr);
}

TEST_CASE("evaluation") {
  CHECK(std::get<int>(eval(spec_of("nor"), T("(x1 x2)"), finite_assignment({{1, 0}, {2, 0}}))) == 1);

  Assignment mean_h;
  mean_h[1] = Scalar(Rational(1));
  mean_h[2] = Scalar(Rational(0));
  mean_h[3] = Scalar(Rational(0));
  Value v = eval(spec_of("mean"), T("((x1 x2) x3)"), mean_h);
  CHECK(std::get<Scalar>(v) == Scalar(Rational(1, 4)));

  Assignment cross_h;
  cross_h[1] = QVec{1, 0, 0};
  cross_h[2] = QVec{0, 1, 0};
  CHECK(std::get<QVec>(eval(spec_of("cross"), T("(x1 x2)"), cross_h)) == QVec{0, 0, 1});

  // harmonic mean evaluates through reciprocals exactly
  Assignment harm_h;
  harm_h[1] = Scalar(Rational(1));
  harm_h[2] = Scalar(Rational(1, 3));
  CHECK(std::get<Scalar>(eval(spec_of("harmonic"), T("(x1 x2)"), harm_h)) == Scalar(Rational(1, 2)));

  Assignment missing;
  missing[1] = 0;
  CHECK_THROWS_AS(eval(spec_of("nor"), T("(x1 x2)"), missing), EvalError);
  CHECK_THROWS_AS(eval(spec_of("free-groupoid"), T("(x1 x2)"), missing), UnsupportedKindError);
}

TEST_CASE("verify_identity") {
  TermTree comm_l = T("(x1 x2)");
  TermTree comm_r = T("(x2 x1)");
  TermTree assoc_l = T("((x1 x2) x3)");
  TermTree assoc_r = T("(x1 (x2 x3))");

  CHECK(verify_identity(spec_of("nor"), comm_l, comm_r).holds);
  CHECK(verify_identity(spec_of("min"), assoc_l, assoc_r).holds);
  CHECK(verify_identity(spec_of("converse-implication"), T("((x1 x2) x3)"), T("((x1 x3) x2)")).holds);

  IdentityCheck failed = verify_identity(spec_of("implication"), assoc_l, assoc_r);
  CHECK_FALSE(failed.holds);
  REQUIRE(failed.counterexample.has_value());
  Value lhs = eval(spec_of("implication"), assoc_l, *failed.counterexample);
  Value rhs = eval(spec_of("implication"), assoc_r, *failed.counterexample);
  CHECK(std::get<int>(lhs) != std::get<int>(rhs));

  // linear witness evaluates differently too
  IdentityCheck mean_failed = verify_identity(spec_of("mean"), assoc_l, assoc_r);
  CHECK_FALSE(mean_failed.holds);
  REQUIRE(mean_failed.counterexample.has_value());
  CHECK_FALSE(std::get<Scalar>(eval(spec_of("mean"), assoc_l, *mean_failed.counterexample)) ==
              std::get<Scalar>(eval(spec_of("mean"), assoc_r, *mean_failed.counterexample)));

  // harmonic witness
  IdentityCheck harm = verify_identity(spec_of("harmonic"), assoc_l, assoc_r);
  CHECK_FALSE(harm.holds);
  REQUIRE(harm.counterexample.has_value());
  CHECK_FALSE(std::get<Scalar>(eval(spec_of("harmonic"), assoc_l, *harm.counterexample)) ==
              std::get<Scalar>(eval(spec_of("harmonic"), assoc_r, *harm.counterexample)));

  // bilinear witness
  IdentityCheck cross_comm = verify_identity(spec_of("cross"), comm_l, comm_r);
  CHECK_FALSE(cross_comm.holds);
  REQUIRE(cross_comm.counterexample.has_value());
  CHECK(verify_identity(spec_of("join"), comm_l, comm_r).holds);
  CHECK(value_to_string(cross_comm.counterexample->at(1)) == "(1,0,0)");
  CHECK(value_to_string(Value{3}) == "3");
  CHECK(value_to_string(Value{Scalar(Rational(1, 2))}) == "1/2");

  CHECK_THROWS_AS(verify_identity(spec_of("free-groupoid"), comm_l, comm_r), UnsupportedKindError);
  CHECK_THROWS_AS(verify_identity(spec_of("nor"), T("(x1 x2)"), T("(x1 x3)")), ValidationError);
}

TEST_CASE("opposite groupoids") {
  const FiniteTable& impl = std::get<FiniteTable>(spec_of("implication"));
  const FiniteTable& cimpl = std::get<FiniteTable>(spec_of("converse-implication"));
  FiniteTable opp = std::get<FiniteTable>(opposite(spec_of("implication")));
  CHECK(opp.table == cimpl.table);
  FiniteTable opp2 = std::get<FiniteTable>(opposite(GroupoidSpec(opp)));
  CHECK(opp2.table == impl.table);

  const Linear& sub = std::get<Linear>(spec_of("sub"));
  Linear sub_opp = std::get<Linear>(opposite(spec_of("sub")));
  CHECK(sub_opp.alpha == sub.beta);
  CHECK(sub_opp.beta == sub.alpha);

  Bilinear cross_opp = std::get<Bilinear>(opposite(spec_of("cross")));
  CHECK(cross_opp.constants[0][1] == QVec{0, 0, -1});

  // structural opposites are the same spec
  CHECK(std::get<Structural>(opposite(spec_of("exponentiation"))).kind ==
        StructuralKind::exponentiation);
}

TEST_CASE("product groupoid") {
  const FiniteTable trivial{{"t"}, {{0}}};
  const FiniteTable& nor = std::get<FiniteTable>(spec_of("nor"));
  FiniteTable p = product(trivial, nor);
  CHECK(p.size() == 2);
  CHECK(p.apply(0, 0) == 1);  // (t,0)*(t,0) = (t,1)

  const FiniteTable& proj = std::get<FiniteTable>(spec_of("proj"));
  FiniteTable q = product(proj, nor);
  REQUIRE(q.size() == 4);
  // (1,0)*(0,1): proj gives 1, nor gives 0 -> element (1,0) = index 2
  CHECK(q.apply(2, 1) == 2);
}

TEST_CASE("finite groupoid files") {
  FiniteTable ok = parse_finite_table_json(R"({"elements":["a","b"],"table":[[0,1],[1,0]]})");
  CHECK(ok.size() == 2);
  CHECK(ok.apply(0, 1) == 1);

  CHECK_THROWS_AS(parse_finite_table_json("not json"), ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"elements":["a"],"table":[[0]],"extra":1})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"elements":["a","b"],"table":[[0,1]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"elements":["a","b"],"table":[[0,2],[0,0]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"elements":[],"table":[]})"), ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"elements":["a"],"table":[[0.5]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_finite_table_json(R"({"table":[[0]]})"), ValidationError);

  std::filesystem::path tmp = std::filesystem::temp_directory_path() / "acspec_test_groupoid.json";
  {
    std::ofstream out(tmp);
    out << R"({"elements":["0","1"],"table":[[1,0],[0,0]]})";
  }
  FiniteTable from_file = load_finite_table_file(tmp.string());
  CHECK(from_file.apply(0, 0) == 1);
  std::filesystem::remove(tmp);
  CHECK_THROWS_AS(load_finite_table_file("/nonexistent/file.json"), ValidationError);
}

TEST_CASE("linear term coefficients") {
  const Linear& mean = std::get<Linear>(spec_of("mean"));
  std::vector<Scalar> coeffs = linear_term_coefficients(mean, T("((x1 x2) x3)"));
  CHECK(coeffs[0] == Scalar(Rational(1, 4)));
  CHECK(coeffs[1] == Scalar(Rational(1, 4)));
  CHECK(coeffs[2] == Scalar(Rational(1, 2)));

  // probe values determine harmonic-mean coefficients
  const Linear& harmonic = std::get<Linear>(spec_of("harmonic"));
  std::vector<Scalar> p1 = reciprocal_probe_values(harmonic, T("((x1 x2) x3)"));
  std::vector<Scalar> p2 = reciprocal_probe_values(harmonic, T("((x2 x1) x3)"));
  std::vector<Scalar> p3 = reciprocal_probe_values(harmonic, T("(x1 (x2 x3))"));
  CHECK(p1 == p2);
  CHECK_FALSE(p1 == p3);
  // value at probe j is (1 + c_j)^{-1} for the mean's coefficients
  CHECK(p1[2] == Scalar(Rational(2, 3)));
  CHECK(p1[0] == Scalar(Rational(4, 5)));
}
