#include <doctest.h>

#include <map>
#include <set>
#include <unordered_set>

#include "acspec/errors.hpp"
#include "acspec/formulas.hpp"
#include "acspec/groupoid.hpp"
#include "acspec/spectrum.hpp"
#include "test_util.hpp"

using namespace acspec;
using acspec::testing::T;
using acspec::testing::canonical_partition;
using acspec::testing::partition_labels;

namespace {

const GroupoidSpec& spec_of(const std::string& id) {
  const CatalogEntry* entry = catalog_find(id);
  REQUIRE(entry != nullptr);
  return entry->spec;
}

std::vector<std::string> evaluable_ids() {
  std::vector<std::string> ids;
  for (const CatalogEntry& e : catalog())
    if (!std::holds_alternative<Structural>(e.spec)) ids.push_back(e.id);
  return ids;
}

}  // namespace

TEST_CASE("linear fingerprints match depth formulas") {
  Fingerprint mean_fp = fingerprint(spec_of("mean"), T("((x1 x2) x3)"));
  REQUIRE(mean_fp.kind == Fingerprint::Kind::linear);
  CHECK(mean_fp.scalars ==
        std::vector<Scalar>{Scalar(Rational(1, 4)), Scalar(Rational(1, 4)), Scalar(Rational(1, 2))});

  Fingerprint dm_fp = fingerprint(spec_of("double-minus"), T("(x1 (x2 x3))"));
  CHECK(dm_fp.scalars ==
        std::vector<Scalar>{Scalar(Rational(-1)), Scalar(Rational(1)), Scalar(Rational(1))});

  Fingerprint sub_fp = fingerprint(spec_of("add-zeta2"), T("((x1 x2) x3)"));
  CHECK(sub_fp.scalars ==
        std::vector<Scalar>{Scalar(Rational(1)), Scalar(Rational(-1)), Scalar(Rational(-1))});

  // a + zeta_k b: coefficient of x_i is zeta^{rho(i)}
  for (int k = 2; k <= 4; ++k) {
    const GroupoidSpec& g = spec_of("add-zeta" + std::to_string(k));
    const Linear& lin = std::get<Linear>(g);
    for (const TermTree& t : enumerate_full_linear_terms(4)) {
      Fingerprint fp = fingerprint(g, t);
      DepthProfile p = depth_profile(t);
      for (int i = 0; i < 4; ++i)
        CHECK(fp.scalars[static_cast<std::size_t>(i)] ==
              lin.beta.pow(p.rho[static_cast<std::size_t>(i)]));
    }
  }
}

TEST_CASE("fingerprint equality agrees with verify_identity over F_3") {
  std::vector<TermTree> terms = enumerate_full_linear_terms(3);
  for (const std::string& id : evaluable_ids()) {
    const GroupoidSpec& g = spec_of(id);
    std::vector<std::string> keys;
    for (const TermTree& t : terms) keys.push_back(fingerprint(g, t).bytes());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        bool same_fp = keys[i] == keys[j];
        bool holds = verify_identity(g, terms[i], terms[j]).holds;
        CHECK(same_fp == holds);
      }
    }
  }
}

TEST_CASE("streaming classes agree with per-term fingerprints") {
  for (const std::string& id :
       {std::string("nor"), std::string("rps"), std::string("mean"), std::string("harmonic"),
        std::string("sub"), std::string("add-zeta3"), std::string("cross"), std::string("sl2"),
        std::string("free-groupoid"), std::string("free-commutative"),
        std::string("free-semigroup2"), std::string("exponentiation")}) {
    const GroupoidSpec& g = spec_of(id);
    const int n = 4;
    FinePartition part = fine_spectrum(g, n, SpectrumKind::ac);
    std::vector<TermTree> terms = enumerate_full_linear_terms(n);
    // classes are fingerprint-homogeneous and pairwise distinct
    std::set<std::string> class_keys;
    std::uint64_t covered = 0;
    for (const auto& members : part.classes) {
      REQUIRE(!members.empty());
      std::string key = fingerprint(g, terms[members.front()]).bytes();
      for (std::uint64_t idx : members)
        CHECK(fingerprint(g, terms[idx]).bytes() == key);
      CHECK(class_keys.insert(key).second);
      covered += members.size();
    }
    CHECK(covered == terms.size());
  }
}

TEST_CASE("known spectrum values at small n") {
  CHECK(ac_spectrum(spec_of("nor"), 4).class_count == 15);
  CHECK(ac_spectrum(spec_of("proj"), 5).class_count == 5);
  CHECK(ac_spectrum(spec_of("mean"), 4).class_count == 13);
  CHECK(BigCount(13) == compositions_of_one(4));
  CHECK(assoc_spectrum(spec_of("mean"), 5).class_count == 14);
  CHECK(assoc_spectrum(spec_of("double-minus"), 5).class_count == 10);
  CHECK(assoc_spectrum(spec_of("min"), 6).class_count == 1);
  CHECK(assoc_spectrum(spec_of("xor"), 6).class_count == 1);
  CHECK(assoc_spectrum(spec_of("proj"), 6).class_count == 1);
  CHECK(ac_spectrum(spec_of("implication"), 4).class_count == 64);
  CHECK(ac_spectrum(spec_of("free-groupoid"), 4).class_count == 120);
  CHECK(ac_spectrum(spec_of("free-semigroup2"), 5).class_count == 120);
  CHECK(ac_spectrum(spec_of("cross"), 4).class_count == 30);
  CHECK(ac_spectrum(spec_of("join"), 4).class_count == 15);
  CHECK(ac_spectrum(spec_of("sl2"), 4).class_count == 30);
  CHECK(ac_spectrum(spec_of("exponentiation"), 4).class_count == 64);
  CHECK(assoc_spectrum(spec_of("exponentiation"), 5).class_count == 14);
}

TEST_CASE("general bilinear tables (non-monomial) classify exactly") {
  // e1*e1 = e1 + (1/2) e2 breaks the one-nonzero-coordinate fast path
  Bilinear g;
  g.dim = 2;
  g.constants.assign(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, 0)));
  g.constants[0][0] = {Rational(1), Rational(1, 2)};
  g.constants[0][1] = {Rational(0), Rational(1)};
  g.constants[1][0] = {Rational(1), Rational(0)};
  g.constants[1][1] = {Rational(0), Rational(0)};
  GroupoidSpec spec{g};
  for (int n = 2; n <= 4; ++n) {
    std::set<std::string> keys;
    for (const TermTree& t : enumerate_full_linear_terms(n))
      keys.insert(fingerprint(spec, t).bytes());
    CHECK(ac_spectrum(spec, n).class_count == keys.size());
  }
}

TEST_CASE("commutative entries hitting D_{n-1} are totally nonassociative") {
  TermTree cl = T("(x1 x2)");
  TermTree cr = T("(x2 x1)");
  bool found_witness = false;
  for (const CatalogEntry& entry : catalog()) {
    bool commutative;
    if (std::holds_alternative<Structural>(entry.spec))
      commutative = std::get<Structural>(entry.spec).kind == StructuralKind::free_commutative;
    else
      commutative = verify_identity(entry.spec, cl, cr).holds;
    if (!commutative) continue;
    if (BigCount(ac_spectrum(entry.spec, 4).class_count) != double_factorial_D(3)) continue;
    found_witness = true;
    for (int n = 1; n <= 5; ++n)
      CHECK(BigCount(assoc_spectrum(entry.spec, n).class_count) == catalan(n - 1));
  }
  CHECK(found_witness);
}

TEST_CASE("cap override env var raises spectrum caps") {
  REQUIRE(effective_spectrum_cap(spec_of("nor")) == 7);
  setenv("ACSPEC_CAP_OVERRIDE", "9", 1);
  CHECK(effective_spectrum_cap(spec_of("nor")) == 9);
  CHECK(effective_spectrum_cap(spec_of("mean")) == 9);
  setenv("ACSPEC_CAP_OVERRIDE", "99", 1);
  CHECK(effective_spectrum_cap(spec_of("mean")) == kTermEnumerationCap);
  setenv("ACSPEC_CAP_OVERRIDE", "3", 1);
  CHECK(effective_spectrum_cap(spec_of("mean")) == 8);  // never lowers
  unsetenv("ACSPEC_CAP_OVERRIDE");
  CHECK(effective_spectrum_cap(spec_of("mean")) == 8);
}

TEST_CASE("fine spectra: class structure") {
  FinePartition succ = fine_spectrum(spec_of("succ2"), 3, SpectrumKind::ac);
  CHECK(succ.classes.size() == 6);

  FinePartition x = fine_spectrum(spec_of("xor"), 3, SpectrumKind::ac);
  REQUIRE(x.classes.size() == 1);
  CHECK(x.classes.front().size() == 12);

  FinePartition fc = fine_spectrum(spec_of("free-commutative"), 3, SpectrumKind::ac);
  REQUIRE(fc.classes.size() == 3);
  for (const auto& members : fc.classes) CHECK(members.size() == 4);
}

TEST_CASE("product fine spectrum is the intersection of the factors'") {
  const FiniteTable& proj = std::get<FiniteTable>(spec_of("proj"));
  const FiniteTable& x = std::get<FiniteTable>(spec_of("xor"));
  GroupoidSpec prod = product(proj, x);
  const int n = 3;
  const std::uint64_t universe = full_linear_count(n);
  auto labels_prod =
      partition_labels(fine_spectrum(prod, n, SpectrumKind::ac), universe);
  auto labels_proj =
      partition_labels(fine_spectrum(spec_of("proj"), n, SpectrumKind::ac), universe);
  auto labels_xor =
      partition_labels(fine_spectrum(spec_of("xor"), n, SpectrumKind::ac), universe);
  std::vector<std::size_t> intersection(universe);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> remap;
  for (std::uint64_t i = 0; i < universe; ++i) {
    auto key = std::make_pair(labels_proj[i], labels_xor[i]);
    auto [it, inserted] = remap.emplace(key, remap.size());
    intersection[i] = it->second;
  }
  CHECK(canonical_partition(labels_prod) == canonical_partition(intersection));

  // a trivial factor changes nothing
  FiniteTable trivial{{"t"}, {{0}}};
  GroupoidSpec padded = product(trivial, std::get<FiniteTable>(spec_of("nor")));
  CHECK(ac_spectrum(padded, 4).class_count == ac_spectrum(spec_of("nor"), 4).class_count);
}

TEST_CASE("separation witnesses") {
  TermTree left = T("((x1 x2) x3)");
  TermTree right = T("(x1 (x2 x3))");
  std::optional<Assignment> w = separation_witness(spec_of("rps"), left, right);
  REQUIRE(w.has_value());
  CHECK(std::get<int>(eval(spec_of("rps"), left, *w)) !=
        std::get<int>(eval(spec_of("rps"), right, *w)));
  CHECK_FALSE(separation_witness(spec_of("xor"), left, right).has_value());
  CHECK_FALSE(separation_witness(spec_of("nor"), T("(x1 x2)"), T("(x2 x1)")).has_value());
  CHECK_THROWS_AS(separation_witness(spec_of("free-groupoid"), left, right),
                  UnsupportedKindError);
}

TEST_CASE("spectrum bounds and monotonicity") {
  for (const CatalogEntry& entry : catalog()) {
    for (int n = 1; n <= 4; ++n) {
      std::uint64_t assoc = assoc_spectrum(entry.spec, n).class_count;
      std::uint64_t ac = ac_spectrum(entry.spec, n).class_count;
      CHECK(assoc >= 1);
      CHECK(assoc <= bracketing_count(n));
      CHECK(ac >= 1);
      CHECK(ac <= full_linear_count(n));
      CHECK(assoc <= ac);
    }
  }
  // commutative entries stay below D_{n-1}, associative ones below n!
  TermTree cl = T("(x1 x2)");
  TermTree cr = T("(x2 x1)");
  TermTree al = T("((x1 x2) x3)");
  TermTree ar = T("(x1 (x2 x3))");
  for (const std::string& id : evaluable_ids()) {
    const GroupoidSpec& g = spec_of(id);
    const bool commutative = verify_identity(g, cl, cr).holds;
    const bool associative = verify_identity(g, al, ar).holds;
    for (int n = 1; n <= 5; ++n) {
      std::uint64_t ac = ac_spectrum(g, n).class_count;
      if (commutative) CHECK(BigCount(ac) <= double_factorial_D(n - 1));
      if (associative) CHECK(BigCount(ac) <= factorial(n));
    }
  }
}

TEST_CASE("opposite groupoids share spectra") {
  for (const CatalogEntry& entry : catalog()) {
    GroupoidSpec opp = opposite(entry.spec);
    for (int n = 1; n <= 4; ++n) {
      CHECK(ac_spectrum(entry.spec, n).class_count == ac_spectrum(opp, n).class_count);
      CHECK(assoc_spectrum(entry.spec, n).class_count == assoc_spectrum(opp, n).class_count);
    }
  }
}

TEST_CASE("parallel runs are deterministic") {
  for (const std::string& id : {std::string("nor"), std::string("mean"), std::string("cross"),
                                std::string("free-commutative")}) {
    const GroupoidSpec& g = spec_of(id);
    SpectrumOptions serial;
    serial.collect_representatives = true;
    SpectrumOptions parallel;
    parallel.jobs = 4;
    parallel.collect_representatives = true;
    SpectrumEntry a = ac_spectrum(g, 5, serial);
    SpectrumEntry b = ac_spectrum(g, 5, parallel);
    CHECK(a.class_count == b.class_count);
    CHECK(a.representatives == b.representatives);
  }
}

TEST_CASE("representatives are enumeration-first") {
  SpectrumOptions opt;
  opt.collect_representatives = true;
  SpectrumEntry e = ac_spectrum(spec_of("free-commutative"), 3, opt);
  REQUIRE(e.class_count == 3);
  CHECK(e.representatives.front() == 0);
  CHECK(std::is_sorted(e.representatives.begin(), e.representatives.end()));
  FinePartition part = fine_spectrum(spec_of("free-commutative"), 3, SpectrumKind::ac);
  for (std::size_t c = 0; c < part.classes.size(); ++c)
    CHECK(part.classes[c].front() == e.representatives[c]);
}

TEST_CASE("caps produce size errors") {
  CHECK_THROWS_AS(ac_spectrum(spec_of("nor"), 8), SizeError);
  CHECK_THROWS_AS(ac_spectrum(spec_of("rps"), 7), SizeError);
  CHECK_THROWS_AS(ac_spectrum(spec_of("mean"), 9), SizeError);
  CHECK_THROWS_AS(fingerprint(spec_of("rps"), full_linear_term_at(7, 0)), SizeError);
  CHECK_THROWS_AS(fine_spectrum(spec_of("mean"), 8, SpectrumKind::ac), SizeError);
}

TEST_CASE("exponentiation sanity") {
  // (x1 x2) x3 and (x1 x3) x2 share a P-tree code; association separates
  CHECK(p_tree_code(T("((x1 x2) x3)")) == p_tree_code(T("((x1 x3) x2)")));
  CHECK(p_tree_code(T("((x1 x2) x3)")) != p_tree_code(T("(x1 (x2 x3))")));

  ExponentiationSanity one = exponentiation_sanity(1, 10, 42);
  CHECK(one.passed());
  CHECK(one.class_count == 1);

  ExponentiationSanity three = exponentiation_sanity(3, 50, 42);
  CHECK(three.class_count == 9);
  CHECK(three.passed());

  ExponentiationSanity four = exponentiation_sanity(4, 60, 7);
  CHECK(four.class_count == 64);
  CHECK(four.passed());
}
