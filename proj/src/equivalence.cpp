#include "acspec/equivalence.hpp"

#include <algorithm>
#include <cstdlib>

#include "acspec/errors.hpp"
#include "classify.hpp"

namespace acspec {

namespace {

using detail::append_uleb;

int check_modulus(int k) {
  if (k < 1) throw ValidationError("relation modulus must be >= 1");
  return k;
}

// Residues of per-variable depth data, in variable order.
void depth_residue_key(const DepthProfile& p, const std::vector<int>& vars, int k_delta,
                       int k_rho, int k_total, std::string& out) {
  for (int var : vars) {
    const std::size_t i = static_cast<std::size_t>(var) - 1;
    if (k_delta > 0) append_uleb(out, static_cast<std::uint32_t>(p.delta[i] % k_delta));
    if (k_rho > 0) append_uleb(out, static_cast<std::uint32_t>(p.rho[i] % k_rho));
    if (k_total > 0) append_uleb(out, static_cast<std::uint32_t>(p.d[i] % k_total));
  }
}

std::vector<int> sorted_vars(const TermTree& t) {
  std::vector<int> vars = t.labels_in_order();
  std::sort(vars.begin(), vars.end());
  return vars;
}

int equivalence_cap() {
  int cap = 8;
  if (const char* env = std::getenv("ACSPEC_CAP_OVERRIDE")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > cap) cap = static_cast<int>(std::min<long>(v, kTermEnumerationCap));
  }
  return cap;
}

class RelationEngine final : public detail::KeyEngine {
 public:
  RelationEngine(RelationId relation, int n) : relation_(std::move(relation)), n_(n) {}

  void begin_bracketing(const TermTree& shape, std::uint64_t index) override {
    shape_index_ = index;
    if (const KRightDepth* r = std::get_if<KRightDepth>(&relation_)) {
      residues_from(shape, 0, r->k, 0);
    } else if (const KLeftDepth* r2 = std::get_if<KLeftDepth>(&relation_)) {
      residues_from(shape, r2->k, 0, 0);
    } else if (const KDepth* r3 = std::get_if<KDepth>(&relation_)) {
      residues_from(shape, 0, 0, r3->k);
    } else if (const KLDepth* r4 = std::get_if<KLDepth>(&relation_)) {
      residues_from(shape, r4->k, r4->l, 0);
    } else {
      scratch_ = shape;
      leaves_ = scratch_.leaves_in_order();
    }
  }

  void key_for(std::span<const int> perm, std::string& out) override {
    if (!leaf_residues_.empty()) {
      // depth relations: scatter per-leaf residue bytes into variable order
      inv_.resize(static_cast<std::size_t>(n_));
      for (int j = 0; j < n_; ++j)
        inv_[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]) - 1] = j;
      for (int v = 0; v < n_; ++v)
        out += leaf_residues_[static_cast<std::size_t>(inv_[static_cast<std::size_t>(v)])];
      return;
    }
    if (std::holds_alternative<LeafOrder>(relation_)) {
      for (int label : perm) append_uleb(out, static_cast<std::uint32_t>(label));
      return;
    }
    if (std::holds_alternative<SyntacticEquality>(relation_)) {
      append_uleb(out, static_cast<std::uint32_t>(shape_index_));
      for (int label : perm) append_uleb(out, static_cast<std::uint32_t>(label));
      return;
    }
    for (std::size_t j = 0; j < leaves_.size(); ++j)
      scratch_.nodes()[static_cast<std::size_t>(leaves_[j])].var = perm[j];
    if (std::holds_alternative<CommutativeUnordered>(relation_))
      out += unordered_code(scratch_);
    else
      out += p_tree_code(scratch_);
  }

 private:
  void residues_from(const TermTree& shape, int k_delta, int k_rho, int k_total) {
    DepthProfile p = depth_profile(shape);
    leaf_residues_.assign(static_cast<std::size_t>(n_), {});
    for (int pos = 0; pos < n_; ++pos) {
      // bracketing: variable pos+1 sits at leaf pos
      std::string& chunk = leaf_residues_[static_cast<std::size_t>(pos)];
      const std::size_t i = static_cast<std::size_t>(pos);
      if (k_delta > 0) append_uleb(chunk, static_cast<std::uint32_t>(p.delta[i] % k_delta));
      if (k_rho > 0) append_uleb(chunk, static_cast<std::uint32_t>(p.rho[i] % k_rho));
      if (k_total > 0) append_uleb(chunk, static_cast<std::uint32_t>(p.d[i] % k_total));
      chunk.push_back(';');
    }
  }

  RelationId relation_;
  int n_;
  std::uint64_t shape_index_ = 0;
  std::vector<std::string> leaf_residues_;
  std::vector<int> inv_;
  TermTree scratch_;
  std::vector<int> leaves_;
};

}  // namespace

std::string relation_name(const RelationId& r) {
  if (const KRightDepth* a = std::get_if<KRightDepth>(&r))
    return "k-right-depth(" + std::to_string(a->k) + ")";
  if (const KLeftDepth* b = std::get_if<KLeftDepth>(&r))
    return "k-left-depth(" + std::to_string(b->k) + ")";
  if (const KDepth* c = std::get_if<KDepth>(&r)) return "k-depth(" + std::to_string(c->k) + ")";
  if (const KLDepth* d = std::get_if<KLDepth>(&r))
    return "kl-depth(" + std::to_string(d->k) + "," + std::to_string(d->l) + ")";
  if (std::holds_alternative<CommutativeUnordered>(r)) return "commutative-unordered";
  if (std::holds_alternative<PTreeUnordered>(r)) return "p-tree-unordered";
  if (std::holds_alternative<SyntacticEquality>(r)) return "syntactic-equality";
  return "leaf-order";
}

std::string relation_key(const RelationId& r, const TermTree& t) {
  std::vector<int> vars = sorted_vars(t);
  std::string out;
  if (const KRightDepth* a = std::get_if<KRightDepth>(&r)) {
    depth_residue_key(depth_profile(t), vars, 0, check_modulus(a->k), 0, out);
  } else if (const KLeftDepth* b = std::get_if<KLeftDepth>(&r)) {
    depth_residue_key(depth_profile(t), vars, check_modulus(b->k), 0, 0, out);
  } else if (const KDepth* c = std::get_if<KDepth>(&r)) {
    depth_residue_key(depth_profile(t), vars, 0, 0, check_modulus(c->k), out);
  } else if (const KLDepth* d = std::get_if<KLDepth>(&r)) {
    depth_residue_key(depth_profile(t), vars, check_modulus(d->k), check_modulus(d->l), 0, out);
  } else if (std::holds_alternative<CommutativeUnordered>(r)) {
    out = unordered_code(t);
  } else if (std::holds_alternative<PTreeUnordered>(r)) {
    out = p_tree_code(t);
  } else if (std::holds_alternative<SyntacticEquality>(r)) {
    out = ordered_code(t);
  } else {
    for (int label : t.labels_in_order()) append_uleb(out, static_cast<std::uint32_t>(label));
  }
  return out;
}

bool are_equivalent(const RelationId& r, const TermTree& s, const TermTree& t) {
  if (sorted_vars(s) != sorted_vars(t))
    throw ValidationError("are_equivalent: terms must share their variable set");
  return relation_key(r, s) == relation_key(r, t);
}

std::uint64_t class_count(const RelationId& r, int n, Universe universe,
                          const ClassCountOptions& options) {
  if (n < 1) throw SizeError("class_count: n must be >= 1");
  const int cap = equivalence_cap();
  if (n > cap)
    throw SizeError("class_count: n = " + std::to_string(n) + " exceeds the cap n <= " +
                    std::to_string(cap));
  // validate moduli eagerly
  if (const KRightDepth* a = std::get_if<KRightDepth>(&r)) check_modulus(a->k);
  if (const KLeftDepth* b = std::get_if<KLeftDepth>(&r)) check_modulus(b->k);
  if (const KDepth* c = std::get_if<KDepth>(&r)) check_modulus(c->k);
  if (const KLDepth* d = std::get_if<KLDepth>(&r)) {
    check_modulus(d->k);
    check_modulus(d->l);
  }
  detail::ClassifyOptions copt;
  copt.jobs = options.jobs;
  detail::ClassifyResult res = detail::classify_terms(
      n, universe,
      [&r, n]() -> std::unique_ptr<detail::KeyEngine> {
        return std::make_unique<RelationEngine>(r, n);
      },
      copt);
  return res.class_count;
}

}  // namespace acspec
