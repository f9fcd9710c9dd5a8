#include "acspec/terms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "acspec/errors.hpp"

namespace acspec {

namespace {

void check_enum_cap(int n, int cap, const char* what) {
  if (n < 1) throw SizeError(std::string(what) + ": n must be >= 1");
  if (n > cap) {
    throw SizeError(std::string(what) + ": n = " + std::to_string(n) +
                    " exceeds the cap n <= " + std::to_string(cap));
  }
}

std::uint64_t catalan_u64(int n) {
  // C_n for n <= 32 fits comfortably in 64 bits.
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void append_uleb(std::string& out, std::uint32_t value) {
  do {
    std::uint8_t byte = value & 0x7f;
    value >>= 7;
    if (value != 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (value != 0);
}

// Builds all bracketings over labels [first, first + size).
std::vector<TermTree> bracketings_over(int first, int size) {
  std::vector<TermTree> out;
  if (size == 1) {
    out.push_back(TermTree::leaf(first));
    return out;
  }
  for (int left_size = 1; left_size <= size - 1; ++left_size) {
    std::vector<TermTree> lefts = bracketings_over(first, left_size);
    std::vector<TermTree> rights = bracketings_over(first + left_size, size - left_size);
    for (const TermTree& l : lefts)
      for (const TermTree& r : rights) out.push_back(TermTree::combine(l, r));
  }
  return out;
}

}  // namespace

TermTree TermTree::leaf(int var) {
  TermTree t;
  t.nodes_.push_back(Node{-1, -1, var});
  t.root_ = 0;
  return t;
}

TermTree TermTree::combine(const TermTree& left, const TermTree& right) {
  TermTree t;
  t.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
  t.nodes_ = left.nodes_;
  const std::int32_t offset = static_cast<std::int32_t>(left.nodes_.size());
  for (const Node& n : right.nodes_) {
    Node shifted = n;
    if (shifted.left >= 0) shifted.left += offset;
    if (shifted.right >= 0) shifted.right += offset;
    t.nodes_.push_back(shifted);
  }
  t.nodes_.push_back(Node{left.root_, right.root_ + offset, 0});
  t.root_ = static_cast<std::int32_t>(t.nodes_.size()) - 1;
  return t;
}

int TermTree::leaf_count() const { return (node_count() + 1) / 2; }

std::vector<int> TermTree::leaves_in_order() const {
  std::vector<int> out;
  if (empty()) return out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.var != 0) {
      out.push_back(i);
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  return out;
}

std::vector<int> TermTree::labels_in_order() const {
  std::vector<int> out;
  for (int i : leaves_in_order()) out.push_back(node(i).var);
  return out;
}

void TermTree::relabel_leaves(std::span<const int> labels) {
  std::vector<int> leaves = leaves_in_order();
  if (labels.size() != leaves.size())
    throw ValidationError("relabel_leaves: label count does not match leaf count");
  for (std::size_t j = 0; j < leaves.size(); ++j)
    nodes_[static_cast<std::size_t>(leaves[j])].var = labels[j];
}

bool TermTree::operator==(const TermTree& rhs) const {
  if (empty() || rhs.empty()) return empty() == rhs.empty();
  return ordered_code(*this) == ordered_code(rhs);
}

std::vector<TermTree> enumerate_bracketings(int n) {
  check_enum_cap(n, kTermEnumerationCap, "enumerate_bracketings");
  return bracketings_over(1, n);
}

std::uint64_t bracketing_count(int n) {
  check_enum_cap(n, kTermEnumerationCap, "bracketing_count");
  return catalan_u64(n - 1);
}

std::uint64_t full_linear_count(int n) {
  check_enum_cap(n, kTermEnumerationCap, "full_linear_count");
  return factorial_u64(n) * catalan_u64(n - 1);
}

std::vector<TermTree> enumerate_full_linear_terms(int n) {
  check_enum_cap(n, kFullTermMaterializeCap, "enumerate_full_linear_terms");
  std::vector<TermTree> out;
  out.reserve(full_linear_count(n));
  for_each_full_linear_term(n, [&out](const TermTree& t) { out.push_back(t); });
  return out;
}

void for_each_full_linear_term(int n, const std::function<void(const TermTree&)>& fn) {
  check_enum_cap(n, kTermEnumerationCap, "for_each_full_linear_term");
  std::vector<TermTree> bracketings = enumerate_bracketings(n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (TermTree& shape : bracketings) {
    std::vector<int> leaves = shape.leaves_in_order();
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (std::size_t j = 0; j < leaves.size(); ++j)
        shape.nodes()[static_cast<std::size_t>(leaves[j])].var = perm[j];
      fn(shape);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TermTree bracketing_at(int n, std::uint64_t index) {
  check_enum_cap(n, kTermEnumerationCap, "bracketing_at");
  if (index >= bracketing_count(n))
    throw SizeError("bracketing_at: index out of range");
  // Unrank over split sizes: block for left size s has C_{s-1} C_{n-s-1} trees.
  struct Builder {
    static TermTree build(int first, int size, std::uint64_t idx) {
      if (size == 1) return TermTree::leaf(first);
      for (int s = 1; s <= size - 1; ++s) {
        std::uint64_t lcount = catalan_u64(s - 1);
        std::uint64_t rcount = catalan_u64(size - s - 1);
        std::uint64_t block = lcount * rcount;
        if (idx < block) {
          TermTree l = build(first, s, idx / rcount);
          TermTree r = build(first + s, size - s, idx % rcount);
          return TermTree::combine(l, r);
        }
        idx -= block;
      }
      throw SizeError("bracketing_at: index out of range");
    }
  };
  return Builder::build(1, n, index);
}

TermTree full_linear_term_at(int n, std::uint64_t index) {
  check_enum_cap(n, kTermEnumerationCap, "full_linear_term_at");
  const std::uint64_t nfact = factorial_u64(n);
  if (index >= full_linear_count(n))
    throw SizeError("full_linear_term_at: index out of range");
  TermTree shape = bracketing_at(n, index / nfact);
  std::uint64_t rank = index % nfact;
  // Lexicographic unranking via the factorial number system.
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> perm;
  perm.reserve(pool.size());
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t f = factorial_u64(i);
    std::uint64_t digit = rank / f;
    rank %= f;
    perm.push_back(pool[static_cast<std::size_t>(digit)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  shape.relabel_leaves(perm);
  return shape;
}

DepthProfile depth_profile(const TermTree& t) {
  int max_var = 0;
  for (const TermTree::Node& n : t.nodes())
    if (n.var > max_var) max_var = n.var;
  DepthProfile p;
  p.delta.assign(static_cast<std::size_t>(max_var), 0);
  p.rho.assign(static_cast<std::size_t>(max_var), 0);
  p.d.assign(static_cast<std::size_t>(max_var), 0);
  if (t.empty()) return p;
  struct Frame {
    int node;
    int delta;
    int rho;
  };
  std::vector<Frame> stack{{t.root(), 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const TermTree::Node& n = t.node(f.node);
    if (n.var != 0) {
      std::size_t i = static_cast<std::size_t>(n.var) - 1;
      p.delta[i] = f.delta;
      p.rho[i] = f.rho;
      p.d[i] = f.delta + f.rho;
    } else {
      stack.push_back({n.left, f.delta + 1, f.rho});
      stack.push_back({n.right, f.delta, f.rho + 1});
    }
  }
  return p;
}

TermTree bracketing_from_depth_sequence(std::span<const int> d) {
  const int n = static_cast<int>(d.size());
  if (n == 0) throw ValidationError("depth sequence is empty");
  check_enum_cap(n, kTermEnumerationCap, "bracketing_from_depth_sequence");
  struct Entry {
    TermTree tree;
    int depth;
  };
  std::vector<Entry> stack;
  for (int i = 0; i < n; ++i) {
    const int depth = d[static_cast<std::size_t>(i)];
    if (depth < 0)
      throw ValidationError("invalid depth sequence: negative depth at position " +
                            std::to_string(i + 1));
    if (stack.size() == 1 && stack.front().depth == 0)
      throw ValidationError(
          "invalid depth sequence: prefix of length " + std::to_string(i + 1) +
          " already exceeds total mass 1 (Kraft violation)");
    if (!stack.empty() && depth < stack.back().depth)
      throw ValidationError("invalid depth sequence: prefix of length " +
                            std::to_string(i + 1) +
                            " cannot extend to any bracketing");
    stack.push_back({TermTree::leaf(i + 1), depth});
    while (stack.size() >= 2 &&
           stack[stack.size() - 1].depth == stack[stack.size() - 2].depth &&
           stack.back().depth > 0) {
      Entry r = std::move(stack.back());
      stack.pop_back();
      Entry l = std::move(stack.back());
      stack.pop_back();
      stack.push_back({TermTree::combine(l.tree, r.tree), l.depth - 1});
    }
  }
  if (stack.size() != 1 || stack.front().depth != 0)
    throw ValidationError(
        "invalid depth sequence: prefix of length " + std::to_string(n) +
        " leaves the tree incomplete (Kraft sum below 1)");
  return std::move(stack.front().tree);
}

namespace {

CanonicalCode unordered_code_rec(const TermTree& t, int i) {
  const TermTree::Node& n = t.node(i);
  CanonicalCode out;
  if (n.var != 0) {
    out.push_back('L');
    append_uleb(out, static_cast<std::uint32_t>(n.var));
    return out;
  }
  CanonicalCode l = unordered_code_rec(t, n.left);
  CanonicalCode r = unordered_code_rec(t, n.right);
  if (r < l) std::swap(l, r);
  out.reserve(l.size() + r.size() + 1);
  out.push_back('N');
  out += l;
  out += r;
  return out;
}

CanonicalCode ordered_code_rec(const TermTree& t, int i) {
  const TermTree::Node& n = t.node(i);
  CanonicalCode out;
  if (n.var != 0) {
    out.push_back('L');
    append_uleb(out, static_cast<std::uint32_t>(n.var));
    return out;
  }
  out.push_back('N');
  out += ordered_code_rec(t, n.left);
  out += ordered_code_rec(t, n.right);
  return out;
}

}  // namespace

CanonicalCode unordered_code(const TermTree& t) {
  if (t.empty()) return {};
  return unordered_code_rec(t, t.root());
}

CanonicalCode ordered_code(const TermTree& t) {
  if (t.empty()) return {};
  return ordered_code_rec(t, t.root());
}

namespace {

PTree p_tree_rec(const TermTree& t, int i) {
  const TermTree::Node& n = t.node(i);
  if (n.var != 0) return PTree{n.var, {}};
  // Walk the left spine down to the leftmost variable; the right children
  // passed on the way are the decomposition factors t_k, ..., t_1.
  std::vector<int> factors;
  int cur = i;
  while (t.node(cur).var == 0) {
    factors.push_back(t.node(cur).right);
    cur = t.node(cur).left;
  }
  PTree p{t.node(cur).var, {}};
  p.children.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    p.children.push_back(p_tree_rec(t, *it));
  return p;
}

}  // namespace

PTree p_tree(const TermTree& t) {
  if (t.empty()) return {};
  return p_tree_rec(t, t.root());
}

CanonicalCode p_tree_code(const PTree& p) {
  std::vector<CanonicalCode> child_codes;
  child_codes.reserve(p.children.size());
  for (const PTree& c : p.children) child_codes.push_back(p_tree_code(c));
  std::sort(child_codes.begin(), child_codes.end());
  CanonicalCode out;
  out.push_back('P');
  append_uleb(out, static_cast<std::uint32_t>(p.label));
  append_uleb(out, static_cast<std::uint32_t>(child_codes.size()));
  for (const CanonicalCode& c : child_codes) out += c;
  return out;
}

CanonicalCode p_tree_code(const TermTree& t) { return p_tree_code(p_tree(t)); }

ResidueCounts residue_counts(const TermTree& t, int k) {
  if (k < 2) throw ValidationError("residue_counts: modulus must be >= 2");
  ResidueCounts rc;
  rc.k = k;
  rc.n = t.leaf_count();
  rc.counts.assign(static_cast<std::size_t>(k), 0);
  DepthProfile profile = depth_profile(t);
  for (int leaf : t.leaves_in_order()) {
    int var = t.node(leaf).var;
    int rho = profile.rho[static_cast<std::size_t>(var) - 1];
    int residue = rho % k;
    if (residue == 0) residue = k;
    ++rc.counts[static_cast<std::size_t>(residue) - 1];
  }
  return rc;
}

namespace {

// 0 = admissible, otherwise the 1-based index of the violated clause.
int admissibility_violation(const ResidueCounts& rc) {
  const int k = rc.k;
  if (k < 2 || static_cast<int>(rc.counts.size()) != k) return 1;
  std::int64_t sum = 0;
  for (std::int64_t c : rc.counts) {
    if (c < 0) return 1;
    sum += c;
  }
  if (rc.counts.front() < 1 || rc.counts.back() < 1 || sum != rc.n || rc.n < 2) return 1;
  for (int i = 2; i <= k - 2; ++i)
    if (rc.counts[static_cast<std::size_t>(i) - 1] == 0 &&
        rc.counts[static_cast<std::size_t>(i)] != 0)
      return 2;
  if (rc.counts[static_cast<std::size_t>(k) - 2] == 0 && rc.counts.back() != 1) return 3;
  return 0;
}

TermTree tree_from_admissible_rec(const ResidueCounts& rc) {
  const int k = rc.k;
  if (rc.n == 2) return TermTree::combine(TermTree::leaf(1), TermTree::leaf(1));
  if (rc.counts.front() > 1) {
    ResidueCounts inner = rc;
    --inner.counts.front();
    --inner.n;
    return TermTree::combine(tree_from_admissible_rec(inner), TermTree::leaf(1));
  }
  // n_1 == 1: shift residue classes down by one; the new leaf on the left
  // adds one right-depth step to everything in the subtree.
  ResidueCounts inner;
  inner.k = k;
  inner.n = rc.n - 1;
  inner.counts.assign(static_cast<std::size_t>(k), 0);
  for (int i = 2; i <= k - 1; ++i)
    inner.counts[static_cast<std::size_t>(i) - 2] = rc.counts[static_cast<std::size_t>(i) - 1];
  inner.counts[static_cast<std::size_t>(k) - 2] = rc.counts.back() - 1;
  inner.counts.back() = 1;
  return TermTree::combine(TermTree::leaf(1), tree_from_admissible_rec(inner));
}

}  // namespace

bool is_admissible(const ResidueCounts& rc) { return admissibility_violation(rc) == 0; }

TermTree tree_from_admissible(const ResidueCounts& rc) {
  int violation = admissibility_violation(rc);
  if (violation != 0)
    throw ValidationError("tree_from_admissible: sequence violates clause (" +
                          std::string(violation == 1   ? "i"
                                      : violation == 2 ? "ii"
                                                       : "iii") +
                          ") of (n,k)-admissibility");
  TermTree shape = tree_from_admissible_rec(rc);
  std::vector<int> labels(static_cast<std::size_t>(shape.leaf_count()));
  std::iota(labels.begin(), labels.end(), 1);
  shape.relabel_leaves(labels);
  return shape;
}

namespace {

void render_rec(const TermTree& t, int i, std::string& out) {
  const TermTree::Node& n = t.node(i);
  if (n.var != 0) {
    out += "x";
    out += std::to_string(n.var);
    return;
  }
  out.push_back('(');
  render_rec(t, n.left, out);
  out.push_back(' ');
  render_rec(t, n.right, out);
  out.push_back(')');
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ValidationError("parse_term: " + what + " at offset " + std::to_string(pos));
  }

  TermTree parse() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      TermTree left = parse();
      skip_ws();
      TermTree right = parse();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return TermTree::combine(left, right);
    }
    if (text[pos] != 'x') fail("expected 'x' or '('");
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits after 'x'");
    int var = std::stoi(text.substr(start, pos - start));
    if (var < 1) fail("variable index must be positive");
    return TermTree::leaf(var);
  }
};

}  // namespace

std::string render_term(const TermTree& t) {
  if (t.empty()) return {};
  std::string out;
  render_rec(t, t.root(), out);
  return out;
}

TermTree parse_term(const std::string& text) {
  Parser p{text};
  TermTree t = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

}  // namespace acspec
