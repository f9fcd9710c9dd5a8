#ifndef ACSPEC_TERMS_HPP
#define ACSPEC_TERMS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace acspec {

/// Hard cap for enumeration APIs. |F_9| is ~5.2e8 and beyond desk scale;
/// 12 leaves room for streaming experiments via the cap override.
inline constexpr int kTermEnumerationCap = 12;
/// Materializing full linear enumeration stops here; larger n must stream.
inline constexpr int kFullTermMaterializeCap = 7;

/// Term universe for spectra and class counting.
enum class Universe {
  bracketings,
  full_linear_terms,
};

/// Ordered binary tree with leaves labeled by distinct positive variable
/// indices. Stored as an index-based arena; node 'root()' is the root.
class TermTree {
 public:
  struct Node {
    std::int32_t left = -1;   // arena index, -1 for leaves
    std::int32_t right = -1;
    std::int32_t var = 0;     // leaf label, 0 for internal nodes
  };

  TermTree() = default;

  static TermTree leaf(int var);
  /// New tree with the two arguments as left and right subtrees.
  static TermTree combine(const TermTree& left, const TermTree& right);

  bool empty() const { return nodes_.empty(); }
  int root() const { return root_; }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  bool is_leaf(int i) const { return nodes_[static_cast<std::size_t>(i)].var != 0; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  /// Number of leaves (= number of variables for a linear term).
  int leaf_count() const;

  /// Leaf arena indices from left to right.
  std::vector<int> leaves_in_order() const;
  /// Leaf labels from left to right.
  std::vector<int> labels_in_order() const;

  /// Relabels leaf j (0-based, left to right) with labels[j].
  void relabel_leaves(std::span<const int> labels);

  bool operator==(const TermTree& rhs) const;

  // Arena access for builders.
  std::vector<Node>& nodes() { return nodes_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  void set_root(int r) { root_ = r; }

 private:
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

/// Per-variable left depth, right depth, and total depth. Vectors are
/// indexed by variable - 1.
struct DepthProfile {
  std::vector<int> delta;  // left depth
  std::vector<int> rho;    // right depth
  std::vector<int> d;      // total depth
};

/// Byte sequence whose equality captures a tree equivalence; total order is
/// the lexicographic byte order.
using CanonicalCode = std::string;

/// Rooted tree from the leftmost decomposition: every vertex is labeled by a
/// variable index; children are recorded in decomposition order but compare
/// as unordered via p_tree_code.
struct PTree {
  int label = 0;
  std::vector<PTree> children;
};

/// Residue counts of right depths: counts[i-1] = number of leaves with
/// right depth congruent to i (mod k), i = 1..k (residue 0 counts as k).
struct ResidueCounts {
  int k = 2;
  int n = 0;
  std::vector<std::int64_t> counts;
};

/// All bracketings over x1..xn (leaves labeled 1..n left to right), ordered
/// by recursive split position: left subtree size 1..n-1, left subtrees
/// outer, right subtrees inner.
std::vector<TermTree> enumerate_bracketings(int n);

/// Number of bracketings = C_{n-1}, as a plain integer (n <= cap).
std::uint64_t bracketing_count(int n);
/// n! * C_{n-1} as a plain integer (n <= cap).
std::uint64_t full_linear_count(int n);

/// All full linear terms over x1..xn: bracketing-major, leaf label
/// permutations in lexicographic order within each bracketing.
/// Materializes the list; capped at kFullTermMaterializeCap.
std::vector<TermTree> enumerate_full_linear_terms(int n);

/// Streams full linear terms in the same order without materializing them.
/// The TermTree reference stays owned by the enumerator and is overwritten
/// between calls; copy it if it must outlive the callback.
void for_each_full_linear_term(int n, const std::function<void(const TermTree&)>& fn);

/// Term index -> term, matching the enumeration orders above.
TermTree bracketing_at(int n, std::uint64_t index);
TermTree full_linear_term_at(int n, std::uint64_t index);

DepthProfile depth_profile(const TermTree& t);

/// Unique bracketing whose left-to-right leaf depths are d; validation
/// rejects non-realizable sequences naming the first offending prefix.
TermTree bracketing_from_depth_sequence(std::span<const int> d);

/// Equal codes iff the leaf-labeled unordered binary trees are isomorphic.
CanonicalCode unordered_code(const TermTree& t);

/// Equal codes iff the trees are syntactically identical (ordered, labeled).
CanonicalCode ordered_code(const TermTree& t);

PTree p_tree(const TermTree& t);

/// Equal codes iff the P-trees have equal underlying unordered trees.
CanonicalCode p_tree_code(const TermTree& t);
CanonicalCode p_tree_code(const PTree& p);

ResidueCounts residue_counts(const TermTree& t, int k);

/// The three admissibility clauses for right (n,k)-residue counts.
bool is_admissible(const ResidueCounts& rc);

/// Witness tree for an admissible sequence: wedge a single leaf on the
/// right while n_1 > 1, on the left otherwise. Leaves are labeled 1..n.
TermTree tree_from_admissible(const ResidueCounts& rc);

/// Parenthesized syntax: leaf "x<digits>", node "(" term " " term ")".
std::string render_term(const TermTree& t);
TermTree parse_term(const std::string& text);

}  // namespace acspec

#endif
