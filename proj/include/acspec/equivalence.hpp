#ifndef ACSPEC_EQUIVALENCE_HPP
#define ACSPEC_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <variant>

#include "acspec/terms.hpp"

namespace acspec {

/// Depth-based and structural equivalence relations on full linear terms,
/// decided directly on trees without any groupoid evaluation.
struct KRightDepth {
  int k;
};
struct KLeftDepth {
  int k;
};
struct KDepth {
  int k;
};
struct KLDepth {
  int k;  // modulus for left depths
  int l;  // modulus for right depths
};
struct CommutativeUnordered {};
struct PTreeUnordered {};
struct SyntacticEquality {};
struct LeafOrder {};

using RelationId = std::variant<KRightDepth, KLeftDepth, KDepth, KLDepth, CommutativeUnordered,
                                PTreeUnordered, SyntacticEquality, LeafOrder>;

std::string relation_name(const RelationId& r);

/// Terms must share their variable set.
bool are_equivalent(const RelationId& r, const TermTree& s, const TermTree& t);

/// Relations are keyed by canonical byte strings; equal keys iff equivalent.
std::string relation_key(const RelationId& r, const TermTree& t);

struct ClassCountOptions {
  int jobs = 1;
};

/// Number of equivalence classes over B_n or F_n; n <= 8 (the cap override
/// applies).
std::uint64_t class_count(const RelationId& r, int n, Universe universe,
                          const ClassCountOptions& options = {});

}  // namespace acspec

#endif
