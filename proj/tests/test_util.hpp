#ifndef ACSPEC_TESTS_TEST_UTIL_HPP
#define ACSPEC_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acspec/spectrum.hpp"
#include "acspec/terms.hpp"

namespace acspec::testing {

inline TermTree T(const std::string& text) { return parse_term(text); }

/// Class index per term, from a materialized fine partition.
inline std::vector<std::size_t> partition_labels(const FinePartition& part,
                                                 std::uint64_t universe) {
  std::vector<std::size_t> labels(universe, 0);
  for (std::size_t c = 0; c < part.classes.size(); ++c)
    for (std::uint64_t idx : part.classes[c]) labels[idx] = c;
  return labels;
}

/// Canonical form of a partition given as per-term labels: relabels classes
/// by first appearance so two partitions compare equal iff they coincide.
inline std::vector<std::size_t> canonical_partition(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> remap;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (std::size_t label : labels) {
    auto [it, inserted] = remap.emplace(label, remap.size());
    out.push_back(it->second);
  }
  return out;
}

}  // namespace acspec::testing

#endif
