#ifndef ACSPEC_SRC_CLASSIFY_HPP
#define ACSPEC_SRC_CLASSIFY_HPP

// Internal streaming classifier shared by the spectrum and equivalence
// modules: enumerates a term universe bracketing-major and deduplicates
// engine-produced keys, optionally collecting class members.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "acspec/terms.hpp"

namespace acspec::detail {

inline void append_uleb(std::string& out, std::uint32_t value) {
  do {
    std::uint8_t byte = value & 0x7f;
    value >>= 7;
    if (value != 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (value != 0);
}

/// Maps terms to dedup keys. A term is presented as a bracketing shape plus
/// a leaf labeling: perm[j] is the variable at leaf j (left to right).
class KeyEngine {
 public:
  virtual ~KeyEngine() = default;
  virtual void begin_bracketing(const TermTree& shape, std::uint64_t shape_index) = 0;
  virtual void key_for(std::span<const int> perm, std::string& out) = 0;
};

using KeyEngineFactory = std::function<std::unique_ptr<KeyEngine>()>;

struct ClassifyOptions {
  int jobs = 1;
  bool collect_members = false;
  std::uint64_t member_limit = 1'000'000;
};

struct ClassifyResult {
  std::uint64_t universe_size = 0;
  std::uint64_t class_count = 0;
  /// First enumeration index of each class, ascending.
  std::vector<std::uint64_t> firsts;
  /// Member term indices per class, aligned with firsts (only when
  /// collect_members is set).
  std::vector<std::vector<std::uint64_t>> members;
};

ClassifyResult classify_terms(int n, Universe universe, const KeyEngineFactory& factory,
                              const ClassifyOptions& options);

}  // namespace acspec::detail

#endif
