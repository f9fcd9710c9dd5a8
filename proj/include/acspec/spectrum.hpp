#ifndef ACSPEC_SPECTRUM_HPP
#define ACSPEC_SPECTRUM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acspec/groupoid.hpp"
#include "acspec/terms.hpp"

namespace acspec {

enum class SpectrumKind { assoc, ac };

inline Universe universe_of(SpectrumKind kind) {
  return kind == SpectrumKind::assoc ? Universe::bracketings : Universe::full_linear_terms;
}

/// Sound and complete encoding of the term operation a tree induces on a
/// fixed groupoid: equal fingerprints iff equal term operations.
struct Fingerprint {
  enum class Kind { table, linear, multilinear, structural };
  Kind kind = Kind::table;
  /// Table kind: outputs over all |G|^n assignments in lexicographic order.
  std::vector<int> table;
  /// Linear kind: per-variable coefficients, or probe values for the
  /// reciprocal transform.
  std::vector<Scalar> scalars;
  /// Multilinear kind: output vectors over all dim^n basis tuples in
  /// lexicographic order.
  std::vector<QVec> tensor;
  /// Structural kind: canonical code.
  CanonicalCode code;

  /// Canonical byte serialization; the dedup key.
  std::string bytes() const;
  bool operator==(const Fingerprint& rhs) const;
};

Fingerprint fingerprint(const GroupoidSpec& g, const TermTree& t);

/// Kind-specific n cap: |G|=2 tables 7, small tables 6, linear 8,
/// 3-dimensional bilinear 6, structural 8.
int spectrum_cap(const GroupoidSpec& g);
/// spectrum_cap raised by ACSPEC_CAP_OVERRIDE (bounded by the hard
/// enumeration cap).
int effective_spectrum_cap(const GroupoidSpec& g);

struct SpectrumOptions {
  int jobs = 1;
  bool collect_representatives = false;
};

struct SpectrumEntry {
  SpectrumKind kind = SpectrumKind::ac;
  int n = 0;
  std::uint64_t universe_size = 0;
  std::uint64_t class_count = 0;
  /// Enumeration-first member of each class, ascending (when requested).
  std::vector<std::uint64_t> representatives;
  double millis = 0.0;
};

SpectrumEntry ac_spectrum(const GroupoidSpec& g, int n, const SpectrumOptions& options = {});
SpectrumEntry assoc_spectrum(const GroupoidSpec& g, int n, const SpectrumOptions& options = {});

struct FinePartition {
  SpectrumKind kind = SpectrumKind::ac;
  int n = 0;
  /// Term indices per class; classes ordered by first member, members
  /// ascending. Union over classes is the whole universe.
  std::vector<std::vector<std::uint64_t>> classes;
};

/// Materialized fine spectrum; the universe is capped at 10^6 terms.
FinePartition fine_spectrum(const GroupoidSpec& g, int n, SpectrumKind kind,
                            const SpectrumOptions& options = {});

/// First assignment (deterministic search order) on which s and t differ,
/// or nullopt when they induce the same operation.
std::optional<Assignment> separation_witness(const GroupoidSpec& g, const TermTree& s,
                                             const TermTree& t);

/// Stochastic numeric check of the P-tree classification of exponentiation.
struct ExponentiationSanity {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t term_count = 0;
  std::uint64_t class_count = 0;
  std::uint64_t distinct_pairs = 0;
  std::uint64_t separated_pairs = 0;
  double max_equal_rel_diff = 0.0;   // worst agreement within a class
  double min_pair_separation = 0.0;  // weakest best-sample separation
  bool equal_within_tolerance = false;
  bool all_pairs_separated = false;
  bool passed() const { return equal_within_tolerance && all_pairs_separated; }
};

/// Inputs are drawn uniformly from (1, 3); agreement tolerance 1e-9
/// relative, separation threshold 1e-6 relative.
ExponentiationSanity exponentiation_sanity(int n, int trials, std::uint64_t seed);

}  // namespace acspec

#endif
