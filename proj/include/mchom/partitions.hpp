#pragma once

// Integer partitions, set partitions and the Stirling-type counting functions
// used throughout: classical and 2-associated Stirling numbers of the second
// kind, and the derived rank function beta(n, q) counting singleton-free set
// partitions of [n] into q+1 blocks.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "mchom/integers.hpp"

namespace mchom {

// Weakly decreasing positive parts.  The empty partition is allowed.
struct IntegerPartition {
  std::vector<int> parts;

  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<int> p);

  int sum() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }

  bool operator==(const IntegerPartition&) const = default;
  // Lexicographic on the part vectors; gives a deterministic container order.
  std::strong_ordering operator<=>(const IntegerPartition& o) const;

  // "3+2+2"; the empty partition prints as "".
  std::string to_string() const;
  static IntegerPartition parse(const std::string& s);
};

// Canonical form: each block sorted ascending, blocks ordered by least element.
struct SetPartition {
  std::vector<std::vector<int>> blocks;

  SetPartition() = default;
  explicit SetPartition(std::vector<std::vector<int>> bs);  // canonicalizes

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  std::vector<int> ground() const;  // sorted union of the blocks
  IntegerPartition shape() const;   // block sizes, sorted decreasing

  bool operator==(const SetPartition&) const = default;
  std::strong_ordering operator<=>(const SetPartition& o) const;

  // "1,2|3,4"; blocks in canonical order.
  std::string to_string() const;
  static SetPartition parse(const std::string& s);
};

// Classical Stirling number of the second kind S(n, k).  Computed by the
// triangular recurrence and cross-checked internally against the alternating
// binomial sum (1/k!) sum_i (-1)^i C(k,i) (k-i)^n; disagreement aborts.
// Out-of-range k (k < 0 or k > n) returns 0.
Int stirling2(long n, long k);

// r-associated Stirling number of the second kind: partitions of [n] into k
// blocks, every block of size >= r.  Requires r >= 1.
Int assoc_stirling2(long n, long k, long r);

// beta(n, q) = number of singleton-free set partitions of [n] into q+1 blocks
// for q >= 1, and 0 for q = 0 or q > floor(n/2) - 1.  Requires n >= 2, q >= 0.
// Evaluated by inclusion-exclusion over forced singletons:
//   sum_{i=0}^{q+1} (-1)^i C(n,i) S(n-i, q+1-i).
Int beta(long n, long q);

struct PartitionConstraints {
  std::optional<int> length;    // exact number of parts
  std::optional<int> min_part;  // every part >= this
  std::optional<int> max_part;  // every part <= this
  bool distinct = false;        // strictly decreasing parts
};

// All partitions of n satisfying the constraints, in reverse-lexicographic
// order of the part vectors (largest first), e.g. n=6, length 2, parts >= 2:
// [(4,2), (3,3)].  Contradictory constraints yield an empty list.
std::vector<IntegerPartition> partitions_with_constraints(
    int n, const PartitionConstraints& c = {});

// Convenience: all partitions of n.
std::vector<IntegerPartition> partitions_of(int n);

// The padded partition lambda[n] = (n - |lambda|, lambda_1, lambda_2, ...).
// Requires n - |lambda| >= lambda_1 (with lambda[|lambda|] allowed only for
// the empty partition).  Throws std::invalid_argument otherwise.
IntegerPartition pad_partition(const IntegerPartition& lambda, int n);

// Dominance order: mu dominates lambda iff all prefix sums of mu are >= those
// of lambda.  Throws std::invalid_argument if |mu| != |lambda|.
bool dominates(const IntegerPartition& mu, const IntegerPartition& lambda);

struct SetPartitionConstraints {
  std::optional<int> num_blocks;
  std::optional<int> min_block_size;
  bool forbid_full_block = false;  // no block equal to the whole ground set
};

// All set partitions of the ground set satisfying the constraints, sorted by
// the canonical order of SetPartition.  The ground set must have distinct
// elements; the empty ground set has exactly the empty partition (subject to
// num_blocks being absent or 0).
std::vector<SetPartition> set_partitions(const std::vector<int>& ground,
                                         const SetPartitionConstraints& c = {});

}  // namespace mchom
