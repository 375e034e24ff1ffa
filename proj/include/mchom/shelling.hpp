#pragma once

// Non-pure shellings.  An ordering sigma_1, ..., sigma_m of the facets is a
// shelling when for each t >= 2 the intersection of the closure of sigma_t
// with the union of the earlier closures is pure of dimension
// dim(sigma_t) - 1.  The restriction set R(sigma_t) collects the blocks v of
// sigma_t with sigma_t - v in that intersection; facets with R(sigma) = sigma
// ("homology facets") count free homology generators in their dimension.
//
// For X(n), ordering facets by strictly decreasing singleton count (with any
// tie-break inside a level) is a shelling, and its homology facets are the
// singleton-free partitions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mchom/simplicial.hpp"

namespace mchom {

// A permutation of 0..m-1 indexing into Complex::facets().
struct ShellingOrder {
  std::vector<int> facet_order;
};

enum class TieBreak {
  LexAsc,   // canonical partition string, ascending (the default)
  LexDesc,  // canonical partition string, descending
  Seeded,   // deterministic shuffle from a seed
};

// Facets of X sorted by strictly decreasing number of singleton blocks, ties
// broken within a singleton level per tie_break.  Requires every facet of X
// to partition the ground set (the shape of build_X output); otherwise
// throws std::invalid_argument.
ShellingOrder singleton_shelling_order(const Complex& X,
                                       TieBreak tie_break = TieBreak::LexAsc,
                                       std::uint64_t seed = 0);

struct ShellingViolation {
  int position = 0;          // 0-based position t of the offending facet
  Face facet;                // sigma_t
  std::string reason;        // "impure-intersection" or "empty-intersection"
  std::optional<Face> bad_face;  // a maximal intersection face of wrong dim
};

struct ShellingCheckResult {
  bool is_shelling = true;
  std::optional<ShellingViolation> violation;
};

// Checks the Björner–Wachs condition position by position.  An empty
// intersection (only the empty face) is a violation unless the facet is the
// first of its connected component in the order.
ShellingCheckResult check_shelling(const Complex& X, const ShellingOrder& order);

struct RestrictionSet {
  Face facet;
  std::vector<Block> restriction;  // subset of the facet's blocks
};

// R(sigma_t) for the facet at position t (0-based).  Requires the shelling
// condition to hold through position t.
RestrictionSet restriction_set(const Complex& X, const ShellingOrder& order,
                               int t);

// All homology facets (R(sigma) = sigma), grouped by dimension.  Requires a
// full shelling; throws std::invalid_argument with the violation position
// otherwise.
std::map<int, std::vector<Face>> homology_facets(const Complex& X,
                                                 const ShellingOrder& order);

// Reduced Betti numbers read off a shelling: the count of homology facets per
// dimension.  Same precondition as homology_facets.
std::map<int, long> homology_ranks_from_shelling(const Complex& X,
                                                 const ShellingOrder& order);

}  // namespace mchom
