#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mchom/integers.hpp"
#include "mchom/partitions.hpp"
#include "mchom/permutations.hpp"
#include "mchom/shelling.hpp"
#include "mchom/simplicial.hpp"

namespace mchom {

// A class function on S_n, stored as one rational value per cycle type in the
// order produced by cycle_types(n).
struct ClassFunction {
  int n = 0;
  std::vector<Rat> values;

  bool operator==(const ClassFunction&) const = default;
};

ClassFunction zero_class_function(int n);
ClassFunction trivial_character(int n);
ClassFunction sign_character(int n);

ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b);
ClassFunction cf_sub(const ClassFunction& a, const ClassFunction& b);

// Class-size-weighted inner product (1/n!) sum_t |C_t| a(t) b(t).
Rat inner_product(const ClassFunction& a, const ClassFunction& b);

// Full character table of S_n: rows are irreducibles chi^mu indexed by
// partitions mu of n, columns are cycle types.  Computed by the
// Murnaghan-Nakayama rim-hook recursion; row orthonormality is checked at
// construction time.
struct CharacterTable {
  int n = 0;
  std::vector<IntegerPartition> irreps;   // partitions_of(n)
  std::vector<IntegerPartition> classes;  // cycle_types(n)
  std::vector<std::vector<long long>> values;  // values[i][j] = chi^{mu_i}(class j)

  ClassFunction row(std::size_t i) const;
};

CharacterTable character_table(int n);  // requires n <= 12

// Single character value chi^lambda(mu) by Murnaghan-Nakayama.
long long mn_character(const IntegerPartition& lambda, const IntegerPartition& mu);

// g acting on an oriented face: apply g to every block, re-sort into the
// vertex order, and report the sign of the sorting permutation.
std::pair<Face, int> signed_action(const Permutation& g, const Face& f);

// Signed permutation matrix of g on C_q(X) (columns indexed by q-faces of X).
IntMatrix action_matrix(const Complex& X, const Permutation& g, int q);

// Thrown when a group element fails to preserve a basis set it is expected
// to permute; carries the witness.
class ActionError : public std::runtime_error {
 public:
  ActionError(Permutation g, Face source, Face image, const std::string& what_msg)
      : std::runtime_error(what_msg), g(std::move(g)), source(std::move(source)),
        image(std::move(image)) {}
  Permutation g;
  Face source;
  Face image;
};

// Character of the S_n action on reduced homology in degree q, read off as
// the trace of the signed permutation action on the q-dimensional homology
// facets of the given shelling.  Throws ActionError (with witness) if some
// class representative maps a homology facet outside the homology-facet set.
ClassFunction homology_character(const Complex& X, int q, const ShellingOrder& order);

// Character of the action on H~_q tensor Q computed from explicit
// cycle/boundary bases over the rationals; needs no shellability but is
// only feasible for complexes with a few hundred faces per dimension.
ClassFunction homology_character_rational(const Complex& X, int q);

// The subgroup N_lambda of S_n preserving the canonical block partition of
// shape lambda: a product of wreath products, one per distinct part size.
struct NormalizerData {
  IntegerPartition lambda;
  std::vector<std::pair<int, int>> multiplicity_form;  // (part, multiplicity), parts descending
  Int order;                                           // prod (mu_j!)^{a_j} * a_j!
};

NormalizerData normalizer_data(const IntegerPartition& lambda);

// The face whose blocks are consecutive runs [1..l1], [l1+1..l1+l2], ...
Face minimal_face(const IntegerPartition& lambda);

// Whether g maps every block of `base` to a block of `base`.
bool in_normalizer(const Permutation& g, const Face& base);
// Sign of the permutation that g induces on the blocks of `base`; requires
// in_normalizer(g, base).
int block_sign(const Permutation& g, const Face& base);

// All set partitions of [n] with block sizes lambda (|lambda| = n), as faces.
std::vector<Face> faces_of_shape(int n, const IntegerPartition& lambda);

// Character of Ind_{N_lambda}^{S_n} of the one-dimensional character
// g -> sign of the induced block permutation.  Route (a): trace of the signed
// action on the faces of shape lambda.  Route (b), run and compared for
// |lambda| <= 8: the standard induction formula averaged over S_n.
ClassFunction induced_sign_character(const IntegerPartition& lambda);

// Permutation character of S_n on tabloids of shape lambda (row-ordered set
// partitions), i.e. the character of the Young permutation module M^lambda.
ClassFunction permutation_module_character(const IntegerPartition& lambda);

// Multiplicities <chi, chi^mu> over all mu with nonzero multiplicity.
// Throws std::invalid_argument if some inner product is not an integer, and
// (when require_nonnegative) if some multiplicity is negative.
std::map<IntegerPartition, long long> decompose(const ClassFunction& chi,
                                                bool require_nonnegative = true);

// Number of semistandard Young tableaux of shape mu and content lambda,
// counted by direct backtracking.  Throws if |mu| != |lambda|.
long long kostka(const IntegerPartition& mu, const IntegerPartition& lambda);

// Comparison of the homology character of X(n) in degree q against the sum
// of induced block-sign characters over all shapes with q+1 parts, each of
// size between 2 and n-1.  Also checks that the q-dimensional homology
// facets are exactly the faces of those shapes (one invariant block per
// shape).  All assertions are performed; the report carries the data.
struct InducedDecompositionReport {
  int n = 0;
  int q = 0;
  std::vector<IntegerPartition> shapes;
  ClassFunction homology;
  ClassFunction induced_sum;
  std::vector<Rat> residuals;  // homology - induced_sum, per class (all zero)
  bool equal = false;
  bool shapes_match_homology_facets = false;
};

InducedDecompositionReport verify_induced_decomposition(int n, int q);

// The cyclic ZS_n-submodule of the tabloid module M^lambda generated by
// S = sum over g in N_lambda of block_sign(g) (g . T), T the canonical
// tabloid.  Confirms rank n!/|N_lambda| and the induced block-sign character.
struct SymmetrizerSubmoduleReport {
  IntegerPartition lambda;
  long tabloid_dim = 0;   // n! / prod(lambda_i!)
  long rank = 0;          // rank of span{g.S : g in S_n}
  long expected_rank = 0; // n! / |N_lambda|
  ClassFunction character;
  bool rank_ok = false;
  bool character_ok = false;
};

SymmetrizerSubmoduleReport symmetrizer_cyclic_submodule(const IntegerPartition& lambda);  // |lambda| <= 7

// Lefschetz fixed-point bookkeeping: the alternating sum of chain-level
// traces of g (including the -1 contribution of the empty face) must equal
// the alternating sum of traces on rational homology.  The homology traces
// are computed independently: from the signed action on homology facets when
// X is shellable by the singleton order and the facet basis is preserved,
// otherwise from explicit cycle/boundary bases over Q.
struct HopfReport {
  std::vector<Rat> chain_traces;     // index 0 corresponds to q = -1
  std::vector<Rat> homology_traces;  // index 0 corresponds to q = -1
  Rat lhs;
  Rat rhs;
  bool equal = false;
  std::string rhs_route;  // "shelling" or "chain-quotient"
};

HopfReport hopf_trace_check(const Complex& X, const Permutation& g);

}  // namespace mchom
