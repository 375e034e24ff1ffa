#pragma once

// Hypergraphs, their matching complexes, and the parametric families of
// complexes indexed by n that the rest of the toolkit consumes: X(n) (the
// matching complex of the complete hypergraph on [n] with the full-set vertex
// removed), its 1-skeleton, the complete graph on its vertices, matching
// complexes of K_n / K_n^{(r)} / K_{m,n}, and preimage closures of a seed
// complex.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mchom/simplicial.hpp"
#include "mchom/surjections.hpp"

namespace mchom {

struct Hypergraph {
  int n = 0;                  // vertex set [n]
  std::vector<Block> edges;   // distinct nonempty subsets of [n]

  Hypergraph() = default;
  Hypergraph(int n_, std::vector<Block> edges_);  // validates + sorts edges
};

Hypergraph complete_graph(int n);                      // all 2-subsets
Hypergraph complete_uniform_hypergraph(int n, int r);  // all r-subsets
Hypergraph complete_hypergraph(int n);                 // all nonempty subsets
Hypergraph complete_bipartite_graph(int m, int n);     // parts [1..m], [m+1..m+n]

// Matching complex M(G): vertices are edges of G, faces are sets of pairwise
// disjoint edges.  Facets are the maximal matchings, found by exhaustive
// search; intended for modest edge counts.
Complex matching_complex(const Hypergraph& g);

// X(n): vertices are the proper nonempty subsets of [n], faces are sets of
// pairwise-disjoint such subsets; facets are exactly the set partitions of
// [n] into >= 2 blocks.  Requires n >= 2.  With include_full_vertex the
// isolated vertex {1..n} is kept (the matching complex of the complete
// hypergraph proper), giving a second connected component.
Complex build_X(int n, bool include_full_vertex = false);
Complex build_X_bar(int n);  // build_X(n, true)

// q-skeleton: all faces of dimension <= q.
Complex skeleton(const Complex& X, int q);

struct FamilySpec {
  enum class Kind {
    X,                   // "X"
    Skeleton1,           // "skeleton1": 1-skeleton of X(n)
    CompleteOnVertices,  // "complete_on_vertices": complete graph on the
                         // vertex set of X(n)
    MatchingComplete,    // "matching:K<n0>" -> n-th member is M(K_n)
    MatchingUniform,     // "matching:K(r)<n0>" -> M(K_n^{(r)})
    Chessboard,          // "chessboard:m" -> M(K_{m,n}), m fixed, n varies
    ClosureSeed,         // "closure:FILE@n0" -> preimage closure of a seed
  };
  Kind kind = Kind::X;
  int r = 2;                     // uniformity for MatchingUniform
  int m = 3;                     // fixed side for Chessboard
  std::optional<int> default_n;  // trailing digits of matching:K specs
  std::shared_ptr<const Complex> seed;  // ClosureSeed only
  int seed_n = 0;                       // ClosureSeed only

  // Accepted strings: "X", "skeleton1", "complete_on_vertices" (alias
  // "complete"), "matching:K7", "matching:K(3)8", "chessboard:3",
  // "closure:/path/to/facets@7".  Throws std::invalid_argument otherwise.
  static FamilySpec parse(const std::string& s);
  std::string to_string() const;
};

// The n-th member of the family (n >= 0).  Families derived from X(n) return
// the void complex for n < 2.  ClosureSeed returns the void complex below
// seed_n, the seed at seed_n, and above it grows one step at a time: the
// member at k+1 is generated by the preimages f^{-1}(sigma) of facets sigma
// of the member at k under all surjections [k+1] ->> [k].
Complex build_family(const FamilySpec& spec, int n);

struct FibreClosedWitness {
  int a = 0, b = 0;
  Surjection f;
  Face sigma;     // face of X_b whose preimage fails
  Face preimage;  // f^{-1}(sigma), not a face of X_a
};

struct FibreClosedReport {
  bool fibre_closed = true;
  std::optional<FibreClosedWitness> witness;
  // Strategy used per level a: "full" or "orbit".
  std::vector<std::pair<int, std::string>> strategy;
};

// Checks the defining property for all surjections [a] ->> [b] with
// b <= a <= n_max (a = b covers permutation invariance).  Checking facets of
// X_b suffices: preimages commute with passing to subfaces, so facet
// preimages being faces forces all face preimages to be faces.  For
// a <= full_limit all surjections are enumerated; for larger a,
// S_a-invariance is established exactly via the two generating permutations
// and then only composition representatives are checked (every surjection is
// a representative precomposed with a permutation).  On a representative
// failure, full enumeration re-runs to extract the first violating pair.
FibreClosedReport is_fibre_closed(const std::function<Complex(int)>& builder,
                                  int n_max, int full_limit = 6);
FibreClosedReport is_fibre_closed(const FamilySpec& spec, int n_max,
                                  int full_limit = 6);

}  // namespace mchom
