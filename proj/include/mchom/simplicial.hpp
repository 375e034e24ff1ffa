#pragma once

// Abstract simplicial complexes whose vertices are blocks (nonempty subsets of
// [n]).  Complexes are described by their facets; faces in a fixed dimension
// are materialized lazily on demand.  The reduced chain complex always has
// C_{-1} = Z, generated by the empty face, so the degree-0 boundary map is the
// augmentation.

#include <bit>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "mchom/intmatrix.hpp"
#include "mchom/partitions.hpp"

namespace mchom {

// A nonempty subset of [n], n <= 64, packed into a word.  Element e is bit
// e-1.
struct Block {
  std::uint64_t mask = 0;

  Block() = default;
  explicit Block(std::uint64_t m) : mask(m) {}
  static Block from_elements(const std::vector<int>& elems);

  int size() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  bool contains(int e) const { return e >= 1 && e <= 64 && (mask >> (e - 1) & 1); }
  bool disjoint(Block o) const { return (mask & o.mask) == 0; }
  bool subset_of(Block o) const { return (mask & ~o.mask) == 0; }
  int min_element() const;  // requires nonempty

  std::vector<int> elements() const;  // ascending
  std::string to_string() const;      // "1,2,3"

  bool operator==(const Block&) const = default;
};

// Total order on blocks: larger blocks first; equal sizes compared
// lexicographically on the sorted element lists.  Returns <0, 0, >0.
int vertex_compare(Block a, Block b);

struct VertexLess {
  bool operator()(Block a, Block b) const { return vertex_compare(a, b) < 0; }
};

// A face is a finite set of distinct blocks, stored sorted by vertex_compare;
// this fixed ordering orients the face.  The empty face (dimension -1) is
// valid.  Blocks need not be disjoint: disjointness is a property of matching
// complexes, checked at the complex level, not a type invariant.
class Face {
 public:
  Face() = default;
  explicit Face(std::vector<Block> blocks);  // sorts; throws on duplicates

  int dimension() const { return static_cast<int>(blocks_.size()) - 1; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  Block block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  Face without(int i) const;             // delete the i-th block
  bool contains_face(const Face& other) const;
  bool blocks_disjoint() const;
  std::uint64_t union_mask() const;

  bool operator==(const Face&) const = default;
  std::strong_ordering operator<=>(const Face& o) const;

  // Canonical set-partition style string: blocks ordered by least element,
  // e.g. "1,2|3,4".  This is the exchange format; the internal orientation
  // order (vertex_compare) is unaffected.
  std::string to_string() const;
  static Face parse(const std::string& s);

  SetPartition to_set_partition() const;  // requires disjoint blocks
  static Face from_set_partition(const SetPartition& p);
  IntegerPartition shape() const;  // block sizes, decreasing
 private:
  std::vector<Block> blocks_;
};

// Sorting arbitrary input blocks into the orientation order.
Face orient(std::vector<Block> blocks);

struct FaceHash {
  std::size_t operator()(const Face& f) const;
};

class Complex {
 public:
  // Builds the complex generated by the given faces on ground set [n].
  // Duplicate and non-maximal generators are dropped; remaining facets are
  // stored sorted (Face::operator<=>).  If assume_maximal is set the
  // domination sweep is skipped (for builders that guarantee maximality).
  Complex(int n, std::vector<Face> facets, bool assume_maximal = false);

  // Copies carry the facet data but start with cold caches (the mutex is not
  // copyable, and the caches rebuild on demand anyway).
  Complex(const Complex& other) : n_(other.n_), facets_(other.facets_) {}
  Complex& operator=(const Complex& other) {
    n_ = other.n_;
    facets_ = other.facets_;
    std::lock_guard<std::mutex> lock(mu_);
    faces_cache_.clear();
    all_faces_.clear();
    all_faces_built_ = false;
    return *this;
  }

  int ground_size() const { return n_; }
  const std::vector<Face>& facets() const { return facets_; }
  // Dimension of the complex; -1 if there are no facets (void complex has no
  // faces at all, and the complex {empty face} cannot arise here since facets
  // are built from nonempty blocks).
  int dimension() const;

  // All q-faces in a fixed sorted order; q = -1 yields the empty face.
  const std::vector<Face>& faces_of_dimension(int q) const;
  long face_count(int q) const;
  bool is_face(const Face& f) const;
  // Index of f within faces_of_dimension(f.dimension()); nullopt if absent.
  std::optional<long> face_index(const Face& f) const;

  // Boundary operator d_q: C_q -> C_{q-1} of the reduced chain complex, as a
  // matrix with rows indexed by (q-1)-faces and columns by q-faces.  d_0 is
  // the 1 x |X_0| augmentation row.  Requires q >= 0.
  IntMatrix boundary_matrix(int q) const;

  Int euler_characteristic_reduced() const;  // sum_q (-1)^q |X_q|, q >= -1
  int connected_components() const;

 private:
  int n_ = 0;
  std::vector<Face> facets_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<Face>> faces_cache_;
  mutable std::unordered_set<Face, FaceHash> all_faces_;
  mutable bool all_faces_built_ = false;
  void build_all_faces_locked() const;
};

// Facet file format: one facet per line in canonical form ("1,2|3,4"),
// '#' starts a comment, blank lines ignored.  The ground size is the largest
// element seen unless an override is given.  write_facets emits facets in
// the complex's canonical order; parse(print(X)) reproduces X exactly.
Complex read_facets(std::istream& in, std::optional<int> ground_size = {});
Complex read_facets_file(const std::string& path, std::optional<int> ground_size = {});
void write_facets(std::ostream& out, const Complex& X);

}  // namespace mchom
