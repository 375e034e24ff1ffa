#pragma once

// Surjections [a] ->> [b] and the face maps they induce by taking preimages of
// blocks.  These drive both the preimage-closure family construction and the
// fibre-closedness audits / induced maps on homology.

#include <string>
#include <vector>

#include "mchom/simplicial.hpp"

namespace mchom {

struct Surjection {
  int a = 0, b = 0;
  std::vector<int> images;  // images[i-1] = f(i), values in 1..b

  Surjection() = default;
  Surjection(int a_, int b_, std::vector<int> imgs);  // validates surjectivity

  // "1 2 3 3" parses as f(1)=1, f(2)=2, f(3)=3, f(4)=3 with b = max image.
  static Surjection parse(const std::string& s);
  std::string to_string() const;

  int operator()(int x) const { return images[static_cast<std::size_t>(x - 1)]; }
  Block fibre(int j) const;            // f^{-1}(j) as a subset of [a]
  Block preimage(Block blk) const;     // union of fibres over blk
  Face preimage_face(const Face& f) const;

  bool operator==(const Surjection&) const = default;
};

// All surjections [a] ->> [b], ordered lexicographically by image vector.
std::vector<Surjection> all_surjections(int a, int b);

// Compositions of a into b positive parts, each giving the canonical
// surjection with consecutive fibres (sizes = the composition).  Every
// surjection equals one of these composed with a permutation of [a], so for
// S_a-invariant families these representatives suffice for audits.
std::vector<Surjection> composition_surjections(int a, int b);

}  // namespace mchom
