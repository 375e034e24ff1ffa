#pragma once

// Elements of S_n acting on [n], with cycle types, signs and class data.

#include <string>
#include <vector>

#include "mchom/partitions.hpp"
#include "mchom/simplicial.hpp"

namespace mchom {

class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  // One-line notation: images[i-1] = g(i), values 1..n.
  static Permutation from_one_line(const std::vector<int>& images);
  // Cycles in 1-based elements; unmentioned elements are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img_.size()); }
  int apply(int x) const { return img_[static_cast<std::size_t>(x - 1)]; }
  Block apply(Block b) const;

  Permutation compose(const Permutation& other) const;  // this after other
  Permutation inverse() const;
  Permutation conjugate(const Permutation& x) const;  // x * this * x^{-1}

  int sign() const;
  IntegerPartition cycle_type() const;

  bool operator==(const Permutation&) const = default;
  std::string to_string() const;  // one-line, space separated

 private:
  std::vector<int> img_;  // 1-based images
};

// All n! elements in lexicographic one-line order.
std::vector<Permutation> all_permutations(int n);

// The canonical representative with consecutive cycles: type (3,2) in S_5
// gives (1 2 3)(4 5).
Permutation class_representative(const IntegerPartition& type);

// |class| = n! / prod_d d^{m_d} m_d!
Int conjugacy_class_size(const IntegerPartition& type);

// Cycle types of S_n = partitions of n, in the canonical enumeration order.
std::vector<IntegerPartition> cycle_types(int n);

}  // namespace mchom
