#include "mchom/permutations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mchom {

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("identity: negative degree");
  Permutation g;
  g.img_.resize(static_cast<std::size_t>(n));
  std::iota(g.img_.begin(), g.img_.end(), 1);
  return g;
}

Permutation Permutation::from_one_line(const std::vector<int>& images) {
  int n = static_cast<int>(images.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : images) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(v - 1)] = 1;
  }
  Permutation g;
  g.img_ = images;
  return g;
}

Permutation Permutation::from_cycles(int n,
                                     const std::vector<std::vector<int>>& cycles) {
  Permutation g = identity(n);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
      if (x < 1 || x > n) throw std::invalid_argument("cycle element out of range");
      if (used[static_cast<std::size_t>(x - 1)])
        throw std::invalid_argument("element repeated across cycles");
      used[static_cast<std::size_t>(x - 1)] = 1;
      g.img_[static_cast<std::size_t>(x - 1)] = y;
    }
  }
  return from_one_line(g.img_);  // re-validate
}

Block Permutation::apply(Block b) const {
  Block out;
  for (std::uint64_t m = b.mask; m; m &= m - 1) {
    int e = std::countr_zero(m) + 1;
    if (e > degree())
      throw std::invalid_argument("block element exceeds permutation degree");
    out.mask |= std::uint64_t(1) << (apply(e) - 1);
  }
  return out;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (degree() != other.degree())
    throw std::invalid_argument("composing permutations of different degrees");
  Permutation g;
  g.img_.resize(img_.size());
  for (int x = 1; x <= degree(); ++x)
    g.img_[static_cast<std::size_t>(x - 1)] = apply(other.apply(x));
  return g;
}

Permutation Permutation::inverse() const {
  Permutation g;
  g.img_.resize(img_.size());
  for (int x = 1; x <= degree(); ++x)
    g.img_[static_cast<std::size_t>(apply(x) - 1)] = x;
  return g;
}

Permutation Permutation::conjugate(const Permutation& x) const {
  return x.compose(*this).compose(x.inverse());
}

int Permutation::sign() const {
  int s = 1;
  for (int p : cycle_type().parts)
    if (p % 2 == 0) s = -s;
  return s;
}

IntegerPartition Permutation::cycle_type() const {
  std::vector<char> seen(img_.size(), 0);
  std::vector<int> lens;
  for (int x = 1; x <= degree(); ++x) {
    if (seen[static_cast<std::size_t>(x - 1)]) continue;
    int len = 0, y = x;
    do {
      seen[static_cast<std::size_t>(y - 1)] = 1;
      y = apply(y);
      ++len;
    } while (y != x);
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return IntegerPartition(std::move(lens));
}

std::string Permutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(img_[i]);
  }
  return s;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> imgs(static_cast<std::size_t>(n));
  std::iota(imgs.begin(), imgs.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_one_line(imgs));
  } while (std::next_permutation(imgs.begin(), imgs.end()));
  return out;
}

Permutation class_representative(const IntegerPartition& type) {
  int n = type.sum();
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int p : type.parts) {
    std::vector<int> cyc(static_cast<std::size_t>(p));
    std::iota(cyc.begin(), cyc.end(), next);
    next += p;
    cycles.push_back(std::move(cyc));
  }
  return Permutation::from_cycles(n, cycles);
}

Int conjugacy_class_size(const IntegerPartition& type) {
  int n = type.sum();
  std::map<int, int> mult;
  for (int p : type.parts) ++mult[p];
  Int z = 1;
  for (auto [d, m] : mult) z *= pow_int(Int(d), static_cast<unsigned long>(m)) *
                               factorial(m);
  Int size = factorial(n) / z;
  return size;
}

std::vector<IntegerPartition> cycle_types(int n) { return partitions_of(n); }

}  // namespace mchom
