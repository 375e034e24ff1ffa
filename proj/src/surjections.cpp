#include "mchom/surjections.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mchom {

Surjection::Surjection(int a_, int b_, std::vector<int> imgs)
    : a(a_), b(b_), images(std::move(imgs)) {
  if (a < 1 || b < 1 || b > a)
    throw std::invalid_argument("surjection requires 1 <= b <= a");
  if (static_cast<int>(images.size()) != a)
    throw std::invalid_argument("surjection image vector has wrong length");
  std::vector<char> hit(static_cast<std::size_t>(b), 0);
  for (int v : images) {
    if (v < 1 || v > b)
      throw std::invalid_argument("surjection image out of range");
    hit[static_cast<std::size_t>(v - 1)] = 1;
  }
  for (char h : hit)
    if (!h) throw std::invalid_argument("map is not surjective");
}

Surjection Surjection::parse(const std::string& s) {
  std::vector<int> imgs;
  std::istringstream in(s);
  int v;
  while (in >> v) imgs.push_back(v);
  if (imgs.empty()) throw std::invalid_argument("empty surjection string");
  int b = *std::max_element(imgs.begin(), imgs.end());
  int a = static_cast<int>(imgs.size());
  return Surjection(a, b, std::move(imgs));
}

std::string Surjection::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(images[i]);
  }
  return s;
}

Block Surjection::fibre(int j) const {
  Block f;
  for (int x = 1; x <= a; ++x)
    if (images[static_cast<std::size_t>(x - 1)] == j)
      f.mask |= std::uint64_t(1) << (x - 1);
  return f;
}

Block Surjection::preimage(Block blk) const {
  Block out;
  for (int x = 1; x <= a; ++x)
    if (blk.contains(images[static_cast<std::size_t>(x - 1)]))
      out.mask |= std::uint64_t(1) << (x - 1);
  return out;
}

Face Surjection::preimage_face(const Face& f) const {
  std::vector<Block> bs;
  bs.reserve(f.blocks().size());
  for (const Block& blk : f.blocks()) bs.push_back(preimage(blk));
  return Face(std::move(bs));
}

std::vector<Surjection> all_surjections(int a, int b) {
  if (a < 1 || b < 1 || b > a) return {};
  std::vector<Surjection> out;
  std::vector<int> imgs(static_cast<std::size_t>(a), 1);
  while (true) {
    std::vector<char> hit(static_cast<std::size_t>(b), 0);
    for (int v : imgs) hit[static_cast<std::size_t>(v - 1)] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; }))
      out.emplace_back(a, b, imgs);
    int i = a - 1;
    while (i >= 0 && imgs[static_cast<std::size_t>(i)] == b) {
      imgs[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++imgs[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Surjection> composition_surjections(int a, int b) {
  if (a < 1 || b < 1 || b > a) return {};
  std::vector<Surjection> out;
  std::vector<int> part;
  // compositions of a into b positive parts, lexicographic
  std::function<void(int, int)> rec = [&](int remaining, int slots) {
    if (slots == 1) {
      part.push_back(remaining);
      std::vector<int> imgs;
      imgs.reserve(static_cast<std::size_t>(a));
      for (int j = 0; j < b; ++j)
        for (int t = 0; t < part[static_cast<std::size_t>(j)]; ++t)
          imgs.push_back(j + 1);
      out.emplace_back(a, b, std::move(imgs));
      part.pop_back();
      return;
    }
    for (int p = 1; p <= remaining - (slots - 1); ++p) {
      part.push_back(p);
      rec(remaining - p, slots - 1);
      part.pop_back();
    }
  };
  rec(a, b);
  return out;
}

}  // namespace mchom
