#include "mchom/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mchom/check.hpp"

namespace mchom {

Block Block::from_elements(const std::vector<int>& elems) {
  Block b;
  for (int e : elems) {
    if (e < 1 || e > 64)
      throw std::invalid_argument("block elements must lie in 1..64");
    if (b.mask >> (e - 1) & 1)
      throw std::invalid_argument("repeated element in block");
    b.mask |= std::uint64_t(1) << (e - 1);
  }
  if (b.empty()) throw std::invalid_argument("blocks must be nonempty");
  return b;
}

int Block::min_element() const { return std::countr_zero(mask) + 1; }

std::vector<int> Block::elements() const {
  std::vector<int> out;
  for (std::uint64_t m = mask; m; m &= m - 1)
    out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Block::to_string() const {
  std::string s;
  bool first = true;
  for (int e : elements()) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s;
}

int vertex_compare(Block a, Block b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa > sb ? -1 : 1;  // bigger block first
  std::uint64_t diff = a.mask ^ b.mask;
  if (!diff) return 0;
  // The lowest differing element decides lexicographic order of the sorted
  // element lists: whoever holds it comes first.
  std::uint64_t low = diff & (~diff + 1);
  return (a.mask & low) ? -1 : 1;
}

Face::Face(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& b : blocks_)
    if (b.empty()) throw std::invalid_argument("faces cannot contain empty blocks");
  std::sort(blocks_.begin(), blocks_.end(), VertexLess{});
  for (std::size_t i = 1; i < blocks_.size(); ++i)
    if (blocks_[i] == blocks_[i - 1])
      throw std::invalid_argument("face has a repeated block");
}

Face Face::without(int i) const {
  std::vector<Block> bs = blocks_;
  bs.erase(bs.begin() + i);
  Face f;
  f.blocks_ = std::move(bs);  // deletion preserves sortedness
  return f;
}

bool Face::contains_face(const Face& other) const {
  return std::includes(blocks_.begin(), blocks_.end(), other.blocks_.begin(),
                       other.blocks_.end(), VertexLess{});
}

bool Face::blocks_disjoint() const {
  std::uint64_t seen = 0;
  for (const Block& b : blocks_) {
    if (seen & b.mask) return false;
    seen |= b.mask;
  }
  return true;
}

std::uint64_t Face::union_mask() const {
  std::uint64_t u = 0;
  for (const Block& b : blocks_) u |= b.mask;
  return u;
}

std::strong_ordering Face::operator<=>(const Face& o) const {
  return std::lexicographical_compare_three_way(
      blocks_.begin(), blocks_.end(), o.blocks_.begin(), o.blocks_.end(),
      [](Block a, Block b) { return vertex_compare(a, b) <=> 0; });
}

std::string Face::to_string() const {
  std::vector<Block> bs = blocks_;
  std::sort(bs.begin(), bs.end(),
            [](Block a, Block b) { return a.min_element() < b.min_element(); });
  std::string s;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) s += '|';
    s += bs[i].to_string();
  }
  return s;
}

Face Face::parse(const std::string& s) {
  std::vector<Block> blocks;
  std::string btok;
  std::istringstream in(s);
  while (std::getline(in, btok, '|')) {
    std::vector<int> elems;
    std::string etok;
    std::istringstream bin(btok);
    while (std::getline(bin, etok, ',')) {
      // trim spaces
      std::size_t a = etok.find_first_not_of(" \t");
      if (a == std::string::npos) continue;
      std::size_t b = etok.find_last_not_of(" \t");
      elems.push_back(std::stoi(etok.substr(a, b - a + 1)));
    }
    if (!elems.empty()) blocks.push_back(Block::from_elements(elems));
  }
  return Face(std::move(blocks));
}

SetPartition Face::to_set_partition() const {
  if (!blocks_disjoint())
    throw std::invalid_argument("face blocks are not disjoint");
  std::vector<std::vector<int>> bs;
  bs.reserve(blocks_.size());
  for (const Block& b : blocks_) bs.push_back(b.elements());
  return SetPartition(std::move(bs));
}

Face Face::from_set_partition(const SetPartition& p) {
  std::vector<Block> bs;
  bs.reserve(p.blocks.size());
  for (const auto& b : p.blocks) bs.push_back(Block::from_elements(b));
  return Face(std::move(bs));
}

IntegerPartition Face::shape() const {
  std::vector<int> sizes;
  sizes.reserve(blocks_.size());
  for (const Block& b : blocks_) sizes.push_back(b.size());
  std::sort(sizes.rbegin(), sizes.rend());
  return IntegerPartition(std::move(sizes));
}

Face orient(std::vector<Block> blocks) { return Face(std::move(blocks)); }

std::size_t FaceHash::operator()(const Face& f) const {
  std::size_t h = 1469598103934665603ull;
  for (const Block& b : f.blocks()) {
    h ^= std::hash<std::uint64_t>{}(b.mask);
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// For domination sweeps: candidates that could contain a given facet are
// looked up through the block -> facet-ids index of its rarest block.
std::vector<Face> maximal_faces(std::vector<Face> faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::map<std::uint64_t, std::vector<std::size_t>> by_block;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (const Block& b : faces[i].blocks()) by_block[b.mask].push_back(i);
  std::vector<Face> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    bool dominated = false;
    if (f.num_blocks() == 0) {
      dominated = faces.size() > 1;
    } else {
      const std::vector<std::size_t>* best = nullptr;
      for (const Block& b : f.blocks()) {
        const auto& lst = by_block[b.mask];
        if (!best || lst.size() < best->size()) best = &lst;
      }
      for (std::size_t j : *best) {
        if (j == i) continue;
        if (faces[j].contains_face(f)) { dominated = true; break; }
      }
    }
    if (!dominated) out.push_back(f);
  }
  return out;
}

}  // namespace

Complex::Complex(int n, std::vector<Face> facets, bool assume_maximal) : n_(n) {
  if (n < 0 || n > 64)
    throw std::invalid_argument("complex ground size must be in 0..64");
  std::uint64_t gmask = n == 64 ? ~std::uint64_t(0)
                                : (std::uint64_t(1) << n) - 1;
  for (const Face& f : facets)
    for (const Block& b : f.blocks())
      if (b.mask & ~gmask)
        throw std::invalid_argument("facet block leaves the ground set");
  std::erase_if(facets, [](const Face& f) { return f.num_blocks() == 0; });
  if (assume_maximal) {
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    facets_ = std::move(facets);
  } else {
    facets_ = maximal_faces(std::move(facets));
  }
}

int Complex::dimension() const {
  int d = -1;
  for (const Face& f : facets_) d = std::max(d, f.dimension());
  return d;
}

const std::vector<Face>& Complex::faces_of_dimension(int q) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = faces_cache_.find(q);
  if (it != faces_cache_.end()) return it->second;
  std::vector<Face> result;
  if (q == -1) {
    // C_{-1} is generated by the empty face for every complex.
    result.push_back(Face());
  } else if (q >= 0) {
    std::unordered_set<Face, FaceHash> seen;
    std::vector<int> idx;
    for (const Face& f : facets_) {
      int k = f.num_blocks();
      if (k < q + 1) continue;
      // all (q+1)-subsets of the facet's blocks
      idx.assign(q + 1, 0);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<Block> bs;
        bs.reserve(q + 1);
        for (int i : idx) bs.push_back(f.block(i));
        seen.insert(Face(std::move(bs)));
        int pos = q;
        while (pos >= 0 && idx[pos] == k - (q + 1) + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i <= q; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    result.assign(seen.begin(), seen.end());
    std::sort(result.begin(), result.end());
  }
  auto [pos, _] = faces_cache_.emplace(q, std::move(result));
  return pos->second;
}

long Complex::face_count(int q) const {
  return static_cast<long>(faces_of_dimension(q).size());
}

void Complex::build_all_faces_locked() const {
  if (all_faces_built_) return;
  all_faces_.insert(Face());
  for (const Face& f : facets_) {
    int k = f.num_blocks();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); ++mask) {
      std::vector<Block> bs;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) bs.push_back(f.block(i));
      all_faces_.insert(Face(std::move(bs)));
    }
  }
  all_faces_built_ = true;
}

bool Complex::is_face(const Face& f) const {
  std::lock_guard<std::mutex> lock(mu_);
  build_all_faces_locked();
  return all_faces_.contains(f);
}

std::optional<long> Complex::face_index(const Face& f) const {
  const auto& faces = faces_of_dimension(f.dimension());
  auto it = std::lower_bound(faces.begin(), faces.end(), f);
  if (it == faces.end() || !(*it == f)) return std::nullopt;
  return static_cast<long>(it - faces.begin());
}

IntMatrix Complex::boundary_matrix(int q) const {
  if (q < 0) throw std::invalid_argument("boundary_matrix: q must be >= 0");
  const auto& domain = faces_of_dimension(q);
  if (q == 0) {
    IntMatrix d(1, static_cast<long>(domain.size()));
    for (long c = 0; c < static_cast<long>(domain.size()); ++c) d.set(0, c, 1);
    return d;
  }
  const auto& codomain = faces_of_dimension(q - 1);
  IntMatrix d(static_cast<long>(codomain.size()), static_cast<long>(domain.size()));
  for (long c = 0; c < static_cast<long>(domain.size()); ++c) {
    const Face& f = domain[static_cast<std::size_t>(c)];
    for (int i = 0; i <= q; ++i) {
      Face sub = f.without(i);
      auto it = std::lower_bound(codomain.begin(), codomain.end(), sub);
      check(it != codomain.end() && *it == sub, "boundary face missing");
      long r = static_cast<long>(it - codomain.begin());
      d.set(r, c, i % 2 ? -1 : 1);
    }
  }
  return d;
}

Int Complex::euler_characteristic_reduced() const {
  Int chi = 0;
  for (int q = -1; q <= dimension(); ++q) {
    Int c = face_count(q);
    if ((q % 2 + 2) % 2 == 0) chi += c; else chi -= c;
  }
  return chi;
}

int Complex::connected_components() const {
  const auto& verts = faces_of_dimension(0);
  if (verts.empty()) return 0;
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&](Block b) {
    Face v({b});
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return static_cast<int>(it - verts.begin());
  };
  for (const Face& e : faces_of_dimension(1)) {
    int a = find(index_of(e.block(0))), b = find(index_of(e.block(1)));
    if (a != b) parent[a] = b;
  }
  int comps = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  return comps;
}

Complex read_facets(std::istream& in, std::optional<int> ground_size) {
  std::vector<Face> facets;
  std::string line;
  int max_elem = 0;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    Face f = Face::parse(line.substr(a, b - a + 1));
    for (const Block& blk : f.blocks())
      for (int e : blk.elements()) max_elem = std::max(max_elem, e);
    facets.push_back(std::move(f));
  }
  int n = ground_size.value_or(max_elem);
  return Complex(n, std::move(facets));
}

Complex read_facets_file(const std::string& path, std::optional<int> ground_size) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open facet file: " + path);
  return read_facets(in, ground_size);
}

void write_facets(std::ostream& out, const Complex& X) {
  for (const Face& f : X.facets()) out << f.to_string() << '\n';
}

}  // namespace mchom
