#include "mchom/shelling.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "mchom/check.hpp"

namespace mchom {

namespace {

int singleton_count(const Face& f) {
  int c = 0;
  for (const Block& b : f.blocks())
    if (b.size() == 1) ++c;
  return c;
}

// splitmix64; fixed constants keep seeded orders reproducible everywhere.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Component id of each facet under connectivity of the complex: two facets
// touch when their vertex blocks lie in one connected component.
std::vector<int> facet_components(const Complex& X) {
  const auto& facets = X.facets();
  std::map<std::uint64_t, int> comp_of_block;
  std::vector<int> parent;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto id_of = [&](Block b) {
    auto it = comp_of_block.find(b.mask);
    if (it != comp_of_block.end()) return it->second;
    int id = static_cast<int>(parent.size());
    parent.push_back(id);
    comp_of_block.emplace(b.mask, id);
    return id;
  };
  for (const Face& f : facets) {
    int first = -1;
    for (const Block& b : f.blocks()) {
      int id = id_of(b);
      if (first == -1) first = find(id);
      else {
        int r = find(id);
        if (r != first) { parent[static_cast<std::size_t>(r)] = first; }
      }
    }
  }
  std::vector<int> out(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i)
    out[i] = facets[i].num_blocks() ? find(comp_of_block[facets[i].block(0).mask])
                                    : -1;
  return out;
}

void validate_order(const Complex& X, const ShellingOrder& order) {
  std::size_t m = X.facets().size();
  if (order.facet_order.size() != m)
    throw std::invalid_argument("shelling order has wrong length");
  std::vector<char> seen(m, 0);
  for (int i : order.facet_order) {
    if (i < 0 || static_cast<std::size_t>(i) >= m || seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("shelling order is not a permutation of facets");
    seen[static_cast<std::size_t>(i)] = 1;
  }
}

// Maximal faces of the intersection of closure(sigma_t) with the union of
// closures of earlier facets, where union membership is available as a set.
// Returns (maximal proper subfaces in the union, whether any nonempty face of
// sigma_t lies in the union).
std::vector<Face> maximal_intersection_faces(
    const Face& facet, const std::unordered_set<Face, FaceHash>& prior) {
  int k = facet.num_blocks();
  std::uint64_t full = (std::uint64_t(1) << k) - 1;
  std::vector<std::uint64_t> in_union;  // subset masks present in prior
  for (std::uint64_t mask = 1; mask < full; ++mask) {  // proper nonempty
    std::vector<Block> bs;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) bs.push_back(facet.block(i));
    if (prior.contains(Face(std::move(bs)))) in_union.push_back(mask);
  }
  std::vector<Face> maximal;
  for (std::uint64_t m1 : in_union) {
    bool dominated = false;
    for (std::uint64_t m2 : in_union)
      if (m1 != m2 && (m1 & ~m2) == 0) { dominated = true; break; }
    if (!dominated) {
      std::vector<Block> bs;
      for (int i = 0; i < k; ++i)
        if (m1 >> i & 1) bs.push_back(facet.block(i));
      maximal.emplace_back(std::move(bs));
    }
  }
  return maximal;
}

void insert_closure(const Face& facet, std::unordered_set<Face, FaceHash>& prior) {
  int k = facet.num_blocks();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); ++mask) {
    std::vector<Block> bs;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) bs.push_back(facet.block(i));
    prior.insert(Face(std::move(bs)));
  }
}

struct ScanState {
  std::unordered_set<Face, FaceHash> prior;
  std::vector<char> component_seen;
};

// Processes position t; returns a violation or updates state.  When
// restriction_out is non-null the restriction set of sigma_t is stored there.
std::optional<ShellingViolation> scan_position(
    const Complex& X, const std::vector<int>& comp, int t, int facet_idx,
    ScanState& state, std::vector<Block>* restriction_out) {
  const Face& facet = X.facets()[static_cast<std::size_t>(facet_idx)];
  int c = comp[static_cast<std::size_t>(facet_idx)];
  if (static_cast<int>(state.component_seen.size()) <= c)
    state.component_seen.resize(static_cast<std::size_t>(c) + 1, 0);
  bool first_in_component = !state.component_seen[static_cast<std::size_t>(c)];
  state.component_seen[static_cast<std::size_t>(c)] = 1;

  std::vector<Face> maximal = maximal_intersection_faces(facet, state.prior);
  std::optional<ShellingViolation> violation;
  if (maximal.empty()) {
    if (!first_in_component && t > 0) {
      ShellingViolation v;
      v.position = t;
      v.facet = facet;
      v.reason = "empty-intersection";
      violation = v;
    }
    if (restriction_out) restriction_out->clear();
  } else {
    int want = facet.dimension() - 1;
    for (const Face& mf : maximal) {
      if (mf.dimension() != want) {
        ShellingViolation v;
        v.position = t;
        v.facet = facet;
        v.reason = "impure-intersection";
        v.bad_face = mf;
        violation = v;
        break;
      }
    }
    if (!violation && restriction_out) {
      // R(sigma_t): blocks v with sigma_t - v inside the union.  For a
      // 1-block facet sigma - v is the empty face, which lies in the union
      // exactly when anything came before.
      restriction_out->clear();
      for (int i = 0; i < facet.num_blocks(); ++i) {
        Face sub = facet.without(i);
        bool inside = sub.num_blocks() == 0 ? !state.prior.empty()
                                            : state.prior.contains(sub);
        if (inside) restriction_out->push_back(facet.block(i));
      }
    }
  }
  insert_closure(facet, state.prior);
  return violation;
}

}  // namespace

ShellingOrder singleton_shelling_order(const Complex& X, TieBreak tie_break,
                                       std::uint64_t seed) {
  const auto& facets = X.facets();
  std::uint64_t gmask = X.ground_size() == 64
                            ? ~std::uint64_t(0)
                            : (std::uint64_t(1) << X.ground_size()) - 1;
  for (const Face& f : facets) {
    if (!f.blocks_disjoint() || f.union_mask() != gmask)
      throw std::invalid_argument(
          "singleton_shelling_order: facets must partition the ground set");
  }
  std::vector<int> idx(facets.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> singles(facets.size());
  std::vector<std::string> keys(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    singles[i] = singleton_count(facets[i]);
    keys[i] = facets[i].to_string();
  }
  std::vector<std::uint64_t> h(facets.size());
  if (tie_break == TieBreak::Seeded) {
    for (std::size_t i = 0; i < facets.size(); ++i) {
      std::uint64_t x = seed;
      for (const Block& b : facets[i].blocks()) x = mix64(x ^ b.mask);
      h[i] = x;
    }
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    std::size_t ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
    if (singles[ia] != singles[ib]) return singles[ia] > singles[ib];
    switch (tie_break) {
      case TieBreak::LexAsc: return keys[ia] < keys[ib];
      case TieBreak::LexDesc: return keys[ia] > keys[ib];
      case TieBreak::Seeded:
        if (h[ia] != h[ib]) return h[ia] < h[ib];
        return keys[ia] < keys[ib];
    }
    return a < b;
  });
  return ShellingOrder{std::move(idx)};
}

ShellingCheckResult check_shelling(const Complex& X, const ShellingOrder& order) {
  validate_order(X, order);
  std::vector<int> comp = facet_components(X);
  ScanState state;
  for (std::size_t t = 0; t < order.facet_order.size(); ++t) {
    auto v = scan_position(X, comp, static_cast<int>(t),
                           order.facet_order[t], state, nullptr);
    if (v) return {false, std::move(v)};
  }
  return {true, std::nullopt};
}

RestrictionSet restriction_set(const Complex& X, const ShellingOrder& order,
                               int t) {
  validate_order(X, order);
  if (t < 0 || static_cast<std::size_t>(t) >= order.facet_order.size())
    throw std::invalid_argument("restriction_set: position out of range");
  std::vector<int> comp = facet_components(X);
  ScanState state;
  std::vector<Block> restriction;
  for (int s = 0; s <= t; ++s) {
    auto v = scan_position(X, comp, s, order.facet_order[static_cast<std::size_t>(s)],
                           state, s == t ? &restriction : nullptr);
    if (v)
      throw std::invalid_argument(
          "restriction_set: shelling condition fails at position " +
          std::to_string(v->position));
  }
  RestrictionSet r;
  r.facet = X.facets()[static_cast<std::size_t>(
      order.facet_order[static_cast<std::size_t>(t)])];
  r.restriction = std::move(restriction);
  return r;
}

std::map<int, std::vector<Face>> homology_facets(const Complex& X,
                                                 const ShellingOrder& order) {
  validate_order(X, order);
  std::vector<int> comp = facet_components(X);
  ScanState state;
  std::map<int, std::vector<Face>> out;
  for (std::size_t t = 0; t < order.facet_order.size(); ++t) {
    std::vector<Block> restriction;
    const Face& facet =
        X.facets()[static_cast<std::size_t>(order.facet_order[t])];
    auto v = scan_position(X, comp, static_cast<int>(t), order.facet_order[t],
                           state, &restriction);
    if (v)
      throw std::invalid_argument(
          "homology_facets: shelling condition fails at position " +
          std::to_string(v->position));
    if (static_cast<int>(restriction.size()) == facet.num_blocks() &&
        facet.num_blocks() > 0)
      out[facet.dimension()].push_back(facet);
  }
  return out;
}

std::map<int, long> homology_ranks_from_shelling(const Complex& X,
                                                 const ShellingOrder& order) {
  std::map<int, long> ranks;
  for (const auto& [q, faces] : homology_facets(X, order))
    ranks[q] = static_cast<long>(faces.size());
  return ranks;
}

}  // namespace mchom
