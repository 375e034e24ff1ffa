#include "mchom/families.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "mchom/check.hpp"
#include "mchom/permutations.hpp"

namespace mchom {

Hypergraph::Hypergraph(int n_, std::vector<Block> edges_)
    : n(n_), edges(std::move(edges_)) {
  if (n < 0 || n > 64)
    throw std::invalid_argument("hypergraph vertex count must be in 0..64");
  std::uint64_t gmask = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
  for (const Block& e : edges) {
    if (e.empty()) throw std::invalid_argument("hyperedges must be nonempty");
    if (e.mask & ~gmask)
      throw std::invalid_argument("hyperedge leaves the vertex set");
  }
  std::sort(edges.begin(), edges.end(), VertexLess{});
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw std::invalid_argument("repeated hyperedge");
}

namespace {

std::vector<Block> all_subsets_of_size(int n, int r) {
  std::vector<Block> out;
  if (r < 1 || r > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(Block::from_elements(idx));
    int pos = r - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (r - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < r; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

}  // namespace

Hypergraph complete_graph(int n) { return complete_uniform_hypergraph(n, 2); }

Hypergraph complete_uniform_hypergraph(int n, int r) {
  if (r < 1) throw std::invalid_argument("uniformity must be >= 1");
  return Hypergraph(n, all_subsets_of_size(n, r));
}

Hypergraph complete_hypergraph(int n) {
  std::vector<Block> edges;
  for (int r = 1; r <= n; ++r) {
    auto part = all_subsets_of_size(n, r);
    edges.insert(edges.end(), part.begin(), part.end());
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph complete_bipartite_graph(int m, int n) {
  std::vector<Block> edges;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      edges.push_back(Block::from_elements({i, m + j}));
  return Hypergraph(m + n, std::move(edges));
}

namespace {

void matchings_rec(const std::vector<Block>& edges, std::size_t start,
                   std::vector<Block>& cur, std::uint64_t used,
                   std::vector<Face>& out) {
  bool extended_somewhere = false;
  for (std::size_t i = start; i < edges.size(); ++i) {
    if (used & edges[i].mask) continue;
    extended_somewhere = true;
    cur.push_back(edges[i]);
    matchings_rec(edges, i + 1, cur, used | edges[i].mask, out);
    cur.pop_back();
  }
  if (!extended_somewhere && !cur.empty()) {
    // cur is maximal among extensions by later edges; it is a facet iff no
    // edge at all (also earlier ones) is disjoint from it.
    for (const Block& e : edges)
      if (!(used & e.mask)) return;
    out.emplace_back(cur);
  }
}

}  // namespace

Complex matching_complex(const Hypergraph& g) {
  std::vector<Face> facets;
  std::vector<Block> cur;
  matchings_rec(g.edges, 0, cur, 0, facets);
  return Complex(g.n, std::move(facets), /*assume_maximal=*/true);
}

Complex build_X(int n, bool include_full_vertex) {
  if (n < 2) throw std::invalid_argument("build_X requires n >= 2");
  std::vector<int> ground(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ground[static_cast<std::size_t>(i)] = i + 1;
  SetPartitionConstraints c;
  c.forbid_full_block = true;
  std::vector<Face> facets;
  for (const SetPartition& p : set_partitions(ground, c))
    facets.push_back(Face::from_set_partition(p));
  if (include_full_vertex)
    facets.push_back(Face({Block::from_elements(ground)}));
  // Partitions into >= 2 blocks are maximal matchings of the complete
  // hypergraph, and the full-set vertex is isolated; no domination sweep.
  return Complex(n, std::move(facets), /*assume_maximal=*/true);
}

Complex build_X_bar(int n) { return build_X(n, true); }

Complex skeleton(const Complex& X, int q) {
  if (q < 0) return Complex(X.ground_size(), {});
  // Facets of the skeleton: low-dimensional facets of X plus all q-faces.
  // These are pairwise incomparable (a facet of dimension < q cannot sit
  // inside a q-face, being maximal in X), so only deduplication is needed.
  std::vector<Face> gen;
  for (const Face& f : X.facets())
    if (f.dimension() < q) gen.push_back(f);
  if (X.dimension() >= q) {
    const auto& faces = X.faces_of_dimension(q);
    gen.insert(gen.end(), faces.begin(), faces.end());
  }
  return Complex(X.ground_size(), std::move(gen), /*assume_maximal=*/true);
}

FamilySpec FamilySpec::parse(const std::string& s) {
  FamilySpec spec;
  if (s == "X") { spec.kind = Kind::X; return spec; }
  if (s == "skeleton1") { spec.kind = Kind::Skeleton1; return spec; }
  if (s == "complete_on_vertices" || s == "complete") {
    spec.kind = Kind::CompleteOnVertices;
    return spec;
  }
  if (s.rfind("matching:K", 0) == 0) {
    std::string rest = s.substr(10);
    if (!rest.empty() && rest[0] == '(') {
      std::size_t close = rest.find(')');
      if (close == std::string::npos)
        throw std::invalid_argument("bad family spec: " + s);
      spec.kind = Kind::MatchingUniform;
      spec.r = std::stoi(rest.substr(1, close - 1));
      if (spec.r < 1) throw std::invalid_argument("bad uniformity in: " + s);
      rest = rest.substr(close + 1);
    } else {
      spec.kind = Kind::MatchingComplete;
    }
    if (!rest.empty()) spec.default_n = std::stoi(rest);
    return spec;
  }
  if (s.rfind("chessboard:", 0) == 0) {
    spec.kind = Kind::Chessboard;
    spec.m = std::stoi(s.substr(11));
    if (spec.m < 1) throw std::invalid_argument("bad chessboard size in: " + s);
    return spec;
  }
  if (s.rfind("closure:", 0) == 0) {
    std::string rest = s.substr(8);
    std::size_t at = rest.rfind('@');
    if (at == std::string::npos)
      throw std::invalid_argument("closure spec needs FILE@n0: " + s);
    spec.kind = Kind::ClosureSeed;
    spec.seed_n = std::stoi(rest.substr(at + 1));
    Complex seed = read_facets_file(rest.substr(0, at), spec.seed_n);
    spec.seed = std::make_shared<Complex>(std::move(seed));
    return spec;
  }
  throw std::invalid_argument("unknown family name: " + s);
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case Kind::X: return "X";
    case Kind::Skeleton1: return "skeleton1";
    case Kind::CompleteOnVertices: return "complete_on_vertices";
    case Kind::MatchingComplete:
      return "matching:K" + (default_n ? std::to_string(*default_n) : "");
    case Kind::MatchingUniform:
      return "matching:K(" + std::to_string(r) + ")" +
             (default_n ? std::to_string(*default_n) : "");
    case Kind::Chessboard: return "chessboard:" + std::to_string(m);
    case Kind::ClosureSeed:
      return "closure:<seed>@" + std::to_string(seed_n);
  }
  return "?";
}

namespace {

Complex closure_step(const Complex& Xk, int k) {
  // Facets of the (k+1)-st member: maximal faces among preimages of facets
  // of the k-th member under all surjections [k+1] ->> [k].
  std::unordered_set<Face, FaceHash> preimages;
  for (const Surjection& f : all_surjections(k + 1, k))
    for (const Face& sigma : Xk.facets())
      preimages.insert(f.preimage_face(sigma));
  std::vector<Face> gen(preimages.begin(), preimages.end());
  return Complex(k + 1, std::move(gen));
}

}  // namespace

Complex build_family(const FamilySpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("build_family: n must be >= 0");
  switch (spec.kind) {
    case FamilySpec::Kind::X:
      if (n < 2) return Complex(n, {});
      return build_X(n);
    case FamilySpec::Kind::Skeleton1: {
      if (n < 2) return Complex(n, {});
      return skeleton(build_X(n), 1);
    }
    case FamilySpec::Kind::CompleteOnVertices: {
      if (n < 2) return Complex(n, {});
      Complex X = build_X(n);
      const auto& verts = X.faces_of_dimension(0);
      std::vector<Face> facets;
      if (verts.size() == 1) {
        facets.push_back(verts[0]);
      } else {
        for (std::size_t i = 0; i < verts.size(); ++i)
          for (std::size_t j = i + 1; j < verts.size(); ++j)
            facets.push_back(Face({verts[i].block(0), verts[j].block(0)}));
      }
      return Complex(n, std::move(facets), /*assume_maximal=*/true);
    }
    case FamilySpec::Kind::MatchingComplete:
      return matching_complex(complete_graph(n));
    case FamilySpec::Kind::MatchingUniform:
      return matching_complex(complete_uniform_hypergraph(n, spec.r));
    case FamilySpec::Kind::Chessboard:
      return matching_complex(complete_bipartite_graph(spec.m, n));
    case FamilySpec::Kind::ClosureSeed: {
      if (!spec.seed) throw std::invalid_argument("closure family lacks a seed");
      if (n < spec.seed_n) return Complex(n, {});
      Complex cur = *spec.seed;
      for (int k = spec.seed_n; k < n; ++k) cur = closure_step(cur, k);
      return cur;
    }
  }
  throw std::invalid_argument("unknown family kind");
}

namespace {

// Does g map every facet of X into a face of X?  (Faces then follow since
// images of subfaces are subfaces of images.)
bool generator_invariant(const Complex& X, const Permutation& g) {
  for (const Face& f : X.facets()) {
    std::vector<Block> imgs;
    imgs.reserve(f.blocks().size());
    for (const Block& b : f.blocks()) imgs.push_back(g.apply(b));
    if (!X.is_face(Face(std::move(imgs)))) return false;
  }
  return true;
}

std::optional<FibreClosedWitness> scan_surjections(
    const Complex& Xa, const Complex& Xb, const std::vector<Surjection>& fs) {
  for (const Surjection& f : fs) {
    for (const Face& sigma : Xb.facets()) {
      Face pre = f.preimage_face(sigma);
      if (!Xa.is_face(pre)) {
        FibreClosedWitness w;
        w.a = f.a;
        w.b = f.b;
        w.f = f;
        w.sigma = sigma;
        w.preimage = pre;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

FibreClosedReport is_fibre_closed(const std::function<Complex(int)>& builder,
                                  int n_max, int full_limit) {
  FibreClosedReport report;
  std::vector<Complex> X;
  X.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) X.push_back(builder(n));
  for (int a = 1; a <= n_max; ++a) {
    const Complex& Xa = X[static_cast<std::size_t>(a)];
    bool full = a <= full_limit;
    report.strategy.emplace_back(a, full ? "full" : "orbit");
    if (full) {
      for (int b = 1; b <= a; ++b) {
        auto w = scan_surjections(Xa, X[static_cast<std::size_t>(b)],
                                  all_surjections(a, b));
        if (w) {
          report.fibre_closed = false;
          report.witness = std::move(w);
          return report;
        }
      }
      continue;
    }
    // Orbit mode.  First establish S_a-invariance exactly via generators;
    // then a surjection g = rep ∘ pi violates the condition iff the
    // composition representative rep does (preimages differ by pi, which
    // preserves the face set).
    bool invariant = true;
    if (a >= 2) {
      Permutation transposition = Permutation::from_cycles(a, {{1, 2}});
      std::vector<int> cyc(static_cast<std::size_t>(a));
      for (int i = 0; i < a; ++i) cyc[static_cast<std::size_t>(i)] = i + 1;
      Permutation rotation = Permutation::from_cycles(a, {cyc});
      invariant = generator_invariant(Xa, transposition) &&
                  generator_invariant(Xa, rotation);
    }
    bool suspicious = !invariant;
    if (!suspicious) {
      for (int b = 1; b <= a && !suspicious; ++b) {
        if (b == a) continue;  // invariance already established
        if (scan_surjections(Xa, X[static_cast<std::size_t>(b)],
                             composition_surjections(a, b)))
          suspicious = true;
      }
    }
    if (suspicious) {
      // Extract the first genuine witness at this level by full enumeration.
      for (int b = 1; b <= a; ++b) {
        auto w = scan_surjections(Xa, X[static_cast<std::size_t>(b)],
                                  all_surjections(a, b));
        if (w) {
          report.fibre_closed = false;
          report.witness = std::move(w);
          return report;
        }
      }
      check(false, "orbit-mode violation vanished under full enumeration");
    }
  }
  return report;
}

FibreClosedReport is_fibre_closed(const FamilySpec& spec, int n_max,
                                  int full_limit) {
  return is_fibre_closed([&spec](int n) { return build_family(spec, n); },
                         n_max, full_limit);
}

}  // namespace mchom
