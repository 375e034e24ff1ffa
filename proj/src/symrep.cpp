#include "mchom/symrep.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mchom/check.hpp"
#include "mchom/families.hpp"
#include "mchom/ratmat.hpp"

namespace mchom {

ClassFunction zero_class_function(int n) {
  ClassFunction f;
  f.n = n;
  f.values.assign(cycle_types(n).size(), Rat(0));
  return f;
}

ClassFunction trivial_character(int n) {
  ClassFunction f;
  f.n = n;
  f.values.assign(cycle_types(n).size(), Rat(1));
  return f;
}

ClassFunction sign_character(int n) {
  ClassFunction f;
  f.n = n;
  for (const IntegerPartition& t : cycle_types(n)) {
    // Each d-cycle contributes (-1)^{d-1}, so the class sign is (-1)^{n - l}.
    int l = t.length();
    f.values.emplace_back((n - l) % 2 ? -1 : 1);
  }
  return f;
}

ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b) {
  check(a.n == b.n && a.values.size() == b.values.size(), "cf_add: mismatched class functions");
  ClassFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

ClassFunction cf_sub(const ClassFunction& a, const ClassFunction& b) {
  check(a.n == b.n && a.values.size() == b.values.size(), "cf_sub: mismatched class functions");
  ClassFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

Rat inner_product(const ClassFunction& a, const ClassFunction& b) {
  check(a.n == b.n && a.values.size() == b.values.size(),
        "inner_product: mismatched class functions");
  auto types = cycle_types(a.n);
  Rat sum(0);
  for (std::size_t i = 0; i < types.size(); ++i)
    sum += Rat(conjugacy_class_size(types[i])) * a.values[i] * b.values[i];
  return sum / Rat(factorial(a.n));
}

namespace {

// First-column hook lengths lambda_i + (k - 1 - i), strictly decreasing.
std::vector<long> beta_set(const std::vector<int>& lambda) {
  long k = static_cast<long>(lambda.size());
  std::vector<long> b(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i)
    b[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (k - 1 - i);
  return b;
}

std::vector<int> partition_from_beta(std::vector<long> b) {
  std::sort(b.begin(), b.end(), std::greater<long>());
  long k = static_cast<long>(b.size());
  std::vector<int> parts;
  for (long i = 0; i < k; ++i) {
    long p = b[static_cast<std::size_t>(i)] - (k - 1 - i);
    check(p >= 0, "partition_from_beta: negative part");
    if (p > 0) parts.push_back(static_cast<int>(p));
  }
  return parts;
}

using MnMemo = std::map<std::pair<std::vector<int>, std::size_t>, long long>;

// Murnaghan-Nakayama: strip a rim hook of length mu[pos] from lambda in every
// possible way (a bead move on the beta set), recurse on the rest of mu.
long long mn_rec(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t pos,
                 MnMemo& memo) {
  if (lambda.empty()) {
    check(pos == mu.size(), "mn_rec: cycle parts left over");
    return 1;
  }
  auto key = std::make_pair(lambda, pos);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  check(pos < mu.size(), "mn_rec: partition left over");
  long r = mu[pos];
  std::vector<long> b = beta_set(lambda);
  std::set<long> present(b.begin(), b.end());
  long long total = 0;
  for (long x : b) {
    long y = x - r;
    if (y < 0 || present.count(y)) continue;
    int height = 0;
    for (long z : b)
      if (z > y && z < x) ++height;
    std::vector<long> moved;
    moved.reserve(b.size());
    for (long z : b) moved.push_back(z == x ? y : z);
    long long sub = mn_rec(partition_from_beta(std::move(moved)), mu, pos + 1, memo);
    total += (height % 2) ? -sub : sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long long mn_character(const IntegerPartition& lambda, const IntegerPartition& mu) {
  check(lambda.sum() == mu.sum(), "mn_character: |lambda| != |mu|");
  MnMemo memo;
  return mn_rec(lambda.parts, mu.parts, 0, memo);
}

ClassFunction CharacterTable::row(std::size_t i) const {
  ClassFunction f;
  f.n = n;
  for (long long v : values[i]) f.values.emplace_back(static_cast<long>(v));
  return f;
}

CharacterTable character_table(int n) {
  check(n >= 1 && n <= 12, "character_table: supported range is 1..12");
  CharacterTable t;
  t.n = n;
  t.irreps = partitions_of(n);
  t.classes = cycle_types(n);
  for (const IntegerPartition& mu : t.irreps) {
    std::vector<long long> row;
    row.reserve(t.classes.size());
    for (const IntegerPartition& c : t.classes) row.push_back(mn_character(mu, c));
    t.values.push_back(std::move(row));
  }
  // Row orthonormality under the class-size weighting.
  std::vector<Int> sizes;
  for (const IntegerPartition& c : t.classes) sizes.push_back(conjugacy_class_size(c));
  Int order = factorial(n);
  for (std::size_t i = 0; i < t.values.size(); ++i)
    for (std::size_t j = i; j < t.values.size(); ++j) {
      Int s(0);
      for (std::size_t c = 0; c < sizes.size(); ++c)
        s += sizes[c] * Int(static_cast<long>(t.values[i][c])) * Int(static_cast<long>(t.values[j][c]));
      check(s == (i == j ? order : Int(0)), "character_table: orthogonality failed");
    }
  return t;
}

std::pair<Face, int> signed_action(const Permutation& g, const Face& f) {
  std::vector<Block> mapped;
  mapped.reserve(f.blocks().size());
  for (Block b : f.blocks()) mapped.push_back(g.apply(b));
  int sign = 1;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    for (std::size_t j = i + 1; j < mapped.size(); ++j)
      if (vertex_compare(mapped[i], mapped[j]) > 0) sign = -sign;
  return {orient(std::move(mapped)), sign};
}

IntMatrix action_matrix(const Complex& X, const Permutation& g, int q) {
  const std::vector<Face>& faces = X.faces_of_dimension(q);
  long m = static_cast<long>(faces.size());
  IntMatrix out(m, m);
  for (long j = 0; j < m; ++j) {
    auto [image, sign] = signed_action(g, faces[static_cast<std::size_t>(j)]);
    std::optional<long> row = X.face_index(image);
    if (!row)
      throw ActionError(g, faces[static_cast<std::size_t>(j)], image,
                        "action_matrix: image of a face is not a face");
    out.set(*row, j, Int(sign));
  }
  return out;
}

ClassFunction homology_character(const Complex& X, int q, const ShellingOrder& order) {
  std::map<int, std::vector<Face>> hf = homology_facets(X, order);
  std::unordered_set<Face, FaceHash> basis;
  auto it = hf.find(q);
  if (it != hf.end()) basis.insert(it->second.begin(), it->second.end());
  ClassFunction chi;
  chi.n = X.ground_size();
  for (const IntegerPartition& type : cycle_types(chi.n)) {
    Permutation g = class_representative(type);
    long trace = 0;
    for (const Face& sigma : basis) {
      auto [image, sign] = signed_action(g, sigma);
      if (!basis.count(image))
        throw ActionError(g, sigma, image,
                          "homology_character: the action of " + g.to_string() +
                              " maps homology facet " + sigma.to_string() +
                              " to " + image.to_string() + ", which is not a homology facet");
      if (image == sigma) trace += sign;
    }
    chi.values.emplace_back(trace);
  }
  return chi;
}

NormalizerData normalizer_data(const IntegerPartition& lambda) {
  NormalizerData d;
  d.lambda = lambda;
  const std::vector<int>& p = lambda.parts;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    d.multiplicity_form.emplace_back(p[i], static_cast<int>(j - i));
    i = j;
  }
  d.order = 1;
  for (auto [part, mult] : d.multiplicity_form)
    d.order *= pow_int(factorial(part), static_cast<unsigned long>(mult)) * factorial(mult);
  if (lambda.sum() >= 1)
    check(factorial(lambda.sum()) % d.order == 0, "normalizer_data: order does not divide n!");
  return d;
}

Face minimal_face(const IntegerPartition& lambda) {
  std::vector<Block> blocks;
  int next = 1;
  for (int part : lambda.parts) {
    std::vector<int> elems;
    for (int i = 0; i < part; ++i) elems.push_back(next++);
    blocks.push_back(Block::from_elements(elems));
  }
  return Face(std::move(blocks));
}

bool in_normalizer(const Permutation& g, const Face& base) {
  for (Block b : base.blocks()) {
    Block image = g.apply(b);
    bool found = false;
    for (Block c : base.blocks())
      if (c == image) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

int block_sign(const Permutation& g, const Face& base) {
  int k = base.num_blocks();
  std::vector<int> perm(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    Block image = g.apply(base.block(i));
    for (int j = 0; j < k; ++j)
      if (base.block(j) == image) { perm[static_cast<std::size_t>(i)] = j; break; }
    check(perm[static_cast<std::size_t>(i)] >= 0, "block_sign: g is not in the normalizer");
  }
  int sign = 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) sign = -sign;
  return sign;
}

std::vector<Face> faces_of_shape(int n, const IntegerPartition& lambda) {
  check(n >= 0 && n <= 64, "faces_of_shape: ground size out of range");
  check(lambda.sum() == n, "faces_of_shape: |lambda| != n");
  // Distinct part sizes with remaining multiplicities; assigning the smallest
  // unplaced element to a block of each available size enumerates every set
  // partition of shape lambda exactly once.
  std::vector<std::pair<int, int>> avail;  // (size, count)
  for (int part : lambda.parts) {
    if (!avail.empty() && avail.back().first == part)
      ++avail.back().second;
    else
      avail.emplace_back(part, 1);
  }
  std::vector<Face> out;
  std::vector<Block> current;
  std::uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t used) {
    if (used == full) {
      out.push_back(orient(current));
      return;
    }
    int e = std::countr_one(used) + 1;  // smallest unplaced element
    std::vector<int> pool;
    for (int x = e + 1; x <= n; ++x)
      if (!(used >> (x - 1) & 1)) pool.push_back(x);
    for (auto& [size, count] : avail) {
      if (count == 0) continue;
      --count;
      // choose size-1 companions for e from pool
      std::vector<int> chosen;
      std::function<void(std::size_t)> pick = [&](std::size_t from) {
        if (static_cast<int>(chosen.size()) == size - 1) {
          std::vector<int> elems = chosen;
          elems.push_back(e);
          Block b = Block::from_elements(elems);
          current.push_back(b);
          rec(used | b.mask);
          current.pop_back();
          return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
          chosen.push_back(pool[i]);
          pick(i + 1);
          chosen.pop_back();
        }
      };
      pick(0);
      ++count;
    }
  };
  rec(0);
  Int expected = factorial(n) / normalizer_data(lambda).order;
  check(Int(static_cast<long>(out.size())) == expected,
        "faces_of_shape: enumeration count mismatch");
  return out;
}

ClassFunction induced_sign_character(const IntegerPartition& lambda) {
  int n = lambda.sum();
  check(n >= 1 && n <= 64, "induced_sign_character: |lambda| out of range");
  std::vector<IntegerPartition> types = cycle_types(n);
  std::vector<Face> faces = faces_of_shape(n, lambda);
  ClassFunction chi;
  chi.n = n;
  for (const IntegerPartition& type : types) {
    Permutation g = class_representative(type);
    long trace = 0;
    for (const Face& sigma : faces) {
      auto [image, sign] = signed_action(g, sigma);
      if (image == sigma) trace += sign;
    }
    chi.values.emplace_back(trace);
  }
  if (n <= 8) {
    // Independent route: the induction formula, one pass over S_n collecting
    // the block-sign character on N_lambda by cycle type.
    Face base = minimal_face(lambda);
    NormalizerData nd = normalizer_data(lambda);
    std::map<IntegerPartition, long long> bucket;
    for (const Permutation& h : all_permutations(n))
      if (in_normalizer(h, base)) bucket[h.cycle_type()] += block_sign(h, base);
    Int nfact = factorial(n);
    for (std::size_t i = 0; i < types.size(); ++i) {
      long b = 0;
      auto it = bucket.find(types[i]);
      if (it != bucket.end()) b = it->second;
      Rat value = Rat(nfact * Int(b)) / Rat(nd.order * conjugacy_class_size(types[i]));
      check(value == chi.values[i], "induced_sign_character: induction routes disagree");
    }
  }
  return chi;
}

ClassFunction permutation_module_character(const IntegerPartition& lambda) {
  int n = lambda.sum();
  check(n >= 1, "permutation_module_character: empty shape");
  ClassFunction chi;
  chi.n = n;
  for (const IntegerPartition& type : cycle_types(n)) {
    // A tabloid is fixed by g iff every (labelled) row is a union of cycles
    // of g; count the assignments of cycles to rows filling each row exactly.
    std::vector<int> capacity = lambda.parts;
    const std::vector<int>& cycles = type.parts;
    std::function<long(std::size_t)> assign = [&](std::size_t i) -> long {
      if (i == cycles.size()) return 1;
      long total = 0;
      for (int& cap : capacity) {
        if (cap < cycles[i]) continue;
        cap -= cycles[i];
        total += assign(i + 1);
        cap += cycles[i];
      }
      return total;
    };
    chi.values.emplace_back(assign(0));
  }
  return chi;
}

std::map<IntegerPartition, long long> decompose(const ClassFunction& chi,
                                                bool require_nonnegative) {
  CharacterTable table = character_table(chi.n);
  std::map<IntegerPartition, long long> mult;
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    Rat m = inner_product(chi, table.row(i));
    if (!is_integer(m))
      throw std::invalid_argument("decompose: non-integer multiplicity " + to_string(m) +
                                  " of " + table.irreps[i].to_string() +
                                  "; input is not a virtual character");
    Int v = m.get_num();
    if (v == 0) continue;
    if (require_nonnegative && v < 0)
      throw std::invalid_argument("decompose: negative multiplicity " + to_string(v) + " of " +
                                  table.irreps[i].to_string());
    mult[table.irreps[i]] = v.get_si();
  }
  return mult;
}

long long kostka(const IntegerPartition& mu, const IntegerPartition& lambda) {
  if (mu.sum() != lambda.sum())
    throw std::invalid_argument("kostka: |mu| != |lambda|");
  int rows = mu.length();
  int nvals = lambda.length();
  std::vector<int> remaining = lambda.parts;
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r)
    grid[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(mu.parts[static_cast<std::size_t>(r)]), 0);
  // Row-major fill with weakly increasing rows, strictly increasing columns.
  std::function<long long(int, int)> fill = [&](int r, int c) -> long long {
    if (r == rows) return 1;
    auto [nr, nc] = c + 1 < mu.parts[static_cast<std::size_t>(r)] ? std::pair(r, c + 1)
                                                                  : std::pair(r + 1, 0);
    int lo = 1;
    if (c > 0) lo = std::max(lo, grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)]);
    if (r > 0 && c < mu.parts[static_cast<std::size_t>(r - 1)])
      lo = std::max(lo, grid[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] + 1);
    long long total = 0;
    for (int v = lo; v <= nvals; ++v) {
      if (remaining[static_cast<std::size_t>(v - 1)] == 0) continue;
      --remaining[static_cast<std::size_t>(v - 1)];
      grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
      total += fill(nr, nc);
      ++remaining[static_cast<std::size_t>(v - 1)];
    }
    return total;
  };
  return fill(0, 0);
}

InducedDecompositionReport verify_induced_decomposition(int n, int q) {
  check(2 <= n && n <= 8, "verify_induced_decomposition: n must be in [2, 8]");
  InducedDecompositionReport rep;
  rep.n = n;
  rep.q = q;
  Complex X = build_X(n);
  ShellingOrder order = singleton_shelling_order(X);
  rep.homology = homology_character(X, q, order);

  PartitionConstraints pc;
  pc.length = q + 1;
  pc.min_part = 2;
  pc.max_part = n - 1;
  rep.shapes = (q + 1 >= 1) ? partitions_with_constraints(n, pc) : std::vector<IntegerPartition>{};

  rep.induced_sum = zero_class_function(n);
  for (const IntegerPartition& lambda : rep.shapes)
    rep.induced_sum = cf_add(rep.induced_sum, induced_sign_character(lambda));

  // The degree-q homology facets must consist of every face of each admitted
  // shape, one full signed-permutation block per shape.
  std::map<int, std::vector<Face>> hf = homology_facets(X, order);
  std::map<IntegerPartition, long> by_shape;
  auto it = hf.find(q);
  if (it != hf.end())
    for (const Face& f : it->second) ++by_shape[f.shape()];
  bool blocks_ok = by_shape.size() == rep.shapes.size();
  for (const IntegerPartition& lambda : rep.shapes) {
    Int expected = factorial(n) / normalizer_data(lambda).order;
    auto found = by_shape.find(lambda);
    if (found == by_shape.end() || Int(found->second) != expected) blocks_ok = false;
  }
  rep.shapes_match_homology_facets = blocks_ok;
  check(blocks_ok, "verify_induced_decomposition: homology facets do not decompose by shape");

  rep.equal = true;
  for (std::size_t i = 0; i < rep.homology.values.size(); ++i) {
    rep.residuals.push_back(rep.homology.values[i] - rep.induced_sum.values[i]);
    if (rep.residuals.back() != 0) rep.equal = false;
  }
  check(rep.equal, "verify_induced_decomposition: character mismatch");
  return rep;
}

namespace {

// Tabloids of shape lambda as row-assignment vectors row_of[element-1].
std::vector<std::vector<int>> all_tabloids(int n, const IntegerPartition& lambda) {
  std::vector<std::vector<int>> out;
  std::vector<int> capacity = lambda.parts;
  std::vector<int> row_of(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int e) {
    if (e > n) {
      out.push_back(row_of);
      return;
    }
    for (std::size_t r = 0; r < capacity.size(); ++r) {
      if (capacity[r] == 0) continue;
      --capacity[r];
      row_of[static_cast<std::size_t>(e - 1)] = static_cast<int>(r);
      rec(e + 1);
      ++capacity[r];
    }
  };
  rec(1);
  return out;
}

std::vector<int> apply_to_tabloid(const Permutation& g, const std::vector<int>& t) {
  std::vector<int> out(t.size());
  for (std::size_t e = 0; e < t.size(); ++e)
    out[static_cast<std::size_t>(g.apply(static_cast<int>(e + 1)) - 1)] = t[e];
  return out;
}

}  // namespace

SymmetrizerSubmoduleReport symmetrizer_cyclic_submodule(const IntegerPartition& lambda) {
  int n = lambda.sum();
  check(n >= 1 && n <= 7, "symmetrizer_cyclic_submodule: |lambda| must be in [1, 7]");
  SymmetrizerSubmoduleReport rep;
  rep.lambda = lambda;

  std::vector<std::vector<int>> tabloids = all_tabloids(n, lambda);
  std::map<std::vector<int>, long> index;
  for (std::size_t i = 0; i < tabloids.size(); ++i)
    index[tabloids[i]] = static_cast<long>(i);
  long dim = static_cast<long>(tabloids.size());
  rep.tabloid_dim = dim;

  // Canonical tabloid: rows are the consecutive runs of minimal_face(lambda).
  std::vector<int> T(static_cast<std::size_t>(n));
  {
    int e = 0;
    for (std::size_t r = 0; r < lambda.parts.size(); ++r)
      for (int i = 0; i < lambda.parts[r]; ++i) T[static_cast<std::size_t>(e++)] = static_cast<int>(r);
  }

  Face base = minimal_face(lambda);
  NormalizerData nd = normalizer_data(lambda);
  std::vector<Permutation> all = all_permutations(n);

  QVec S(static_cast<std::size_t>(dim), Rat(0));
  for (const Permutation& g : all)
    if (in_normalizer(g, base))
      S[static_cast<std::size_t>(index.at(apply_to_tabloid(g, T)))] += block_sign(g, base);

  // Coset representatives of N_lambda: one permutation per image of the base
  // partition.  g.S depends on the coset only up to sign, so these generate
  // the full cyclic span.
  std::vector<Permutation> reps;
  std::set<Face> seen;
  for (const Permutation& g : all) {
    std::vector<Block> mapped;
    for (Block b : base.blocks()) mapped.push_back(g.apply(b));
    Face image = orient(std::move(mapped));
    if (seen.insert(image).second) reps.push_back(g);
  }

  SpanAccumulator acc(dim);
  QMat generators;
  for (const Permutation& g : reps) {
    QVec w(static_cast<std::size_t>(dim), Rat(0));
    for (long t = 0; t < dim; ++t)
      if (S[static_cast<std::size_t>(t)] != 0)
        w[static_cast<std::size_t>(index.at(apply_to_tabloid(g, tabloids[static_cast<std::size_t>(t)])))] +=
            S[static_cast<std::size_t>(t)];
    if (acc.insert(w)) generators.push_back(std::move(w));
  }
  rep.rank = acc.rank();
  Int expected = factorial(n) / nd.order;
  rep.expected_rank = expected.get_si();
  rep.rank_ok = rep.rank == rep.expected_rank;
  check(rep.rank_ok, "symmetrizer_cyclic_submodule: span rank " + std::to_string(rep.rank) +
                         " != n!/|N_lambda| = " + std::to_string(rep.expected_rank));

  // Character of the action on the span, via the reduced echelon basis: a
  // vector v in the span has coordinates v[pivots[i]].
  EchelonBasis eb = q_row_basis(generators);
  check(static_cast<long>(eb.rows.size()) == rep.rank, "symmetrizer submodule: echelon basis rank drop");
  rep.character.n = n;
  for (const IntegerPartition& type : cycle_types(n)) {
    Permutation g = class_representative(type);
    // inverse_at[c] = t with g.tabloid_t = tabloid_c, so (g.v)[c] = v[inverse_at[c]].
    std::vector<long> inverse_at(static_cast<std::size_t>(dim));
    for (long t = 0; t < dim; ++t)
      inverse_at[static_cast<std::size_t>(
          index.at(apply_to_tabloid(g, tabloids[static_cast<std::size_t>(t)])))] = t;
    Rat trace(0);
    for (std::size_t i = 0; i < eb.rows.size(); ++i)
      trace += eb.rows[i][static_cast<std::size_t>(inverse_at[static_cast<std::size_t>(eb.pivots[i])])];
    rep.character.values.push_back(trace);
  }
  rep.character_ok = rep.character == induced_sign_character(lambda);
  check(rep.character_ok, "symmetrizer_cyclic_submodule: span character != induced character");
  return rep;
}

namespace {

// Signed homology-facet traces for q = -1 .. dim, or nullopt if X is not
// shellable by the singleton order or the facet basis is not preserved.
std::optional<std::vector<Rat>> shelling_homology_traces(const Complex& X, const Permutation& g) {
  std::map<int, std::vector<Face>> hf;
  try {
    ShellingOrder order = singleton_shelling_order(X);
    hf = homology_facets(X, order);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  std::vector<Rat> traces(static_cast<std::size_t>(X.dimension() + 2), Rat(0));
  for (const auto& [dim, facets] : hf) {
    std::unordered_set<Face, FaceHash> basis(facets.begin(), facets.end());
    long trace = 0;
    for (const Face& sigma : facets) {
      auto [image, sign] = signed_action(g, sigma);
      if (!basis.count(image)) return std::nullopt;
      if (image == sigma) trace += sign;
    }
    traces[static_cast<std::size_t>(dim + 1)] = trace;
  }
  return traces;
}

QMat dense_from(const IntMatrix& m) {
  QMat out(static_cast<std::size_t>(m.rows()), QVec(static_cast<std::size_t>(m.cols()), Rat(0)));
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < m.rows(); ++r) {
      Int v = m.get(r, c);
      if (v != 0) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = Rat(v);
    }
  return out;
}

// Basis data for one degree of the chain-quotient homology trace: a set of
// independent boundary generators, cycle representatives spanning the
// quotient, and a solver against [boundary | representatives].
struct QuotientData {
  long nq = 0;
  long s = 0;  // boundary generators
  long r = 0;  // homology representatives
  QMat quotient_reps;
  std::optional<QSolver> solver;
};

QuotientData build_quotient_data(const Complex& X, int q) {
  QuotientData data;
  const std::vector<Face>& faces = X.faces_of_dimension(q);
  data.nq = static_cast<long>(faces.size());
  if (data.nq == 0) return data;

  // Rows spanning Z_q.
  QMat kernel_rows;
  if (q == -1) {
    kernel_rows.push_back(QVec{Rat(1)});
  } else {
    QMat nz = q_nullspace(dense_from(X.boundary_matrix(q)));
    long k = nz.empty() ? 0 : static_cast<long>(nz[0].size());
    for (long j = 0; j < k; ++j) {
      QVec row(static_cast<std::size_t>(data.nq));
      for (long r = 0; r < data.nq; ++r)
        row[static_cast<std::size_t>(r)] = nz[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      kernel_rows.push_back(std::move(row));
    }
  }

  // Independent boundary generators from the columns of d_{q+1}.
  SpanAccumulator acc(data.nq);
  QMat boundary;
  if (q < X.dimension()) {
    IntMatrix d = X.boundary_matrix(q + 1);
    for (long c = 0; c < d.cols(); ++c) {
      QVec col(static_cast<std::size_t>(data.nq), Rat(0));
      for (long r = 0; r < data.nq; ++r) {
        Int v = d.get(r, c);
        if (v != 0) col[static_cast<std::size_t>(r)] = Rat(v);
      }
      if (acc.insert(col)) boundary.push_back(std::move(col));
    }
  }
  for (QVec& z : kernel_rows)
    if (acc.insert(z)) data.quotient_reps.push_back(std::move(z));
  data.s = static_cast<long>(boundary.size());
  data.r = static_cast<long>(data.quotient_reps.size());
  if (data.r == 0) return data;

  // Columns: boundary basis then homology representatives.
  QMat a(static_cast<std::size_t>(data.nq),
         QVec(static_cast<std::size_t>(data.s + data.r), Rat(0)));
  for (long j = 0; j < data.s; ++j)
    for (long i = 0; i < data.nq; ++i)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          boundary[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  for (long j = 0; j < data.r; ++j)
    for (long i = 0; i < data.nq; ++i)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(data.s + j)] =
          data.quotient_reps[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  data.solver.emplace(std::move(a));
  return data;
}

// Trace of g on H~_q tensor Q via the prepared bases: push each
// representative through the signed action and read its representative
// coordinate back off the solve.
Rat quotient_trace(const Complex& X, int q, const QuotientData& data, const Permutation& g) {
  if (data.r == 0) return Rat(0);
  const std::vector<Face>& faces = X.faces_of_dimension(q);
  std::vector<long> target(static_cast<std::size_t>(data.nq));
  std::vector<int> sign(static_cast<std::size_t>(data.nq));
  for (long t = 0; t < data.nq; ++t) {
    auto [image, sg] = signed_action(g, faces[static_cast<std::size_t>(t)]);
    std::optional<long> idx = X.face_index(image);
    if (!idx)
      throw ActionError(g, faces[static_cast<std::size_t>(t)], image,
                        "homology trace: image of a face is not a face");
    target[static_cast<std::size_t>(t)] = *idx;
    sign[static_cast<std::size_t>(t)] = sg;
  }
  Rat trace(0);
  for (long j = 0; j < data.r; ++j) {
    QVec w(static_cast<std::size_t>(data.nq), Rat(0));
    for (long t = 0; t < data.nq; ++t) {
      const Rat& v = data.quotient_reps[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
      if (v != 0)
        w[static_cast<std::size_t>(target[static_cast<std::size_t>(t)])] +=
            sign[static_cast<std::size_t>(t)] * v;
    }
    std::optional<QVec> x = data.solver->solve(w);
    check(x.has_value(), "homology trace: image of a cycle left Z_q");
    trace += (*x)[static_cast<std::size_t>(data.s + j)];
  }
  return trace;
}

std::vector<Rat> quotient_homology_traces(const Complex& X, const Permutation& g) {
  int top = X.dimension();
  std::vector<Rat> traces(static_cast<std::size_t>(top + 2), Rat(0));
  for (int q = -1; q <= top; ++q) {
    QuotientData data = build_quotient_data(X, q);
    traces[static_cast<std::size_t>(q + 1)] = quotient_trace(X, q, data, g);
  }
  return traces;
}

}  // namespace

ClassFunction homology_character_rational(const Complex& X, int q) {
  QuotientData data = build_quotient_data(X, q);
  ClassFunction chi;
  chi.n = X.ground_size();
  for (const IntegerPartition& type : cycle_types(chi.n))
    chi.values.push_back(quotient_trace(X, q, data, class_representative(type)));
  return chi;
}

HopfReport hopf_trace_check(const Complex& X, const Permutation& g) {
  check(g.degree() == X.ground_size(), "hopf_trace_check: permutation degree != ground size");
  HopfReport rep;
  int top = X.dimension();
  rep.chain_traces.assign(static_cast<std::size_t>(top + 2), Rat(0));
  for (int q = -1; q <= top; ++q) {
    long trace = 0;
    for (const Face& f : X.faces_of_dimension(q)) {
      auto [image, sign] = signed_action(g, f);
      if (image == f) trace += sign;
    }
    rep.chain_traces[static_cast<std::size_t>(q + 1)] = trace;
  }

  std::optional<std::vector<Rat>> sh = shelling_homology_traces(X, g);
  if (sh) {
    rep.homology_traces = std::move(*sh);
    rep.rhs_route = "shelling";
  } else {
    rep.homology_traces = quotient_homology_traces(X, g);
    rep.rhs_route = "chain-quotient";
  }

  rep.lhs = 0;
  rep.rhs = 0;
  for (int q = -1; q <= top; ++q) {
    Rat sgn = ((q % 2 + 2) % 2 == 0) ? Rat(1) : Rat(-1);  // (-1)^q, q >= -1
    rep.lhs += sgn * rep.chain_traces[static_cast<std::size_t>(q + 1)];
    rep.rhs += sgn * rep.homology_traces[static_cast<std::size_t>(q + 1)];
  }
  rep.equal = rep.lhs == rep.rhs;
  check(rep.equal, "hopf_trace_check: chain trace " + to_string(rep.lhs) +
                       " != homology trace " + to_string(rep.rhs));
  return rep;
}

}  // namespace mchom
