#include "mchom/homology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "mchom/check.hpp"
#include "mchom/shelling.hpp"

namespace mchom {

int& max_threads() {
  static int t = 1;
  return t;
}

namespace {

// ---------------------------------------------------------------------------
// Dense Smith normal form (invariant factors only).  Classic algorithm with
// minimal-|entry| pivoting; entries are arbitrary-precision.
std::vector<Int> dense_snf(std::vector<std::vector<Int>> a) {
  long m = static_cast<long>(a.size());
  long n = m ? static_cast<long>(a[0].size()) : 0;
  std::vector<Int> factors;
  long t = 0;
  auto at = [&](long r, long c) -> Int& {
    return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  };
  while (t < m && t < n) {
    // find a pivot of minimal magnitude in the active block
    long pr = -1, pc = -1;
    Int best = 0;
    for (long r = t; r < m; ++r)
      for (long c = t; c < n; ++c) {
        if (at(r, c) == 0) continue;
        Int mag = abs(at(r, c));
        if (pr < 0 || mag < best) {
          best = mag;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;  // active block zero
    std::swap(a[static_cast<std::size_t>(pr)], a[static_cast<std::size_t>(t)]);
    for (long r = 0; r < m; ++r)
      std::swap(at(r, pc), at(r, t));
    bool done = false;
    while (!done) {
      // clear column t with row operations
      bool reselect = false;
      for (long r = t + 1; r < m && !reselect; ++r) {
        if (at(r, t) == 0) continue;
        Int q = at(r, t) / at(t, t);  // truncated division
        if (q != 0)
          for (long c = t; c < n; ++c) at(r, c) -= q * at(t, c);
        if (at(r, t) != 0) {
          // remainder smaller than pivot: promote it
          std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(t)]);
          reselect = true;
        }
      }
      if (reselect) continue;
      // clear row t with column operations
      for (long c = t + 1; c < n && !reselect; ++c) {
        if (at(t, c) == 0) continue;
        Int q = at(t, c) / at(t, t);
        if (q != 0)
          for (long r = t; r < m; ++r) at(r, c) -= q * at(r, t);
        if (at(t, c) != 0) {
          for (long r = 0; r < m; ++r) std::swap(at(r, c), at(r, t));
          reselect = true;
        }
      }
      if (reselect) continue;
      // divisibility: pivot must divide every remaining entry
      bool fixed = true;
      for (long r = t + 1; r < m && fixed; ++r)
        for (long c = t + 1; c < n && fixed; ++c)
          if (at(r, c) % at(t, t) != 0) {
            // add row r to row t and restart the clearing loop
            for (long cc = t; cc < n; ++cc) at(t, cc) += at(r, cc);
            fixed = false;
          }
      done = fixed;
    }
    Int piv = abs(at(t, t));
    factors.push_back(piv);
    ++t;
  }
  // Normalize: the pivoting scheme already yields a divisibility chain, but
  // assert it rather than trust it.
  for (std::size_t i = 1; i < factors.size(); ++i)
    check(factors[i] % factors[i - 1] == 0, "SNF divisibility chain broken");
  return factors;
}

// ---------------------------------------------------------------------------
// Sparse unit-pivot elimination phase.
struct SparseElim {
  long m, n;
  std::vector<std::map<long, Int>> rows;   // row -> (col -> value)
  std::vector<std::set<long>> col_rows;    // col -> rows with a nonzero
  std::vector<char> row_active, col_active;
  long active_rows, active_cols;
  long long nnz = 0;
  // lazy heap of unit-entry candidates: (markowitz cost, row, col)
  using Cand = std::tuple<long long, long, long>;
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
  long units_extracted = 0;

  explicit SparseElim(const IntMatrix& a)
      : m(a.rows()), n(a.cols()),
        rows(static_cast<std::size_t>(m)),
        col_rows(static_cast<std::size_t>(n)),
        row_active(static_cast<std::size_t>(m), 1),
        col_active(static_cast<std::size_t>(n), 1),
        active_rows(m), active_cols(n) {
    for (long c = 0; c < n; ++c)
      for (const auto& [r, v] : a.column(c)) {
        rows[static_cast<std::size_t>(r)].emplace(c, v);
        col_rows[static_cast<std::size_t>(c)].insert(r);
        ++nnz;
        if (v == 1 || v == -1) push_candidate(r, c);
      }
  }

  long long cost_of(long r, long c) const {
    long long rn = static_cast<long long>(rows[static_cast<std::size_t>(r)].size());
    long long cn = static_cast<long long>(col_rows[static_cast<std::size_t>(c)].size());
    return (rn - 1) * (cn - 1);
  }

  void push_candidate(long r, long c) { heap.emplace(cost_of(r, c), r, c); }

  void set_entry(long r, long c, const Int& v) {
    auto& row = rows[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    if (v == 0) {
      if (it != row.end()) {
        row.erase(it);
        col_rows[static_cast<std::size_t>(c)].erase(r);
        --nnz;
      }
      return;
    }
    if (it == row.end()) {
      row.emplace(c, v);
      col_rows[static_cast<std::size_t>(c)].insert(r);
      ++nnz;
    } else {
      it->second = v;
    }
    if (v == 1 || v == -1) push_candidate(r, c);
  }

  // Eliminate on a +-1 pivot at (pr, pc): clear the column by row ops; the
  // row is then removed wholesale (equivalent column ops touch no other row
  // because column pc is zero elsewhere).
  void eliminate(long pr, long pc) {
    Int pv = rows[static_cast<std::size_t>(pr)].at(pc);
    std::vector<long> others(col_rows[static_cast<std::size_t>(pc)].begin(),
                             col_rows[static_cast<std::size_t>(pc)].end());
    for (long r : others) {
      if (r == pr) continue;
      Int factor = rows[static_cast<std::size_t>(r)].at(pc) * pv;  // value / pv
      // row_r -= factor * row_pr
      for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)]) {
        auto& row = rows[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        Int nv = (it == row.end() ? Int(0) : it->second) - factor * v;
        if (it == row.end()) {
          if (nv != 0) {
            row.emplace(c, nv);
            col_rows[static_cast<std::size_t>(c)].insert(r);
            ++nnz;
            if (nv == 1 || nv == -1) push_candidate(r, c);
          }
        } else {
          if (nv == 0) {
            row.erase(it);
            col_rows[static_cast<std::size_t>(c)].erase(r);
            --nnz;
          } else {
            it->second = nv;
            if (nv == 1 || nv == -1) push_candidate(r, c);
          }
        }
      }
    }
    // retire pivot row and column
    for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)]) {
      col_rows[static_cast<std::size_t>(c)].erase(pr);
      --nnz;
    }
    rows[static_cast<std::size_t>(pr)].clear();
    row_active[static_cast<std::size_t>(pr)] = 0;
    col_active[static_cast<std::size_t>(pc)] = 0;
    --active_rows;
    --active_cols;
    ++units_extracted;
  }

  bool density_exceeded() const {
    if (active_rows == 0 || active_cols == 0) return false;
    return nnz * 5 > static_cast<long long>(active_rows) * active_cols;
  }

  // Run until no unit pivots remain or fill-in forces the dense path.
  void run() {
    while (!heap.empty()) {
      if (density_exceeded()) return;
      auto [cost, r, c] = heap.top();
      heap.pop();
      if (!row_active[static_cast<std::size_t>(r)] ||
          !col_active[static_cast<std::size_t>(c)])
        continue;
      auto it = rows[static_cast<std::size_t>(r)].find(c);
      if (it == rows[static_cast<std::size_t>(r)].end()) continue;
      if (it->second != 1 && it->second != -1) continue;
      // stale cost entries are acceptable: still a unit pivot
      eliminate(r, c);
    }
  }

  std::vector<std::vector<Int>> remaining_dense() const {
    std::vector<long> rmap, cmap;
    for (long r = 0; r < m; ++r)
      if (row_active[static_cast<std::size_t>(r)]) rmap.push_back(r);
    for (long c = 0; c < n; ++c)
      if (col_active[static_cast<std::size_t>(c)]) cmap.push_back(c);
    std::vector<std::vector<Int>> d(
        rmap.size(), std::vector<Int>(cmap.size(), Int(0)));
    std::map<long, std::size_t> cidx;
    for (std::size_t j = 0; j < cmap.size(); ++j) cidx[cmap[j]] = j;
    for (std::size_t i = 0; i < rmap.size(); ++i)
      for (const auto& [c, v] : rows[static_cast<std::size_t>(rmap[i])])
        d[i][cidx[c]] = v;
    return d;
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SparseElim elim(m);
  elim.run();
  std::vector<Int> factors(static_cast<std::size_t>(elim.units_extracted), Int(1));
  std::vector<Int> rest = dense_snf(elim.remaining_dense());
  factors.insert(factors.end(), rest.begin(), rest.end());
  for (std::size_t i = 1; i < factors.size(); ++i)
    check(factors[i] % factors[i - 1] == 0,
          "smith_normal_form: divisibility chain broken");
  return SnfResult{std::move(factors)};
}

// ---------------------------------------------------------------------------
// Dense SNF with transforms.

namespace {

struct TransformSnf {
  long m, n;
  std::vector<std::vector<Int>> a, u, u_inv, v;

  Int& at(long r, long c) { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

  void row_swap(long i, long j) {
    if (i == j) return;
    std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    std::swap(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
    for (long k = 0; k < m; ++k)
      std::swap(u_inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)],
                u_inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  }
  // row_i -= q * row_j
  void row_sub(long i, long j, const Int& q) {
    for (long c = 0; c < n; ++c)
      at(i, c) -= q * a[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    for (long c = 0; c < m; ++c)
      u[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -=
          q * u[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    for (long r = 0; r < m; ++r)
      u_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] +=
          q * u_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  }
  void row_negate(long i) {
    for (long c = 0; c < n; ++c) at(i, c) = -at(i, c);
    for (long c = 0; c < m; ++c)
      u[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
          -u[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    for (long r = 0; r < m; ++r)
      u_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
          -u_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  }
  void col_swap(long i, long j) {
    if (i == j) return;
    for (long r = 0; r < m; ++r)
      std::swap(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)],
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
    for (long r = 0; r < n; ++r)
      std::swap(v[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)],
                v[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
  }
  // col_i -= q * col_j
  void col_sub(long i, long j, const Int& q) {
    for (long r = 0; r < m; ++r)
      at(r, i) -= q * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    for (long r = 0; r < n; ++r)
      v[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] -=
          q * v[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
  }
  void col_negate(long i) {
    for (long r = 0; r < m; ++r) at(r, i) = -at(r, i);
    for (long r = 0; r < n; ++r)
      v[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
          -v[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  }
};

}  // namespace

SmithDecomposition smith_with_transforms(std::vector<std::vector<Int>> a) {
  TransformSnf w;
  w.m = static_cast<long>(a.size());
  w.n = w.m ? static_cast<long>(a[0].size()) : 0;
  for (const auto& row : a)
    if (static_cast<long>(row.size()) != w.n)
      throw std::invalid_argument("ragged matrix");
  w.a = std::move(a);
  auto ident = [](long k) {
    std::vector<std::vector<Int>> e(
        static_cast<std::size_t>(k), std::vector<Int>(static_cast<std::size_t>(k), Int(0)));
    for (long i = 0; i < k; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return e;
  };
  w.u = ident(w.m);
  w.u_inv = ident(w.m);
  w.v = ident(w.n);

  long t = 0;
  while (t < w.m && t < w.n) {
    long pr = -1, pc = -1;
    Int best = 0;
    for (long r = t; r < w.m; ++r)
      for (long c = t; c < w.n; ++c) {
        if (w.at(r, c) == 0) continue;
        Int mag = abs(w.at(r, c));
        if (pr < 0 || mag < best) {
          best = mag;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;
    w.row_swap(pr, t);
    w.col_swap(pc, t);
    bool done = false;
    while (!done) {
      bool reselect = false;
      for (long r = t + 1; r < w.m && !reselect; ++r) {
        if (w.at(r, t) == 0) continue;
        Int q = w.at(r, t) / w.at(t, t);
        if (q != 0) w.row_sub(r, t, q);
        if (w.at(r, t) != 0) {
          w.row_swap(r, t);
          reselect = true;
        }
      }
      if (reselect) continue;
      for (long c = t + 1; c < w.n && !reselect; ++c) {
        if (w.at(t, c) == 0) continue;
        Int q = w.at(t, c) / w.at(t, t);
        if (q != 0) w.col_sub(c, t, q);
        if (w.at(t, c) != 0) {
          w.col_swap(c, t);
          reselect = true;
        }
      }
      if (reselect) continue;
      bool fixed = true;
      for (long r = t + 1; r < w.m && fixed; ++r)
        for (long c = t + 1; c < w.n && fixed; ++c)
          if (w.at(r, c) % w.at(t, t) != 0) {
            w.row_sub(t, r, Int(-1));  // row_t += row_r
            fixed = false;
          }
      done = fixed;
    }
    if (w.at(t, t) < 0) w.row_negate(t);
    ++t;
  }
  SmithDecomposition out;
  out.u = std::move(w.u);
  out.u_inv = std::move(w.u_inv);
  out.v = std::move(w.v);
  out.d = std::move(w.a);
  for (long i = 0; i < std::min(w.m, w.n); ++i) {
    const Int& di = out.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (di != 0) out.invariant_factors.push_back(di);
  }
  for (std::size_t i = 1; i < out.invariant_factors.size(); ++i)
    check(out.invariant_factors[i] % out.invariant_factors[i - 1] == 0,
          "smith_with_transforms: divisibility chain broken");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

SnfResult snf_of_boundary(const Complex& x, int q) {
  if (q > x.dimension()) return SnfResult{};
  return smith_normal_form(x.boundary_matrix(q));
}

}  // namespace

HomologyGroup reduced_homology_at(const Complex& x, int q) {
  if (q < 0) throw std::invalid_argument("reduced_homology_at: q must be >= 0");
  HomologyGroup g;
  g.q = q;
  long cq = x.face_count(q);
  if (cq == 0) return g;
  SnfResult dq = snf_of_boundary(x, q);
  SnfResult dq1 = snf_of_boundary(x, q + 1);
  g.free_rank = cq - dq.rank() - dq1.rank();
  check(g.free_rank >= 0, "negative homology rank");
  for (const Int& f : dq1.invariant_factors)
    if (f > 1) g.torsion.push_back(f);
  return g;
}

std::map<int, HomologyGroup> reduced_homology(const Complex& x) {
  std::map<int, HomologyGroup> out;
  int dim = x.dimension();
  if (dim < 0) return out;
  // Share the per-degree SNFs between adjacent degrees.
  std::vector<SnfResult> snf(static_cast<std::size_t>(dim) + 2);
  if (max_threads() > 1) {
    std::vector<std::future<SnfResult>> futs;
    for (int q = 0; q <= dim + 1; ++q)
      futs.push_back(std::async(std::launch::async,
                                [&x, q] { return snf_of_boundary(x, q); }));
    for (int q = 0; q <= dim + 1; ++q)
      snf[static_cast<std::size_t>(q)] = futs[static_cast<std::size_t>(q)].get();
  } else {
    for (int q = 0; q <= dim + 1; ++q)
      snf[static_cast<std::size_t>(q)] = snf_of_boundary(x, q);
  }
  for (int q = 0; q <= dim; ++q) {
    HomologyGroup g;
    g.q = q;
    g.free_rank = x.face_count(q) - snf[static_cast<std::size_t>(q)].rank() -
                  snf[static_cast<std::size_t>(q) + 1].rank();
    check(g.free_rank >= 0, "negative homology rank");
    for (const Int& f : snf[static_cast<std::size_t>(q) + 1].invariant_factors)
      if (f > 1) g.torsion.push_back(f);
    out.emplace(q, std::move(g));
  }
  return out;
}

CrossCheckReport homology_cross_check(const Complex& x,
                                      const ShellingOrder& order) {
  auto shelling_ranks = homology_ranks_from_shelling(x, order);  // throws if not
  auto groups = reduced_homology(x);
  CrossCheckReport report;
  int dim = x.dimension();
  for (int q = 0; q <= dim; ++q) {
    CrossCheckEntry e;
    e.q = q;
    auto git = groups.find(q);
    e.snf_rank = git == groups.end() ? 0 : git->second.free_rank;
    if (git != groups.end()) e.torsion = git->second.torsion;
    auto sit = shelling_ranks.find(q);
    e.shelling_rank = sit == shelling_ranks.end() ? 0 : sit->second;
    e.ok = e.snf_rank == e.shelling_rank && e.torsion.empty();
    report.ok = report.ok && e.ok;
    report.entries.push_back(std::move(e));
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<Int> HomologyLattice::free_coordinates(
    const std::vector<Int>& cycle) const {
  QVec b;
  b.reserve(cycle.size());
  for (const Int& v : cycle) b.emplace_back(v);
  auto y = kernel_solver->solve(b);
  check(y.has_value(), "free_coordinates: vector is not a cycle");
  long r = static_cast<long>(u_y.size());
  std::vector<Int> w(static_cast<std::size_t>(r), Int(0));
  for (long i = 0; i < r; ++i) {
    Rat acc = 0;
    for (long j = 0; j < r; ++j) {
      const Rat yj = (*y)[static_cast<std::size_t>(j)];
      if (yj != 0)
        acc += Rat(u_y[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * yj;
    }
    check(is_integer(acc), "free_coordinates: non-integral quotient coordinate");
    w[static_cast<std::size_t>(i)] = acc.get_num();
  }
  return std::vector<Int>(w.begin() + free_offset, w.end());
}

HomologyLattice homology_lattice(const Complex& x, int q) {
  if (q < 0) throw std::invalid_argument("homology_lattice: q must be >= 0");
  HomologyLattice lat;
  long cq = x.face_count(q);
  lat.chain_dim = cq;
  if (cq == 0) return lat;

  // Kernel of d_q from the column transform of its Smith form.
  IntMatrix dq = x.boundary_matrix(q);
  SmithDecomposition s = smith_with_transforms(dq.to_dense());
  long rank_dq = s.rank();
  long ker_dim = cq - rank_dq;
  for (long j = 0; j < ker_dim; ++j) {
    std::vector<Int> col(static_cast<std::size_t>(cq));
    for (long i = 0; i < cq; ++i)
      col[static_cast<std::size_t>(i)] =
          s.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(rank_dq + j)];
    lat.kernel_basis.push_back(std::move(col));
  }
  // A * V columns beyond the rank are zero columns of the diagonal form.
  // Sanity: verify each kernel column is killed by d_q.
  for (const auto& col : lat.kernel_basis) {
    std::vector<Int> img = dq.apply(col);
    for (const Int& v : img) check(v == 0, "kernel basis column not a cycle");
  }

  // Boundaries expressed in kernel coordinates: solve K y = d_{q+1} column.
  QMat kmat(static_cast<std::size_t>(cq), QVec(static_cast<std::size_t>(ker_dim), Rat(0)));
  for (long j = 0; j < ker_dim; ++j)
    for (long i = 0; i < cq; ++i)
      kmat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rat(lat.kernel_basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  auto solver = std::make_shared<QSolver>(kmat);
  lat.kernel_solver = solver;

  long cq1 = q + 1 > x.dimension() ? 0 : x.face_count(q + 1);
  std::vector<std::vector<Int>> y(
      static_cast<std::size_t>(ker_dim),
      std::vector<Int>(static_cast<std::size_t>(cq1), Int(0)));
  if (cq1 > 0) {
    IntMatrix dq1 = x.boundary_matrix(q + 1);
    for (long c = 0; c < cq1; ++c) {
      QVec rhs(static_cast<std::size_t>(cq), Rat(0));
      for (const auto& [r, v] : dq1.column(c))
        rhs[static_cast<std::size_t>(r)] = Rat(v);
      auto sol = solver->solve(rhs);
      check(sol.has_value(), "boundary is not a cycle?");
      for (long j = 0; j < ker_dim; ++j) {
        const Rat& yv = (*sol)[static_cast<std::size_t>(j)];
        check(is_integer(yv), "boundary has non-integral kernel coordinates");
        y[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = yv.get_num();
      }
    }
  }

  SmithDecomposition sy = smith_with_transforms(y);
  long k = sy.rank();
  // In coordinates w = U_y * (kernel coords), the image of the relation
  // matrix is the span of d_i e_i for i < k, so entries i < k of w are
  // killed or torsion in the quotient and entries i >= k are free.
  lat.u_y = sy.u;
  lat.free_offset = k;
  for (long j = k; j < ker_dim; ++j) {
    std::vector<Int> rep(static_cast<std::size_t>(cq), Int(0));
    // U_y^{-1} e_j gives kernel coordinates of the j-th quotient generator.
    std::vector<Int> coords(static_cast<std::size_t>(ker_dim), Int(0));
    for (long i = 0; i < ker_dim; ++i)
      coords[static_cast<std::size_t>(i)] =
          sy.u_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (long i = 0; i < cq; ++i) {
      Int acc = 0;
      for (long t2 = 0; t2 < ker_dim; ++t2)
        acc += lat.kernel_basis[static_cast<std::size_t>(t2)][static_cast<std::size_t>(i)] *
               coords[static_cast<std::size_t>(t2)];
      rep[static_cast<std::size_t>(i)] = acc;
    }
    lat.free_basis.push_back(std::move(rep));
  }
  return lat;
}

}  // namespace mchom
