#include "mchom/ratmat.hpp"

#include <stdexcept>

#include "mchom/check.hpp"

namespace mchom {

long q_rank(QMat a) {
  long m = static_cast<long>(a.size());
  long n = m ? static_cast<long>(a[0].size()) : 0;
  long rank = 0;
  for (long col = 0; col < n && rank < m; ++col) {
    long pivot = -1;
    for (long r = rank; r < m; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
    const QVec& prow = a[static_cast<std::size_t>(rank)];
    Rat pval = prow[static_cast<std::size_t>(col)];
    for (long r = rank + 1; r < m; ++r) {
      QVec& row = a[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)] == 0) continue;
      Rat factor = row[static_cast<std::size_t>(col)] / pval;
      for (long c = col; c < n; ++c)
        row[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
    }
    ++rank;
  }
  return rank;
}

QSolver::QSolver(QMat a) {
  m_ = static_cast<long>(a.size());
  n_ = m_ ? static_cast<long>(a[0].size()) : 0;
  for (const auto& row : a)
    if (static_cast<long>(row.size()) != n_)
      throw std::invalid_argument("ragged matrix");
  transform_.assign(static_cast<std::size_t>(m_),
                    QVec(static_cast<std::size_t>(m_), Rat(0)));
  for (long i = 0; i < m_; ++i)
    transform_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  rref_ = std::move(a);
  long row = 0;
  for (long col = 0; col < n_ && row < m_; ++col) {
    long pivot = -1;
    for (long r = row; r < m_; ++r)
      if (rref_[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rref_[static_cast<std::size_t>(pivot)], rref_[static_cast<std::size_t>(row)]);
    std::swap(transform_[static_cast<std::size_t>(pivot)],
              transform_[static_cast<std::size_t>(row)]);
    Rat pval = rref_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (long c = 0; c < n_; ++c)
      rref_[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] /= pval;
    for (long c = 0; c < m_; ++c)
      transform_[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] /= pval;
    for (long r = 0; r < m_; ++r) {
      if (r == row) continue;
      Rat factor = rref_[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (long c = 0; c < n_; ++c)
        rref_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * rref_[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
      for (long c = 0; c < m_; ++c)
        transform_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * transform_[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    }
    pivot_col_.push_back(col);
    ++row;
  }
  rank_ = row;
}

std::optional<QVec> QSolver::solve(const QVec& b) const {
  if (static_cast<long>(b.size()) != m_)
    throw std::invalid_argument("QSolver::solve: bad RHS length");
  QVec c(static_cast<std::size_t>(m_), Rat(0));
  for (long r = 0; r < m_; ++r) {
    Rat acc = 0;
    for (long k = 0; k < m_; ++k) {
      const Rat& t = transform_[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
      if (t != 0 && b[static_cast<std::size_t>(k)] != 0)
        acc += t * b[static_cast<std::size_t>(k)];
    }
    c[static_cast<std::size_t>(r)] = acc;
  }
  for (long r = rank_; r < m_; ++r)
    if (c[static_cast<std::size_t>(r)] != 0) return std::nullopt;
  QVec x(static_cast<std::size_t>(n_), Rat(0));
  for (long j = 0; j < rank_; ++j)
    x[static_cast<std::size_t>(pivot_col_[static_cast<std::size_t>(j)])] =
        c[static_cast<std::size_t>(j)];
  return x;
}

QMat q_nullspace(const QMat& a) {
  QMat work = a;
  long m = static_cast<long>(work.size());
  long n = m ? static_cast<long>(work[0].size()) : 0;
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  long row = 0;
  std::vector<long> pivots;
  for (long col = 0; col < n && row < m; ++col) {
    long pivot = -1;
    for (long r = row; r < m; ++r)
      if (work[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(work[static_cast<std::size_t>(pivot)], work[static_cast<std::size_t>(row)]);
    Rat pval = work[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (long c = col; c < n; ++c)
      work[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] /= pval;
    for (long r = 0; r < m; ++r) {
      if (r == row) continue;
      Rat factor = work[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (long c = col; c < n; ++c)
        work[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * work[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    }
    pivots.push_back(col);
    is_pivot[static_cast<std::size_t>(col)] = 1;
    ++row;
  }
  std::vector<QVec> cols;
  for (long free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    QVec v(static_cast<std::size_t>(n), Rat(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t j = 0; j < pivots.size(); ++j)
      v[static_cast<std::size_t>(pivots[j])] =
          -work[j][static_cast<std::size_t>(free)];
    cols.push_back(std::move(v));
  }
  QMat out(static_cast<std::size_t>(n), QVec(cols.size(), Rat(0)));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (long i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)][k] = cols[k][static_cast<std::size_t>(i)];
  return out;
}

void SpanAccumulator::reduce(QVec& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    long p = pivot_col_[i];
    if (v[static_cast<std::size_t>(p)] == 0) continue;
    Rat factor = v[static_cast<std::size_t>(p)];
    for (long c = 0; c < dim_; ++c)
      v[static_cast<std::size_t>(c)] -= factor * rows_[i][static_cast<std::size_t>(c)];
  }
}

bool SpanAccumulator::insert(QVec v) {
  if (static_cast<long>(v.size()) != dim_)
    throw std::invalid_argument("SpanAccumulator: bad vector length");
  reduce(v);
  long p = -1;
  for (long c = 0; c < dim_; ++c)
    if (v[static_cast<std::size_t>(c)] != 0) { p = c; break; }
  if (p < 0) return false;
  Rat pval = v[static_cast<std::size_t>(p)];
  for (long c = 0; c < dim_; ++c) v[static_cast<std::size_t>(c)] /= pval;
  rows_.push_back(std::move(v));
  pivot_col_.push_back(p);
  return true;
}

bool SpanAccumulator::in_span(QVec v) const {
  reduce(v);
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

EchelonBasis q_row_basis(QMat a) {
  long m = static_cast<long>(a.size());
  long n = m ? static_cast<long>(a[0].size()) : 0;
  EchelonBasis out;
  long r = 0;
  for (long c = 0; c < n && r < m; ++c) {
    long piv = -1;
    for (long i = r; i < m; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(r)]);
    Rat inv = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (long j = c; j < n; ++j) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] /= inv;
    for (long i = 0; i < m; ++i) {
      if (i == r) continue;
      Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (long j = c; j < n; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows.assign(a.begin(), a.begin() + r);
  return out;
}

QMat q_multiply(const QMat& a, const QMat& b) {
  long m = static_cast<long>(a.size());
  long k = m ? static_cast<long>(a[0].size()) : 0;
  long kb = static_cast<long>(b.size());
  long n = kb ? static_cast<long>(b[0].size()) : 0;
  check(k == kb, "q_multiply shape mismatch");
  QMat out(static_cast<std::size_t>(m), QVec(static_cast<std::size_t>(n), Rat(0)));
  for (long i = 0; i < m; ++i)
    for (long t = 0; t < k; ++t) {
      const Rat& av = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      if (av == 0) continue;
      for (long j = 0; j < n; ++j) {
        const Rat& bv = b[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
        if (bv != 0)
          out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += av * bv;
      }
    }
  return out;
}

QMat q_identity(long n) {
  QMat out(static_cast<std::size_t>(n), QVec(static_cast<std::size_t>(n), Rat(0)));
  for (long i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return out;
}

}  // namespace mchom
