#pragma once

// Dense exact linear algebra over the rationals: rank, solving, nullspaces,
// and an incremental row-span accumulator.  Sizes here are moderate (a few
// hundred); the large sparse integer work lives in the Smith-form code.

#include <optional>
#include <vector>

#include "mchom/integers.hpp"

namespace mchom {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major

long q_rank(QMat a);  // destructive elimination on a copy

// Reduced row echelon with the row transform tracked, for repeated solves
// against a fixed matrix.
class QSolver {
 public:
  explicit QSolver(QMat a);

  long rank() const { return rank_; }
  long rows() const { return m_; }
  long cols() const { return n_; }

  // A particular solution of A x = b (free variables set to 0), or nullopt if
  // inconsistent.
  std::optional<QVec> solve(const QVec& b) const;

 private:
  long m_ = 0, n_ = 0, rank_ = 0;
  QMat rref_;                 // m x n
  QMat transform_;            // m x m row operations, rref_ = transform_ * A
  std::vector<long> pivot_col_;  // length rank_
};

// Basis of the right nullspace as columns (n x k).
QMat q_nullspace(const QMat& a);

// Incremental span of row vectors with exact reduction.
class SpanAccumulator {
 public:
  explicit SpanAccumulator(long dim) : dim_(dim) {}

  // Returns true if v was independent of the current span (and got added).
  bool insert(QVec v);
  bool in_span(QVec v) const;
  long rank() const { return static_cast<long>(rows_.size()); }

 private:
  long dim_;
  std::vector<QVec> rows_;        // echelonized
  std::vector<long> pivot_col_;   // pivot of each row
  void reduce(QVec& v) const;
};

// Fully reduced row-echelon basis of the row span of a: every pivot column
// has a 1 in its own row and 0 elsewhere, so a vector v in the span has
// coordinates v[pivots[i]] with respect to these rows.
struct EchelonBasis {
  QMat rows;
  std::vector<long> pivots;
};

EchelonBasis q_row_basis(QMat a);

QMat q_multiply(const QMat& a, const QMat& b);
QMat q_identity(long n);

}  // namespace mchom
