#pragma once

// Sparse integer matrix, column-major.  Used for boundary operators, chain
// maps and the group-action matrices on chain spaces.  Kept deliberately
// small: construction, entry access, multiply, and dense export for the
// transform-carrying Smith form.

#include <utility>
#include <vector>

#include "mchom/integers.hpp"

namespace mchom {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(long rows, long cols);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  // Sets entry (r, c); v == 0 clears it.
  void set(long r, long c, Int v);
  Int get(long r, long c) const;

  // Nonzero entries of a column as (row, value), sorted by row.
  const std::vector<std::pair<long, Int>>& column(long c) const {
    return cols_data_[static_cast<std::size_t>(c)];
  }

  long long nnz() const;
  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;

  IntMatrix multiply(const IntMatrix& rhs) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * vector

  std::vector<std::vector<Int>> to_dense() const;
  static IntMatrix from_dense(const std::vector<std::vector<Int>>& d);

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<long, Int>>> cols_data_;
};

}  // namespace mchom
