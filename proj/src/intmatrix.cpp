#include "mchom/intmatrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mchom {

IntMatrix::IntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  cols_data_.resize(static_cast<std::size_t>(cols));
}

void IntMatrix::set(long r, long c, Int v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("IntMatrix::set index");
  auto& col = cols_data_[static_cast<std::size_t>(c)];
  auto it = std::lower_bound(
      col.begin(), col.end(), r,
      [](const std::pair<long, Int>& e, long row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    if (v == 0) col.erase(it);
    else it->second = std::move(v);
  } else if (v != 0) {
    col.insert(it, {r, std::move(v)});
  }
}

Int IntMatrix::get(long r, long c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("IntMatrix::get index");
  const auto& col = cols_data_[static_cast<std::size_t>(c)];
  auto it = std::lower_bound(
      col.begin(), col.end(), r,
      [](const std::pair<long, Int>& e, long row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

long long IntMatrix::nnz() const {
  long long t = 0;
  for (const auto& col : cols_data_) t += static_cast<long long>(col.size());
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& col : cols_data_)
    if (!col.empty()) return false;
  return true;
}

IntMatrix IntMatrix::multiply(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("IntMatrix::multiply shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (long c = 0; c < rhs.cols_; ++c) {
    std::map<long, Int> acc;
    for (const auto& [k, v] : rhs.column(c))
      for (const auto& [r, w] : column(k)) acc[r] += v * w;
    auto& col = out.cols_data_[static_cast<std::size_t>(c)];
    for (auto& [r, v] : acc)
      if (v != 0) col.emplace_back(r, std::move(v));
  }
  return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  if (static_cast<long>(v.size()) != cols_)
    throw std::invalid_argument("IntMatrix::apply shape mismatch");
  std::vector<Int> out(static_cast<std::size_t>(rows_), Int(0));
  for (long c = 0; c < cols_; ++c) {
    if (v[static_cast<std::size_t>(c)] == 0) continue;
    for (const auto& [r, w] : column(c))
      out[static_cast<std::size_t>(r)] += w * v[static_cast<std::size_t>(c)];
  }
  return out;
}

std::vector<std::vector<Int>> IntMatrix::to_dense() const {
  std::vector<std::vector<Int>> d(
      static_cast<std::size_t>(rows_),
      std::vector<Int>(static_cast<std::size_t>(cols_), Int(0)));
  for (long c = 0; c < cols_; ++c)
    for (const auto& [r, v] : column(c))
      d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
  return d;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<Int>>& d) {
  long rows = static_cast<long>(d.size());
  long cols = rows ? static_cast<long>(d[0].size()) : 0;
  IntMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if (static_cast<long>(d[static_cast<std::size_t>(r)].size()) != cols)
      throw std::invalid_argument("ragged dense matrix");
    for (long c = 0; c < cols; ++c) {
      const Int& v = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (v != 0) m.set(r, c, v);
    }
  }
  return m;
}

}  // namespace mchom
