#include "bogo/fock/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bogo::fock {

SparseOperator SparseOperator::from_rows(std::vector<Row> rows, bool symmetric) {
  SparseOperator op;
  op.symmetric_ = symmetric;
  op.row_offsets_.reserve(rows.size() + 1);
  op.row_offsets_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < row.size();) {
      const auto col = row[k].first;
      if (col >= rows.size()) throw std::out_of_range("column index outside the operator");
      double v = 0.0;
      for (; k < row.size() && row[k].first == col; ++k) v += row[k].second;
      if (v != 0.0) {
        op.columns_.push_back(col);
        op.values_.push_back(v);
      }
    }
    op.row_offsets_.push_back(op.values_.size());
    Row().swap(row);
  }
  return op;
}

double SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto begin = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto end = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(col));
  return (it != end && *it == col) ? values_[static_cast<std::size_t>(it - columns_.begin())] : 0.0;
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y, int threads) const {
  const std::size_t n = dimension();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("operator/vector dimension mismatch");
  parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) s += values_[k] * x[columns_[k]];
      y[i] = s;
    }
  });
}

std::vector<double> SparseOperator::apply(std::span<const double> x, int threads) const {
  std::vector<double> y(dimension());
  apply(x, y, threads);
  return y;
}

double SparseOperator::symmetry_defect(std::uint64_t seed, int samples) const {
  const std::size_t n = dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  std::vector<double> u(n), v(n);
  for (int s = 0; s < samples; ++s) {
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    const auto Au = apply(u);
    const auto Av = apply(v);
    const double scale = norm(u) * norm(v);
    if (scale > 0.0) worst = std::max(worst, std::abs(dot(u, Av) - dot(Au, v)) / scale);
  }
  return worst;
}

double SparseOperator::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - at(columns_[k], i)));
  return worst;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      m(static_cast<Eigen::Index>(i), columns_[k]) = values_[k];
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace bogo::fock
