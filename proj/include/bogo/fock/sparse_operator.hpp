#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bogo::fock {

/// Square real matrix in compressed-row form.
class SparseOperator {
 public:
  using Row = std::vector<std::pair<std::uint32_t, double>>;

  SparseOperator() = default;
  /// Rows may contain duplicate columns; they are summed and zero entries dropped.
  static SparseOperator from_rows(std::vector<Row> rows, bool symmetric);

  std::size_t dimension() const { return row_offsets_.empty() ? 0 : row_offsets_.size() - 1; }
  std::size_t nonzeros() const { return values_.size(); }
  bool symmetric() const { return symmetric_; }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::uint32_t> columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  double at(std::size_t row, std::size_t col) const;

  /// y = A x. Rows are split into contiguous blocks across `threads`; every row
  /// is reduced in the same order regardless of the thread count.
  void apply(std::span<const double> x, std::span<double> y, int threads = 1) const;
  std::vector<double> apply(std::span<const double> x, int threads = 1) const;

  /// max |<u, A v> - <A u, v>| / (|u||v|) over random vector pairs.
  double symmetry_defect(std::uint64_t seed, int samples = 4) const;
  /// max |A_ij - A_ji| over stored entries.
  double max_asymmetry() const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> columns_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Runs body(begin, end) over [0, n) split in contiguous blocks.
template <typename Body>
void parallel_blocks(std::size_t n, int threads, Body body);

}  // namespace bogo::fock

#include "bogo/fock/parallel.ipp"
