#include "covshift/matrix.hpp"

#include "covshift/error.hpp"

namespace covshift {

Matrix::Matrix(std::size_t cols, std::vector<double> data)
    : rows_(cols == 0 ? 0 : data.size() / cols), cols_(cols), data_(std::move(data)) {
  if (cols == 0 || data_.size() % cols != 0) {
    throw InvalidInput("matrix data size is not a multiple of the column count");
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidInput("matrix needs at least one column");
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw InvalidInput("rows differ in dimensionality");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(cols, std::move(data));
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> positions) const {
  Matrix out(positions.size(), cols_);
  for (std::size_t r = 0; r < positions.size(); ++r) {
    if (positions[r] >= rows_) throw InvalidInput("row index out of range");
    const auto src = row(positions[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace covshift
