#pragma once

#include <cstddef>
#include <vector>

#include "berezin/linalg.hpp"

namespace berezin {

// n x n grid of conformal blocks; block (i, j) maps the j-th summand into the
// i-th one, so it is row_dims[i] x col_dims[j].
class BlockMatrix {
 public:
  BlockMatrix() = default;
  explicit BlockMatrix(std::vector<std::vector<CMatrix>> grid);

  static BlockMatrix two_by_two(CMatrix a11, CMatrix a12, CMatrix a21, CMatrix a22);
  /// diag(blocks...) with zero off-diagonal blocks of the right shapes.
  static BlockMatrix diagonal(const std::vector<CMatrix>& blocks);
  /// [[0, b], [c, 0]]
  static BlockMatrix off_diagonal(const CMatrix& b, const CMatrix& c);

  std::size_t n() const noexcept { return grid_.size(); }
  const CMatrix& operator()(std::size_t i, std::size_t j) const { return grid_.at(i).at(j); }
  const std::vector<Eigen::Index>& row_dims() const noexcept { return row_dims_; }
  const std::vector<Eigen::Index>& col_dims() const noexcept { return col_dims_; }

  /// All blocks square and of one common size.
  bool uniform() const;

 private:
  std::vector<std::vector<CMatrix>> grid_;
  std::vector<Eigen::Index> row_dims_;
  std::vector<Eigen::Index> col_dims_;
};

CMatrix assemble_block(const BlockMatrix& blocks);
BlockMatrix extract_blocks(const CMatrix& a, const std::vector<Eigen::Index>& row_dims,
                           const std::vector<Eigen::Index>& col_dims);
/// [[a, 0], [0, 0]]
BlockMatrix corner_embed(const CMatrix& a);

}  // namespace berezin
