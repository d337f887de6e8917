#include "berezin/block_matrix.hpp"

#include <numeric>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

BlockMatrix::BlockMatrix(std::vector<std::vector<CMatrix>> grid) : grid_(std::move(grid)) {
  const std::size_t n = grid_.size();
  if (n == 0) throw Error(ErrorCode::NonConformalBlocks, "block matrix needs at least one block");
  for (const auto& row : grid_) {
    if (row.size() != n) throw Error(ErrorCode::NonConformalBlocks, "block grid is not square");
  }
  row_dims_.resize(n);
  col_dims_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_dims_[i] = grid_[i][0].rows();
    col_dims_[i] = grid_[0][i].cols();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CMatrix& b = grid_[i][j];
      if (b.rows() != row_dims_[i] || b.cols() != col_dims_[j]) {
        throw Error(ErrorCode::NonConformalBlocks,
                    "block (" + std::to_string(i) + "," + std::to_string(j) + ") is " + std::to_string(b.rows()) +
                        "x" + std::to_string(b.cols()) + ", expected " + std::to_string(row_dims_[i]) + "x" +
                        std::to_string(col_dims_[j]));
      }
      require_finite(b, "block");
    }
  }
}

BlockMatrix BlockMatrix::two_by_two(CMatrix a11, CMatrix a12, CMatrix a21, CMatrix a22) {
  return BlockMatrix({{std::move(a11), std::move(a12)}, {std::move(a21), std::move(a22)}});
}

BlockMatrix BlockMatrix::diagonal(const std::vector<CMatrix>& blocks) {
  const std::size_t n = blocks.size();
  std::vector<std::vector<CMatrix>> grid(n, std::vector<CMatrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      grid[i][j] = i == j ? blocks[i] : CMatrix::Zero(blocks[i].rows(), blocks[j].cols());
    }
  }
  return BlockMatrix(std::move(grid));
}

BlockMatrix BlockMatrix::off_diagonal(const CMatrix& b, const CMatrix& c) {
  // b : H2 -> H1 (rows = dim H1), c : H1 -> H2
  return two_by_two(CMatrix::Zero(b.rows(), c.cols()), b, c, CMatrix::Zero(c.rows(), b.cols()));
}

bool BlockMatrix::uniform() const {
  if (grid_.empty()) return false;
  const Eigen::Index d = row_dims_[0];
  for (std::size_t i = 0; i < n(); ++i) {
    if (row_dims_[i] != d || col_dims_[i] != d) return false;
  }
  return true;
}

CMatrix assemble_block(const BlockMatrix& blocks) {
  const auto& rd = blocks.row_dims();
  const auto& cd = blocks.col_dims();
  const Eigen::Index rows = std::accumulate(rd.begin(), rd.end(), Eigen::Index{0});
  const Eigen::Index cols = std::accumulate(cd.begin(), cd.end(), Eigen::Index{0});
  CMatrix out(rows, cols);
  Eigen::Index r0 = 0;
  for (std::size_t i = 0; i < blocks.n(); ++i) {
    Eigen::Index c0 = 0;
    for (std::size_t j = 0; j < blocks.n(); ++j) {
      out.block(r0, c0, rd[i], cd[j]) = blocks(i, j);
      c0 += cd[j];
    }
    r0 += rd[i];
  }
  return out;
}

BlockMatrix extract_blocks(const CMatrix& a, const std::vector<Eigen::Index>& row_dims,
                           const std::vector<Eigen::Index>& col_dims) {
  if (row_dims.size() != col_dims.size() || row_dims.empty()) {
    throw Error(ErrorCode::NonConformalBlocks, "row and column partitions differ in length");
  }
  const Eigen::Index rows = std::accumulate(row_dims.begin(), row_dims.end(), Eigen::Index{0});
  const Eigen::Index cols = std::accumulate(col_dims.begin(), col_dims.end(), Eigen::Index{0});
  if (rows != a.rows() || cols != a.cols()) {
    throw Error(ErrorCode::NonConformalBlocks, "partition does not match matrix shape");
  }
  const std::size_t n = row_dims.size();
  std::vector<std::vector<CMatrix>> grid(n, std::vector<CMatrix>(n));
  Eigen::Index r0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index c0 = 0;
    for (std::size_t j = 0; j < n; ++j) {
      grid[i][j] = a.block(r0, c0, row_dims[i], col_dims[j]);
      c0 += col_dims[j];
    }
    r0 += row_dims[i];
  }
  return BlockMatrix(std::move(grid));
}

BlockMatrix corner_embed(const CMatrix& a) {
  require_square(a, "corner_embed input");
  const Eigen::Index d = a.rows();
  return BlockMatrix::two_by_two(a, CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d));
}

}  // namespace berezin
