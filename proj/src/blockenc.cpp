#include "belt/blockenc.hpp"

#include <algorithm>
#include <cmath>

namespace belt {

Mat raw_block(const BlockEncoding& be) {
  const Index ds = dim_of(be.sys_qubits);
  return be.unitary.topLeftCorner(ds, ds);
}

Mat extract_block(const BlockEncoding& be) { return be.alpha * raw_block(be); }

double verify(const BlockEncoding& be, const Mat& target) {
  const Index ds = dim_of(be.sys_qubits);
  if (target.rows() != ds || target.cols() != ds)
    throw std::invalid_argument("verify: dimension mismatch");
  return operator_norm(target - extract_block(be));
}

BlockEncoding exact_dilation(const Mat& a, double alpha) {
  if (a.rows() != a.cols()) throw std::invalid_argument("exact_dilation: square input required");
  if (!(alpha > 0.0)) throw std::invalid_argument("exact_dilation: alpha must be positive");
  if (operator_norm(a) > alpha * (1.0 + 1e-12) + 1e-12)
    throw std::domain_error("exact_dilation: alpha below the operator norm of the input");
  const Index d = a.rows();
  const int sys = qubits_of(d);
  const Mat at = a / alpha;
  const Mat id = Mat::Identity(d, d);
  Mat u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = at;
  u.topRightCorner(d, d) = matrix_sqrt_psd(id - at * at.adjoint());
  u.bottomLeftCorner(d, d) = matrix_sqrt_psd(id - at.adjoint() * at);
  u.bottomRightCorner(d, d) = -at.adjoint();
  BlockEncoding be{std::move(u), alpha, 1, 0.0, sys};
  be.eps = verify(be, a);
  return be;
}

BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<Mat>& unitaries) {
  const size_t l = coeffs.size();
  if (l == 0 || unitaries.size() != l) throw std::invalid_argument("lcu: list size mismatch");
  const Index d = unitaries[0].rows();
  double lambda = 0.0;
  for (size_t i = 0; i < l; ++i) {
    if (coeffs[i] == 0.0) throw std::invalid_argument("lcu: zero coefficient");
    if (unitaries[i].rows() != d || unitaries[i].cols() != d)
      throw std::invalid_argument("lcu: dimension mismatch");
    if (!is_unitary(unitaries[i])) throw std::invalid_argument("lcu: non-unitary term");
    lambda += std::abs(coeffs[i]);
  }
  const int sys = qubits_of(d);
  int m = 0;
  while ((size_t(1) << m) < l) ++m;
  const Index da = Index(1) << m;

  Mat target = Mat::Zero(d, d);
  for (size_t i = 0; i < l; ++i) target += coeffs[i] * unitaries[i];

  Mat u;
  if (m == 0) {
    u = (coeffs[0] < 0.0 ? -1.0 : 1.0) * unitaries[0];
  } else {
    Mat prep_col(da, 1);
    for (Index i = 0; i < da; ++i)
      prep_col(i, 0) = i < Index(l) ? std::sqrt(std::abs(coeffs[i]) / lambda) : 0.0;
    const Mat g = unitary_completion(prep_col);
    Mat select = Mat::Zero(da * d, da * d);
    for (Index i = 0; i < da; ++i) {
      if (i < Index(l))
        select.block(i * d, i * d, d, d) = (coeffs[i] < 0.0 ? -1.0 : 1.0) * unitaries[i];
      else
        select.block(i * d, i * d, d, d) = Mat::Identity(d, d);
    }
    const Mat id = Mat::Identity(d, d);
    u = kron(g.adjoint(), id) * select * kron(g, id);
  }
  BlockEncoding be{std::move(u), lambda, m, 0.0, sys};
  be.eps = verify(be, target);
  return be;
}

BlockEncoding sparse_block_encoding(const Mat& a, int s) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sparse_block_encoding: square input required");
  if (s < 1) throw std::invalid_argument("sparse_block_encoding: s must be positive");
  const Index d = a.rows();
  const int w = qubits_of(d);
  if (Index(s) > d) throw std::invalid_argument("sparse_block_encoding: s exceeds dimension");
  if (a.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("sparse_block_encoding: entry magnitude exceeds 1");

  // nonzero positions per column / per row, padded with the smallest unused
  // indices so each list has exactly s distinct entries
  auto padded = [&](bool by_col) {
    std::vector<std::vector<Index>> lists(d);
    for (Index j = 0; j < d; ++j) {
      std::vector<bool> used(d, false);
      auto& list = lists[j];
      for (Index i = 0; i < d; ++i) {
        const Cplx v = by_col ? a(i, j) : a(j, i);
        if (v != 0.0) {
          list.push_back(i);
          used[i] = true;
        }
      }
      if (Index(list.size()) > s) throw std::invalid_argument("sparse_block_encoding: sparsity violated");
      for (Index i = 0; Index(list.size()) < s; ++i)
        if (!used[i]) {
          list.push_back(i);
          used[i] = true;
        }
    }
    return lists;
  };
  const auto col_rows = padded(true);   // c(j, l): rows of nonzeros in column j
  const auto row_cols = padded(false);  // r(i, l): columns of nonzeros in row i

  // registers (v, p, x): 1 + w + w qubits; prescribed states land on |0 0 j>
  const Index dcore = Index(2) * d * d;
  const double inv_sqrt_s = 1.0 / std::sqrt(double(s));
  Mat cr = Mat::Zero(dcore, d), cl = Mat::Zero(dcore, d);
  for (Index j = 0; j < d; ++j)
    for (Index l = 0; l < s; ++l) {
      const Index c = col_rows[j][l];
      const Cplx v = a(c, j);
      cr(c * d + j, j) += inv_sqrt_s * v;
      cr(d * d + c * d + j, j) += inv_sqrt_s * std::sqrt(std::max(0.0, 1.0 - std::norm(v)));
    }
  for (Index i = 0; i < d; ++i)
    for (Index l = 0; l < s; ++l) cl(row_cols[i][l] * d + i, i) += inv_sqrt_s;

  const Mat br = unitary_completion(cr);
  const Mat bl = unitary_completion(cl);
  const Mat core = bl.adjoint() * kron(Mat::Identity(2, 2), swap_matrix(w)) * br;

  BlockEncoding be{kron(Mat::Identity(4, 4), core), double(s), w + 3, 0.0, w};
  be.eps = verify(be, a);
  return be;
}

}  // namespace belt
