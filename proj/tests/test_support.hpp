#pragma once

#include "belt/linalg.hpp"
#include "belt/rng.hpp"

#include <doctest.h>

namespace belt::test {

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Independent spectral norm: power iteration on A^dag A, no shared code with
// operator_norm.
inline double opnorm_power(const Mat& a, int iters = 400) {
  const Mat g = a.adjoint() * a;
  Vec v = Vec::Ones(g.rows()).normalized();
  for (int i = 0; i < iters; ++i) {
    v = g * v;
    const double n = v.norm();
    if (n == 0) return 0.0;
    v /= n;
  }
  return std::sqrt(std::abs((v.adjoint() * g * v)(0, 0).real()));
}

inline Mat rand_unitary(int qubits, Rng& rng) {
  const Index d = dim_of(qubits);
  Mat g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i)
    if (std::abs(r(i, i)) > 0) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

}  // namespace belt::test
