#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace belt {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Cplx = std::complex<double>;
using Mat = DenseMatrix<double>;
using Vec = DenseVector<double>;
using Index = Eigen::Index;

// Subsystem qubit counts, most significant register first.
// Qubit 0 is the most significant index bit throughout.
using QubitSplit = std::vector<int>;

inline constexpr double kPi = 3.14159265358979323846;

// Densely materialized circuits refuse beyond this many total qubits.
inline constexpr int kQubitCap = 13;

inline Index dim_of(int qubits) {
  if (qubits < 0 || qubits > 30) throw std::invalid_argument("qubit count out of range");
  return Index(1) << qubits;
}

inline int qubits_of(Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("dimension is not a power of two");
  int q = 0;
  while ((Index(1) << q) < dim) ++q;
  return q;
}

}  // namespace belt
