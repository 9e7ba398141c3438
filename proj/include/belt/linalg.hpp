#pragma once

#include "belt/rng.hpp"
#include "belt/types.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace belt {

template <typename DA, typename DB>
Mat kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return Eigen::kroneckerProduct(a, b);
}

// Column-stacking vectorization (Eigen's native layout).
inline Vec vec(const Mat& x) { return Eigen::Map<const Vec>(x.data(), x.size()); }

inline Mat unvec(const Vec& v, Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Mat>(v.data(), rows, v.size() / rows);
}

// Reorder the registers of `m` so subsystem order[i] becomes the i-th register.
Mat permute_subsystems(const Mat& m, const QubitSplit& split, const std::vector<int>& order);

// Lift u, acting on the listed target subsystems (in the listed order, most
// significant first), to the full space with identity elsewhere.
Mat embed(const Mat& u, const QubitSplit& split, const std::vector<int>& targets);

// Trace out everything not in `keep`; result registers follow the order given.
Mat partial_trace(const Mat& m, const QubitSplit& split, const std::vector<int>& keep);
Mat partial_trace_first(const Mat& m, int first_qubits);

Mat partial_transpose_first(const Mat& m, int first_qubits);

// Largest singular value.
double operator_norm(const Mat& m);

// Sum of singular values.
double trace_norm(const Mat& m);

// e^{i t h} for Hermitian h.
Mat mat_exp_i(const Mat& h, double t);

// Hermitian PSD square root; eigenvalues in [-1e-12, 0) clamp to 0,
// anything more negative is rejected.
Mat matrix_sqrt_psd(const Mat& a);

// Extend orthonormal columns to a full unitary, deterministically.
Mat unitary_completion(const Mat& columns);

double unitarity_residual(const Mat& u);
bool is_unitary(const Mat& u, double tol = 1e-10);

// SWAP of two q-qubit registers.
Mat swap_matrix(int q);

// Normalized Ginibre vector.
Vec haar_state(int qubits, Rng& rng);

Mat rand_density(int qubits, int rank, Rng& rng);

}  // namespace belt
