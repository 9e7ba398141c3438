#pragma once

#include "belt/linalg.hpp"

#include <vector>

namespace belt {

// (alpha, m, eps)-block encoding: the ancilla register is the most
// significant, so the encoded block sits in the top-left corner.
struct BlockEncoding {
  Mat unitary;
  double alpha = 1.0;
  int anc_qubits = 0;
  double eps = 0.0;  // measured deviation for the matrix this was built for
  int sys_qubits = 0;
};

// Unscaled top-left corner.
Mat raw_block(const BlockEncoding& be);

// alpha * corner.
Mat extract_block(const BlockEncoding& be);

// ||target - alpha * corner||_inf
double verify(const BlockEncoding& be, const Mat& target);

// Two-block dilation, one ancilla qubit, exact for alpha >= ||a||_inf.
BlockEncoding exact_dilation(const Mat& a, double alpha);

// PREPARE-SELECT-PREPARE^dag for sum_i c_i U_i; signs fold into SELECT,
// alpha = sum |c_i|, ceil(log2 L) ancillas.
BlockEncoding lcu(const std::vector<double>& coeffs, const std::vector<Mat>& unitaries);

// (s, w+3, ~0)-encoding of an s-sparse matrix with |entries| <= 1, built from
// exact index/entry lookup oracles.
BlockEncoding sparse_block_encoding(const Mat& a, int s);

}  // namespace belt
