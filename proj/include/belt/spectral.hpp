#pragma once

#include "belt/belt.hpp"

#include <string>

namespace belt {

inline constexpr const char* kQsvtReflection = "qsvt-reflection";
inline constexpr const char* kQetuSymmetric = "qetu-symmetric";

struct PhaseSequence {
  std::string convention;
  std::vector<double> phases;
};

// Phases whose qsvt_apply realizes the Chebyshev polynomial T_degree exactly.
PhaseSequence chebyshev_phases(int degree);

// Alternate the encoding with ancilla-space phase reflections; one extra
// ancilla realizes the real part of the implemented polynomial.
BlockEncoding qsvt_apply(const BlockEncoding& be, const PhaseSequence& phases);

struct AmplifyReport {
  BlockEncoding encoding;
  double gain = 0.0;          // operator norm of the transformed raw block
  int degree = 0;
  long applications = 0;      // uses of the input unitary and its inverse
  bool rank1_warning = false; // second singular value > 0.1 x first
  double singular_ratio = 0.0;
};

// Nearest odd integer to pi / (2 asin c), the scalar Chebyshev maximizer.
int amplify_degree(double c);

AmplifyReport amplify(const BlockEncoding& be, int degree);

PhaseSequence qetu_phases_one();     // degree 0, F = 1
PhaseSequence qetu_phases_square();  // degree 2, F(x) = x^2

// Control-qubit circuit alternating X rotations with controlled-u and
// controlled-u^dag; a (1, 1, 0)-encoding of F(cos(H/2)) for u = e^{-iH}.
BlockEncoding qetu_circuit(const Mat& u, const PhaseSequence& phases);

// Tr_first[ e^{-i lam_t1 delta} (rho (x) sigma) e^{+i lam_t1 delta} ],
// one interaction step consuming one copy of rho.
Mat hme_step(const Mat& lam_t1, const Mat& rho, const Mat& sigma, double delta);

// `steps` composed steps over total time t.
Mat hme_evolve(const Mat& lam_t1, const Mat& rho, const Mat& sigma, double t, int steps);

struct QetuHmeReport {
  Mat realized_choi;  // Choi of the post-selected block channel, HME cells
  Mat ideal_choi;     // same with exact controlled evolution
  Mat ideal_block;    // F(cos(N(rho)/2))
  double deviation = 0.0;
  long copies = 0;
  int degree = 0;
};

// QETU with every controlled-u cell replaced by steps_per_u controlled
// interaction steps; total evolution time per cell is 1.
QetuHmeReport qetu_hme(const LinearMap& map, const Mat& rho, const PhaseSequence& phases,
                       int steps_per_u);

}  // namespace belt
