#pragma once

#include "belt/blockenc.hpp"
#include "belt/maps.hpp"

namespace belt {

// U | 0^{r+n} > is a purification of the source state, purifier register
// most significant.
struct PurificationOracle {
  Mat unitary;
  int r_qubits = 0;
  int n_qubits = 0;
};

// Minimal purifier: r = ceil(log2 rank), eigenvalues below 1e-12 dropped.
PurificationOracle purify(const Mat& rho);

// Fixed purifier width; 2^r must cover the rank.
PurificationOracle purify_fixed(const Mat& rho, int r_qubits);

// V = (I_m (x) Urho^dag (x) I_k) (U_N on (m,n,k)) (I_m (x) Urho (x) I_k)
// on registers (m, r, n, k); an (alpha, m+r+n, eps)-encoding of N(rho).
BlockEncoding belt_assemble(const BlockEncoding& u_map, const PurificationOracle& oracle,
                            int in_qubits, int out_qubits, int qubit_cap = kQubitCap);

struct PostSelection {
  double success_prob = 0.0;
  bool has_state = false;
  Mat conditional_state;
};

// Feed |0...0><0...0| (x) sigma through v, project every ancilla onto 0.
PostSelection postselect(const BlockEncoding& v, const Mat& sigma);

// alpha^{-2} Tr[N(rho) sigma N(rho)^dag], the analytic Born-rule path.
double success_prob_formula(const LinearMap& n_map, const Mat& rho, const Mat& sigma,
                            double alpha);

}  // namespace belt
