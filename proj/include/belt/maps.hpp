#pragma once

#include "belt/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace belt {

// N : L(C^{2^n}) -> L(C^{2^k}) as a superoperator on column-stacked vec(X).
// The superoperator of X -> A X B^dag is conj(B) (x) A.
struct LinearMap {
  int in_qubits = 0;
  int out_qubits = 0;
  Mat superop;  // 4^k x 4^n
};

// Registers (in, out), input most significant.
struct ChoiMatrix {
  Mat matrix;
  int in_qubits = 0;
  int out_qubits = 0;
};

class SingularMap : public std::domain_error {
 public:
  SingularMap(const std::string& what, double cond) : std::domain_error(what), condition(cond) {}
  double condition;
};

LinearMap make_map(int in_qubits, int out_qubits, Mat superop);

Mat apply(const LinearMap& m, const Mat& x);

LinearMap from_kraus_pairs(const std::vector<std::pair<Mat, Mat>>& pairs);
LinearMap from_kraus(const std::vector<Mat>& ops);

// after . before
LinearMap compose(const LinearMap& after, const LinearMap& before);

ChoiMatrix choi(const LinearMap& m);
LinearMap from_choi(const ChoiMatrix& c);
Mat choi_t1(const LinearMap& m);

// The map (x) identity on extra trailing qubits.
LinearMap tensor_with_identity(const LinearMap& m, int extra_qubits);

LinearMap invert(const LinearMap& m, double cond_cap = 1e8);

// Partially transposed Choi matrix of rho -> Tr_Z(A rho A^dag) straight from
// the Stinespring operator A : X -> Y (x) Z, no Kraus extraction.
Mat choi_t1_cp(const Mat& a, int env_qubits);

LinearMap identity_map(int n);
LinearMap transpose_map(int n);
// R(X) = Tr(X) I - X
LinearMap reduction_map(int n);
// X -> T X T^dag
LinearMap conjugation(const Mat& t);
LinearMap depolarizing(double p, int n = 1);
LinearMap amplitude_damping(double gamma);
LinearMap pauli_channel(double px, double py, double pz);

}  // namespace belt
