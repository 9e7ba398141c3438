#include "belt/belt.hpp"

#include <algorithm>
#include <numeric>

namespace belt {

namespace {

void check_density(const Mat& rho, const char* who, double tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument(std::string(who) + ": square input required");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument(std::string(who) + ": state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw std::invalid_argument(std::string(who) + ": state trace is not 1");
}

PurificationOracle purify_impl(const Mat& rho, int fixed_r) {
  check_density(rho, "purify", 1e-9);
  const Index d = rho.rows();
  const int n = qubits_of(d);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("purify: state has a negative eigenvalue");

  std::vector<Index> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return es.eigenvalues()[a] > es.eigenvalues()[b]; });
  Index rank = 0;
  for (Index i : idx)
    if (es.eigenvalues()[i] >= 1e-12) ++rank;
  rank = std::max<Index>(rank, 1);

  int r = fixed_r;
  if (r < 0) {
    r = 0;
    while ((Index(1) << r) < rank) ++r;
  } else if ((Index(1) << r) < rank) {
    throw std::invalid_argument("purify: fixed purifier too small for the rank");
  }
  const Index dr = Index(1) << r;

  Vec psi = Vec::Zero(dr * d);
  for (Index slot = 0; slot < rank; ++slot) {
    const double lam = std::max(0.0, es.eigenvalues()[idx[slot]]);
    Vec v = es.eigenvectors().col(idx[slot]);
    // phase fix: largest-magnitude amplitude made real positive
    Index am = 0;
    for (Index i = 1; i < d; ++i)
      if (std::abs(v[i]) > std::abs(v[am])) am = i;
    if (std::abs(v[am]) > 0.0) v *= std::conj(v[am]) / std::abs(v[am]);
    psi.segment(slot * d, d) = std::sqrt(lam) * v;
  }
  psi /= psi.norm();
  return {unitary_completion(psi), r, n};
}

}  // namespace

PurificationOracle purify(const Mat& rho) { return purify_impl(rho, -1); }

PurificationOracle purify_fixed(const Mat& rho, int r_qubits) {
  if (r_qubits < 0) throw std::invalid_argument("purify_fixed: negative purifier size");
  return purify_impl(rho, r_qubits);
}

BlockEncoding belt_assemble(const BlockEncoding& u_map, const PurificationOracle& oracle,
                            int in_qubits, int out_qubits, int qubit_cap) {
  if (u_map.sys_qubits != in_qubits + out_qubits)
    throw std::invalid_argument("belt_assemble: map encoding must cover in+out qubits");
  if (oracle.n_qubits != in_qubits)
    throw std::invalid_argument("belt_assemble: oracle system size mismatch");
  const int m = u_map.anc_qubits;
  const int r = oracle.r_qubits;
  const int total = m + r + in_qubits + out_qubits;
  if (total > qubit_cap) throw std::invalid_argument("belt_assemble: total qubits exceed cap");

  const QubitSplit split{m, r, in_qubits, out_qubits};
  const Mat e1 = embed(oracle.unitary, split, {1, 2});
  const Mat e2 = embed(u_map.unitary, split, {0, 2, 3});
  Mat v = e1.adjoint() * e2 * e1;
  return {std::move(v), u_map.alpha, m + r + in_qubits, u_map.eps, out_qubits};
}

PostSelection postselect(const BlockEncoding& v, const Mat& sigma) {
  check_density(sigma, "postselect", 1e-9);
  const Index dk = dim_of(v.sys_qubits);
  if (sigma.rows() != dk) throw std::invalid_argument("postselect: sigma dimension mismatch");
  const Mat b = raw_block(v);
  const Mat m = b * sigma * b.adjoint();
  PostSelection out;
  out.success_prob = std::max(0.0, m.trace().real());
  if (out.success_prob > 1e-14) {
    out.has_state = true;
    out.conditional_state = m / m.trace().real();
  }
  return out;
}

double success_prob_formula(const LinearMap& n_map, const Mat& rho, const Mat& sigma,
                            double alpha) {
  const Mat nrho = apply(n_map, rho);
  return (nrho * sigma * nrho.adjoint()).trace().real() / (alpha * alpha);
}

}  // namespace belt
