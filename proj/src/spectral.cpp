#include "belt/spectral.hpp"

#include <cmath>

namespace belt {

namespace {

// e^{i phi (2 Pi - 1)} with Pi the projector onto the encoded block's
// ancilla-zero subspace: diagonal phases.
Vec reflection_phases(double phi, Index dim, Index ds) {
  Vec diag(dim);
  const Cplx up = std::exp(Cplx(0.0, phi));
  const Cplx down = std::exp(Cplx(0.0, -phi));
  for (Index i = 0; i < dim; ++i) diag[i] = i < ds ? up : down;
  return diag;
}

Mat qsvt_walk(const Mat& u, Index ds, const std::vector<double>& phases, double sign) {
  const Index dim = u.rows();
  Mat w = reflection_phases(sign * phases[0], dim, ds).asDiagonal();
  Mat u_dag = u.adjoint();
  for (size_t j = 1; j < phases.size(); ++j) {
    w = w * (j % 2 == 1 ? u : u_dag);
    w = w * Mat(reflection_phases(sign * phases[j], dim, ds).asDiagonal());
  }
  return w;
}

void check_qetu_phases(const PhaseSequence& phases) {
  if (phases.convention != kQetuSymmetric)
    throw std::invalid_argument("qetu: phase convention mismatch");
  const size_t len = phases.phases.size();
  if (len == 0 || len % 2 == 0)
    throw std::invalid_argument("qetu: need an odd-length (even-degree) sequence");
  for (size_t i = 0; i < len; ++i)
    if (std::abs(phases.phases[i] - phases.phases[len - 1 - i]) > 1e-12)
      throw std::invalid_argument("qetu: phase sequence is not palindromic");
}

Mat rx_gate(double phi, Index dsys) {
  Mat g(2, 2);
  g << std::cos(phi), Cplx(0.0, 1.0) * std::sin(phi), Cplx(0.0, 1.0) * std::sin(phi),
      std::cos(phi);
  return kron(g, Mat::Identity(dsys, dsys));
}

}  // namespace

PhaseSequence chebyshev_phases(int degree) {
  if (degree < 1) throw std::invalid_argument("chebyshev_phases: degree must be positive");
  std::vector<double> phases(degree + 1, kPi / 2.0);
  phases.front() = phases.back() = -(degree - 1) * kPi / 4.0;
  return {kQsvtReflection, std::move(phases)};
}

BlockEncoding qsvt_apply(const BlockEncoding& be, const PhaseSequence& phases) {
  if (phases.convention != kQsvtReflection)
    throw std::invalid_argument("qsvt_apply: phase convention mismatch");
  if (phases.phases.empty()) throw std::invalid_argument("qsvt_apply: empty phase list");
  const Index dim = be.unitary.rows();
  const Index ds = dim_of(be.sys_qubits);
  const Mat w_pos = qsvt_walk(be.unitary, ds, phases.phases, +1.0);
  const Mat w_neg = qsvt_walk(be.unitary, ds, phases.phases, -1.0);
  // (H (x) I) diag(W+, W-) (H (x) I): block is the real-part combination
  Mat u(2 * dim, 2 * dim);
  u.topLeftCorner(dim, dim) = 0.5 * (w_pos + w_neg);
  u.topRightCorner(dim, dim) = 0.5 * (w_pos - w_neg);
  u.bottomLeftCorner(dim, dim) = 0.5 * (w_pos - w_neg);
  u.bottomRightCorner(dim, dim) = 0.5 * (w_pos + w_neg);
  return {std::move(u), 1.0, be.anc_qubits + 1, be.eps, be.sys_qubits};
}

int amplify_degree(double c) {
  if (!(c > 0.0) || c > 1.0) throw std::invalid_argument("amplify_degree: c outside (0, 1]");
  if (c >= 1.0) return 1;
  const double x = kPi / (2.0 * std::asin(c));
  const long n = 2 * std::lround((x - 1.0) / 2.0) + 1;
  return int(std::max(1l, n));
}

AmplifyReport amplify(const BlockEncoding& be, int degree) {
  if (degree < 1) throw std::invalid_argument("amplify: degree must be positive");
  AmplifyReport report;
  const Mat raw = raw_block(be);
  if (raw.rows() > 1) {
    Eigen::BDCSVD<Mat> svd(raw);
    const auto& sv = svd.singularValues();
    report.singular_ratio = sv(0) > 0.0 ? sv(1) / sv(0) : 0.0;
    report.rank1_warning = report.singular_ratio > 0.1;
  }
  report.encoding = qsvt_apply(be, chebyshev_phases(degree));
  report.gain = operator_norm(raw_block(report.encoding));
  report.degree = degree;
  report.applications = degree;
  return report;
}

PhaseSequence qetu_phases_one() { return {kQetuSymmetric, {0.0}}; }

PhaseSequence qetu_phases_square() { return {kQetuSymmetric, {kPi / 8.0, -kPi / 4.0, kPi / 8.0}}; }

BlockEncoding qetu_circuit(const Mat& u, const PhaseSequence& phases) {
  check_qetu_phases(phases);
  if (!is_unitary(u)) throw std::invalid_argument("qetu_circuit: input is not unitary");
  const Index d = u.rows();
  const int sys = qubits_of(d);
  Mat cu = Mat::Identity(2 * d, 2 * d);
  cu.bottomRightCorner(d, d) = u;
  Mat cu_dag = Mat::Identity(2 * d, 2 * d);
  cu_dag.bottomRightCorner(d, d) = u.adjoint();
  Mat w = rx_gate(phases.phases[0], d);
  for (size_t j = 1; j < phases.phases.size(); ++j)
    w = w * (j % 2 == 1 ? cu : cu_dag) * rx_gate(phases.phases[j], d);
  return {std::move(w), 1.0, 1, 0.0, sys};
}

Mat hme_step(const Mat& lam_t1, const Mat& rho, const Mat& sigma, double delta) {
  const Index dn = rho.rows();
  const Index dk = sigma.rows();
  if (lam_t1.rows() != dn * dk) throw std::invalid_argument("hme_step: dimension mismatch");
  const Mat u = mat_exp_i(lam_t1, -delta);
  const Mat joint = u * kron(rho, sigma) * u.adjoint();
  return partial_trace_first(joint, qubits_of(dn));
}

Mat hme_evolve(const Mat& lam_t1, const Mat& rho, const Mat& sigma, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("hme_evolve: steps must be positive");
  const double delta = t / steps;
  Mat state = sigma;
  for (int s = 0; s < steps; ++s) state = hme_step(lam_t1, rho, state, delta);
  return state;
}

QetuHmeReport qetu_hme(const LinearMap& map, const Mat& rho, const PhaseSequence& phases,
                       int steps_per_u) {
  check_qetu_phases(phases);
  if (steps_per_u < 1) throw std::invalid_argument("qetu_hme: steps_per_u must be positive");
  if (map.in_qubits != map.out_qubits)
    throw std::invalid_argument("qetu_hme: map must preserve the system size");
  const Mat lam = choi_t1(map);
  if ((lam - lam.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("qetu_hme: map is not Hermitian-preserving");

  const int n = map.in_qubits;
  const Index dn = dim_of(n);
  const int d = int(phases.phases.size()) - 1;
  const double delta = 1.0 / steps_per_u;

  // interaction Hamiltonian |1><1| (x) lam on registers (control, n, k)
  Mat h_ctrl = Mat::Zero(2 * dn * dn, 2 * dn * dn);
  h_ctrl.bottomRightCorner(dn * dn, dn * dn) = lam;
  const Mat cell_fwd = mat_exp_i(h_ctrl, -delta);
  const Mat cell_bwd = mat_exp_i(h_ctrl, +delta);

  const QubitSplit joint_split{1, n, n};  // (control, fresh rho, system)
  auto hme_cell = [&](const Mat& omega, bool forward) {
    const Mat chi =
        permute_subsystems(kron(omega, rho), {1, n, n}, {0, 2, 1});  // (c, k, n) -> (c, n, k)
    const Mat& cell = forward ? cell_fwd : cell_bwd;
    return partial_trace(cell * chi * cell.adjoint(), joint_split, {0, 2});
  };

  // realized channel on the system register, control post-selected on |0>
  auto run = [&](const Mat& sigma_in) {
    Mat omega = Mat::Zero(2 * dn, 2 * dn);
    omega.topLeftCorner(dn, dn) = sigma_in;
    Mat r0 = rx_gate(phases.phases[0], dn);
    omega = r0 * omega * r0.adjoint();
    for (int j = 1; j <= d; ++j) {
      for (int s = 0; s < steps_per_u; ++s) omega = hme_cell(omega, j % 2 == 1);
      Mat rj = rx_gate(phases.phases[j], dn);
      omega = rj * omega * rj.adjoint();
    }
    return Mat(omega.topLeftCorner(dn, dn));
  };

  Mat realized_superop(dn * dn, dn * dn);
  for (Index col = 0; col < dn * dn; ++col) {
    Mat basis = Mat::Zero(dn, dn);
    basis(col % dn, col / dn) = 1.0;
    realized_superop.col(col) = vec(run(basis));
  }
  const LinearMap realized = make_map(n, n, std::move(realized_superop));

  const Mat h_eff = apply(map, rho);
  const BlockEncoding ideal_circuit = qetu_circuit(mat_exp_i(h_eff, -1.0), phases);
  const Mat ideal_block = raw_block(ideal_circuit);
  const LinearMap ideal = conjugation(ideal_block);

  QetuHmeReport report;
  report.realized_choi = choi(realized).matrix;
  report.ideal_choi = choi(ideal).matrix;
  report.ideal_block = ideal_block;
  report.deviation = operator_norm(report.realized_choi - report.ideal_choi);
  report.copies = long(d) * steps_per_u;
  report.degree = d;
  return report;
}

}  // namespace belt
