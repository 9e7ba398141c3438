#include "belt/maps.hpp"

namespace belt {

namespace {

Index in_dim(const LinearMap& m) { return dim_of(m.in_qubits); }
Index out_dim(const LinearMap& m) { return dim_of(m.out_qubits); }

}  // namespace

LinearMap make_map(int in_qubits, int out_qubits, Mat superop) {
  const Index dn = dim_of(in_qubits), dk = dim_of(out_qubits);
  if (superop.rows() != dk * dk || superop.cols() != dn * dn)
    throw std::invalid_argument("make_map: superoperator shape mismatch");
  return {in_qubits, out_qubits, std::move(superop)};
}

Mat apply(const LinearMap& m, const Mat& x) {
  const Index dn = in_dim(m);
  if (x.rows() != dn || x.cols() != dn) throw std::invalid_argument("apply: dimension mismatch");
  return unvec(m.superop * vec(x), out_dim(m));
}

LinearMap from_kraus_pairs(const std::vector<std::pair<Mat, Mat>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("from_kraus_pairs: empty list");
  const Index dn = pairs[0].first.cols();
  const Index dk = pairs[0].first.rows();
  Mat s = Mat::Zero(dk * dk, dn * dn);
  for (const auto& [a, b] : pairs) {
    if (a.rows() != dk || a.cols() != dn || b.rows() != dk || b.cols() != dn)
      throw std::invalid_argument("from_kraus_pairs: inconsistent dimensions");
    s += kron(b.conjugate(), a);
  }
  return make_map(qubits_of(dn), qubits_of(dk), std::move(s));
}

LinearMap from_kraus(const std::vector<Mat>& ops) {
  std::vector<std::pair<Mat, Mat>> pairs;
  pairs.reserve(ops.size());
  for (const Mat& k : ops) pairs.emplace_back(k, k);
  return from_kraus_pairs(pairs);
}

LinearMap compose(const LinearMap& after, const LinearMap& before) {
  if (after.in_qubits != before.out_qubits) throw std::invalid_argument("compose: dimension mismatch");
  return make_map(before.in_qubits, after.out_qubits, after.superop * before.superop);
}

ChoiMatrix choi(const LinearMap& m) {
  const Index dn = in_dim(m), dk = out_dim(m);
  Mat lam(dn * dk, dn * dk);
  for (Index j = 0; j < dn; ++j)
    for (Index i = 0; i < dn; ++i)
      lam.block(i * dk, j * dk, dk, dk) = unvec(m.superop.col(i + j * dn), dk);
  return {std::move(lam), m.in_qubits, m.out_qubits};
}

LinearMap from_choi(const ChoiMatrix& c) {
  const Index dn = dim_of(c.in_qubits), dk = dim_of(c.out_qubits);
  if (c.matrix.rows() != dn * dk || c.matrix.cols() != dn * dk)
    throw std::invalid_argument("from_choi: shape mismatch");
  Mat s(dk * dk, dn * dn);
  for (Index j = 0; j < dn; ++j)
    for (Index i = 0; i < dn; ++i)
      s.col(i + j * dn) = vec(c.matrix.block(i * dk, j * dk, dk, dk));
  return make_map(c.in_qubits, c.out_qubits, std::move(s));
}

Mat choi_t1(const LinearMap& m) { return partial_transpose_first(choi(m).matrix, m.in_qubits); }

LinearMap tensor_with_identity(const LinearMap& m, int extra_qubits) {
  if (extra_qubits == 0) return m;
  const ChoiMatrix cm = choi(m);
  const ChoiMatrix ce = choi(identity_map(extra_qubits));
  // kron order (in, out, ex_in, ex_out) -> (in, ex_in, out, ex_out)
  Mat lam = permute_subsystems(kron(cm.matrix, ce.matrix),
                               {m.in_qubits, m.out_qubits, extra_qubits, extra_qubits},
                               {0, 2, 1, 3});
  return from_choi({std::move(lam), m.in_qubits + extra_qubits, m.out_qubits + extra_qubits});
}

LinearMap invert(const LinearMap& m, double cond_cap) {
  if (m.in_qubits != m.out_qubits) throw std::invalid_argument("invert: square superoperator required");
  Eigen::BDCSVD<Mat> svd(m.superop, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < cond_cap))
    throw SingularMap("invert: superoperator singular or ill-conditioned (cond ~ " +
                          std::to_string(cond) + ")",
                      cond);
  Eigen::VectorXd inv_sv = sv.cwiseInverse();
  Mat s = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
  return make_map(m.in_qubits, m.out_qubits, std::move(s));
}

Mat choi_t1_cp(const Mat& a, int env_qubits) {
  const Index dz = dim_of(env_qubits);
  if (a.rows() % dz != 0) throw std::invalid_argument("choi_t1_cp: dimension mismatch");
  const Index dy = a.rows() / dz;
  const Index dx = a.cols();
  const int x_qubits = qubits_of(dx);
  qubits_of(dy);  // validates power of two
  Vec phi = Vec::Zero(dz * dz);
  for (Index i = 0; i < dz; ++i) phi[i * dz + i] = 1.0;
  const Mat ix = Mat::Identity(dx, dx);
  const Mat ixy = Mat::Identity(dx * dy, dx * dy);
  const Mat iz = Mat::Identity(dz, dz);
  const Mat lift = kron(ixy, Mat(phi));                       // X(x)Y -> X(x)Y(x)Z(x)Z'
  const Mat a_dag = kron(ix, kron(Mat(a.adjoint()), iz));     // -> X(x)X'(x)Z'
  const Mat swap_xx = kron(swap_matrix(x_qubits), iz);
  const Mat a_fwd = kron(ix, kron(a, iz));                    // -> X(x)Y(x)Z(x)Z'
  return lift.adjoint() * a_fwd * swap_xx * a_dag * lift;
}

LinearMap identity_map(int n) {
  const Index d2 = dim_of(n) * dim_of(n);
  return make_map(n, n, Mat::Identity(d2, d2));
}

LinearMap transpose_map(int n) {
  const Index d = dim_of(n);
  Mat s = Mat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(j + i * d, i + j * d) = 1.0;
  return make_map(n, n, std::move(s));
}

LinearMap reduction_map(int n) {
  const Index d = dim_of(n);
  const Vec vi = vec(Mat::Identity(d, d));
  Mat s = vi * vi.transpose() - Mat::Identity(d * d, d * d);
  return make_map(n, n, std::move(s));
}

LinearMap conjugation(const Mat& t) { return from_kraus_pairs({{t, t}}); }

LinearMap depolarizing(double p, int n) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p outside [0, 1]");
  const Index d = dim_of(n);
  const Vec vi = vec(Mat::Identity(d, d));
  Mat s = (1.0 - p) * Mat::Identity(d * d, d * d) + (p / double(d)) * (vi * vi.transpose());
  return make_map(n, n, std::move(s));
}

LinearMap amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude_damping: gamma outside [0, 1]");
  Mat k0(2, 2), k1(2, 2);
  k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  k1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
  return from_kraus({k0, k1});
}

LinearMap pauli_channel(double px, double py, double pz) {
  const double pi0 = 1.0 - px - py - pz;
  if (px < 0 || py < 0 || pz < 0 || pi0 < -1e-12)
    throw std::invalid_argument("pauli_channel: probabilities invalid");
  Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Cplx(0, -1), Cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  return from_kraus({std::sqrt(std::max(0.0, pi0)) * Mat::Identity(2, 2), std::sqrt(px) * x,
                     std::sqrt(py) * y, std::sqrt(pz) * z});
}

}  // namespace belt
