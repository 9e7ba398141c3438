#include "belt/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace belt {

namespace {

int total_qubits(const QubitSplit& split) {
  int total = 0;
  for (int q : split) {
    if (q < 0) throw std::invalid_argument("negative subsystem size");
    total += q;
  }
  if (total > 30) throw std::invalid_argument("split exceeds addressable qubits");
  return total;
}

// Packed value of the listed subsystems (listed order, most significant
// first) scattered into a full index. Table is indexed by the packed value.
std::vector<Index> addr_table(const QubitSplit& split, const std::vector<int>& subs) {
  const int q_total = total_qubits(split);
  std::vector<int> offset(split.size());
  int acc = 0;
  for (size_t i = 0; i < split.size(); ++i) {
    offset[i] = acc;
    acc += split[i];
  }
  int width = 0;
  for (int s : subs) {
    if (s < 0 || s >= int(split.size())) throw std::invalid_argument("subsystem index out of range");
    width += split[s];
  }
  std::vector<Index> table(Index(1) << width);
  for (Index v = 0; v < Index(table.size()); ++v) {
    Index a = 0;
    int shift = width;
    for (int s : subs) {
      shift -= split[s];
      const Index field = (v >> shift) & ((Index(1) << split[s]) - 1);
      a |= field << (q_total - offset[s] - split[s]);
    }
    table[v] = a;
  }
  return table;
}

std::vector<int> complement_of(const QubitSplit& split, const std::vector<int>& subs) {
  std::vector<bool> used(split.size(), false);
  for (int s : subs) {
    if (s < 0 || s >= int(split.size())) throw std::invalid_argument("subsystem index out of range");
    if (used[s]) throw std::invalid_argument("duplicate subsystem index");
    used[s] = true;
  }
  std::vector<int> rest;
  for (size_t i = 0; i < split.size(); ++i)
    if (!used[i]) rest.push_back(int(i));
  return rest;
}

void check_hermitian(const Mat& h, const char* who) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

}  // namespace

Mat permute_subsystems(const Mat& m, const QubitSplit& split, const std::vector<int>& order) {
  const int q = total_qubits(split);
  const Index dim = Index(1) << q;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("permute_subsystems: dimension mismatch");
  if (order.size() != split.size())
    throw std::invalid_argument("permute_subsystems: order must list every subsystem");
  const std::vector<Index> src = addr_table(split, order);
  Mat out(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) out(i, j) = m(src[i], src[j]);
  return out;
}

Mat embed(const Mat& u, const QubitSplit& split, const std::vector<int>& targets) {
  const int q = total_qubits(split);
  const Index dim = Index(1) << q;
  int width = 0;
  for (int s : targets) width += split[s];
  const Index dt = Index(1) << width;
  if (u.rows() != dt || u.cols() != dt) throw std::invalid_argument("embed: dimension mismatch");
  const std::vector<int> rest = complement_of(split, targets);
  const std::vector<Index> t_addr = addr_table(split, targets);
  const std::vector<Index> r_addr = addr_table(split, rest);
  Mat out = Mat::Zero(dim, dim);
  for (Index r : r_addr)
    for (Index ty = 0; ty < dt; ++ty)
      for (Index tx = 0; tx < dt; ++tx) out(t_addr[tx] | r, t_addr[ty] | r) = u(tx, ty);
  return out;
}

Mat partial_trace(const Mat& m, const QubitSplit& split, const std::vector<int>& keep) {
  const int q = total_qubits(split);
  const Index dim = Index(1) << q;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  const std::vector<int> rest = complement_of(split, keep);
  const std::vector<Index> k_addr = addr_table(split, keep);
  const std::vector<Index> r_addr = addr_table(split, rest);
  const Index dk = Index(k_addr.size());
  Mat out = Mat::Zero(dk, dk);
  for (Index j = 0; j < dk; ++j)
    for (Index i = 0; i < dk; ++i) {
      Cplx acc = 0.0;
      for (Index r : r_addr) acc += m(k_addr[i] | r, k_addr[j] | r);
      out(i, j) = acc;
    }
  return out;
}

Mat partial_trace_first(const Mat& m, int first_qubits) {
  const int q = qubits_of(m.rows());
  return partial_trace(m, {first_qubits, q - first_qubits}, {1});
}

Mat partial_transpose_first(const Mat& m, int first_qubits) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_transpose_first: square input required");
  const Index da = dim_of(first_qubits);
  if (m.rows() % da != 0) throw std::invalid_argument("partial_transpose_first: dimension mismatch");
  const Index dr = m.rows() / da;
  Mat out(m.rows(), m.cols());
  for (Index b = 0; b < da; ++b)
    for (Index a = 0; a < da; ++a)
      out.block(a * dr, b * dr, dr, dr) = m.block(b * dr, a * dr, dr, dr);
  return out;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // sigma_max via the smaller Gram matrix; handles non-Hermitian blocks.
  Mat gram;
  if (m.rows() <= m.cols())
    gram = m * m.adjoint();
  else
    gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

Mat mat_exp_i(const Mat& h, double t) {
  check_hermitian(h, "mat_exp_i");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& lam = es.eigenvalues();
  Vec phase(lam.size());
  for (Index i = 0; i < lam.size(); ++i) phase[i] = std::exp(Cplx(0.0, t * lam[i]));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

Mat matrix_sqrt_psd(const Mat& a) {
  check_hermitian(a, "matrix_sqrt_psd");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -1e-12) throw std::domain_error("matrix_sqrt_psd: negative eigenvalue");
    lam[i] = std::sqrt(std::max(0.0, lam[i]));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Mat unitary_completion(const Mat& columns) {
  const Index d = columns.rows();
  const Index k = columns.cols();
  if (k > d) throw std::invalid_argument("unitary_completion: more columns than rows");
  if (k == 0) return Mat::Identity(d, d);
  if ((columns.adjoint() * columns - Mat::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("unitary_completion: columns are not orthonormal");
  if (k == d) return columns;
  Eigen::HouseholderQR<Mat> qr(columns);
  Mat full = qr.householderQ() * Mat::Identity(d, d);
  Mat u(d, d);
  u.leftCols(k) = columns;
  u.rightCols(d - k) = full.rightCols(d - k);
  // Two re-orthogonalization sweeps of the appended columns.
  for (int pass = 0; pass < 2; ++pass)
    for (Index j = k; j < d; ++j) {
      Vec v = u.col(j);
      for (Index i = 0; i < j; ++i) v -= u.col(i) * u.col(i).dot(v);
      u.col(j) = v / v.norm();
    }
  return u;
}

double unitarity_residual(const Mat& u) {
  if (u.rows() != u.cols()) return 1.0;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

bool is_unitary(const Mat& u, double tol) { return unitarity_residual(u) <= tol; }

Mat swap_matrix(int q) {
  const Index d = dim_of(q);
  Mat s = Mat::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

Vec haar_state(int qubits, Rng& rng) {
  if (qubits < 1) throw std::invalid_argument("haar_state: need at least one qubit");
  const Index d = dim_of(qubits);
  Vec v(d);
  for (Index i = 0; i < d; ++i) v[i] = rng.gaussian_cplx();
  return v / v.norm();
}

Mat rand_density(int qubits, int rank, Rng& rng) {
  const Index d = dim_of(qubits);
  if (rank < 1 || Index(rank) > d) throw std::invalid_argument("rand_density: bad rank");
  Mat g(d, rank);
  for (Index j = 0; j < rank; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = rng.gaussian_cplx();
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace belt
