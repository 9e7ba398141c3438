#include "belt/maps.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace belt;
using test::max_abs_diff;
using test::rand_unitary;

namespace {

Mat rand_mat(Index rows, Index cols, Rng& rng) {
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  return m;
}

LinearMap rand_map(int in_q, int out_q, Rng& rng) {
  return make_map(in_q, out_q,
                  rand_mat(dim_of(out_q) * dim_of(out_q), dim_of(in_q) * dim_of(in_q), rng));
}

}  // namespace

TEST_CASE("apply matches a two-Kraus brute force sum") {
  Rng rng(31);
  const Mat a = rand_mat(4, 2, rng);
  const Mat b = rand_mat(4, 2, rng);
  const LinearMap nm = from_kraus_pairs({{a, a}, {b, b}});
  const Mat x = rand_mat(2, 2, rng);
  CHECK(max_abs_diff(belt::apply(nm, x), a * x * a.adjoint() + b * x * b.adjoint()) < 1e-12);
}

TEST_CASE("from_kraus_pairs allows distinct left and right factors") {
  Rng rng(32);
  const Mat a = rand_mat(2, 2, rng);
  const Mat b = rand_mat(2, 2, rng);
  const LinearMap nm = from_kraus_pairs({{a, b}});
  const Mat x = rand_mat(2, 2, rng);
  CHECK(max_abs_diff(belt::apply(nm, x), a * x * b.adjoint()) < 1e-13);
}

TEST_CASE("compose applies right map first") {
  Rng rng(33);
  const LinearMap f = rand_map(1, 2, rng);
  const LinearMap g = rand_map(2, 1, rng);
  const LinearMap gf = compose(g, f);
  const Mat x = rand_mat(2, 2, rng);
  CHECK(max_abs_diff(belt::apply(gf, x), belt::apply(g, belt::apply(f, x))) < 1e-11);
  CHECK(gf.in_qubits == 1);
  CHECK(gf.out_qubits == 1);
}

TEST_CASE("choi and from_choi are inverse reshuffles") {
  Rng rng(34);
  const LinearMap nm = rand_map(2, 1, rng);
  const ChoiMatrix c = choi(nm);
  CHECK(c.matrix.rows() == 4 * 2);
  const LinearMap back = from_choi(c);
  CHECK(max_abs_diff(back.superop, nm.superop) < 1e-13);
}

TEST_CASE("choi entries are map outputs on matrix units") {
  Rng rng(35);
  const LinearMap nm = rand_map(1, 1, rng);
  const ChoiMatrix c = choi(nm);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat unit = Mat::Zero(2, 2);
      unit(i, j) = 1.0;
      const Mat block = c.matrix.block(i * 2, j * 2, 2, 2);
      CHECK(max_abs_diff(block, belt::apply(nm, unit)) < 1e-13);
    }
}

TEST_CASE("identity map has the swap as partially transposed choi") {
  for (int n : {1, 2}) {
    const LinearMap id = identity_map(n);
    const Mat lam = choi_t1(id);
    CHECK(max_abs_diff(lam, swap_matrix(n)) < 1e-14);
    CHECK(operator_norm(lam) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("transpose map facts") {
  const LinearMap t = transpose_map(1);
  Mat x(2, 2);
  x << 1, Cplx(2, 1), Cplx(3, -2), 4;
  CHECK(max_abs_diff(belt::apply(t, x), x.transpose()) == 0.0);
  // Choi is the swap; its partial transpose is the unnormalized maximally
  // entangled projector, with norm d.
  CHECK(max_abs_diff(choi(t).matrix, swap_matrix(1)) < 1e-14);
  const Mat lam = choi_t1(t);
  Vec phi = Vec::Zero(4);
  phi(0) = 1.0;
  phi(3) = 1.0;
  CHECK(max_abs_diff(lam, Mat(phi * phi.adjoint())) < 1e-14);
  CHECK(operator_norm(lam) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reduction map facts") {
  const LinearMap r = reduction_map(1);
  Mat x(2, 2);
  x << 1, 2, 3, 4;
  Mat expected = Mat::Identity(2, 2) * x.trace() - x;
  CHECK(max_abs_diff(belt::apply(r, x), expected) < 1e-14);
  const Mat lam = choi_t1(r);
  CHECK(max_abs_diff(lam, Mat(Mat::Identity(4, 4) - swap_matrix(1))) < 1e-14);
  CHECK(operator_norm(lam) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reduction tensor identity acts on the first factor only") {
  Rng rng(36);
  const LinearMap rxi = tensor_with_identity(reduction_map(1), 1);
  CHECK(rxi.in_qubits == 2);
  const Mat rho = rand_density(2, 3, rng);
  const Mat r1 = partial_trace(rho, {1, 1}, {1});  // rho_B scaled by Tr over A
  const Mat expected = kron(Mat::Identity(2, 2), r1) - rho;
  CHECK(max_abs_diff(belt::apply(rxi, rho), expected) < 1e-12);
  // Partially transposed choi built from elementary swaps.
  const Mat s13 = embed(swap_matrix(1), {1, 1, 1, 1}, {0, 2});
  const Mat s24 = embed(swap_matrix(1), {1, 1, 1, 1}, {1, 3});
  CHECK(max_abs_diff(choi_t1(rxi), Mat(s24 - s13 * s24)) < 1e-13);
}

TEST_CASE("depolarizing channel is trace preserving and correct") {
  Rng rng(37);
  const Mat rho = rand_density(1, 2, rng);
  for (double p : {0.0, 0.3, 1.0}) {
    const LinearMap dep = depolarizing(p);
    const Mat out = belt::apply(dep, rho);
    CHECK(std::abs(out.trace() - 1.0) < 1e-12);
    const Mat expected = (1 - p) * rho + p * Mat::Identity(2, 2) * 0.5;
    CHECK(max_abs_diff(out, expected) < 1e-13);
  }
  CHECK_THROWS_AS((void)depolarizing(-0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)depolarizing(1.5), std::invalid_argument);
}

TEST_CASE("amplitude damping kraus form") {
  Rng rng(38);
  const double g = 0.35;
  const LinearMap ad = amplitude_damping(g);
  Mat k0 = Mat::Identity(2, 2);
  k0(1, 1) = std::sqrt(1 - g);
  Mat k1 = Mat::Zero(2, 2);
  k1(0, 1) = std::sqrt(g);
  const Mat rho = rand_density(1, 2, rng);
  CHECK(max_abs_diff(belt::apply(ad, rho), k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint()) <
        1e-13);
}

TEST_CASE("pauli channel matches direct conjugation mix") {
  Rng rng(39);
  const LinearMap pc = pauli_channel(0.1, 0.2, 0.3);
  Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Cplx(0, -1), Cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  const Mat rho = rand_density(1, 2, rng);
  const Mat expected = 0.4 * rho + 0.1 * x * rho * x + 0.2 * y * rho * y + 0.3 * z * rho * z;
  CHECK(max_abs_diff(belt::apply(pc, rho), expected) < 1e-13);
  CHECK_THROWS_AS((void)pauli_channel(0.5, 0.4, 0.3), std::invalid_argument);
}

TEST_CASE("invert undoes an invertible channel") {
  Rng rng(40);
  const LinearMap dep = depolarizing(0.25);
  const LinearMap inv = invert(dep);
  const Mat rho = rand_density(1, 2, rng);
  CHECK(max_abs_diff(belt::apply(inv, belt::apply(dep, rho)), rho) < 1e-12);
  CHECK(max_abs_diff(belt::apply(dep, belt::apply(inv, rho)), rho) < 1e-12);
}

TEST_CASE("invert rejects singular maps and reports conditioning") {
  const LinearMap dep1 = depolarizing(1.0);
  CHECK_THROWS_AS((void)invert(dep1), SingularMap);
  try {
    (void)invert(dep1);
  } catch (const SingularMap& e) {
    CHECK(e.condition > 1e8);
  }
  // Full dephasing annihilates the off-diagonal sector.
  CHECK_THROWS_AS((void)invert(pauli_channel(0.0, 0.0, 0.5)), SingularMap);
}

TEST_CASE("inverse depolarizing alpha values") {
  // alpha = norm of the partially transposed choi of the inverse channel.
  const double expected[] = {7.0 / 6.0, 1.5, 2.5};
  const double ps[] = {0.1, 0.25, 0.5};
  for (int i = 0; i < 3; ++i) {
    const Mat lam = choi_t1(invert(depolarizing(ps[i])));
    CHECK(operator_norm(lam) == doctest::Approx(expected[i]).epsilon(1e-10));
  }
}

TEST_CASE("choi_t1 of a unitary conjugation has norm one") {
  Rng rng(41);
  const Mat u = rand_unitary(2, rng);
  const Mat lam = choi_t1(conjugation(u));
  CHECK(operator_norm(lam) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(unitarity_residual(lam) < 1e-11);
}

TEST_CASE("choi_t1_cp sandwich structure") {
  Rng rng(42);
  // No environment: (I (x) A) S (I (x) A^dag).
  const Mat a = rand_mat(2, 2, rng);
  const Mat got = choi_t1_cp(a, 0);
  const Mat expected =
      kron(Mat::Identity(2, 2), a) * swap_matrix(1) * kron(Mat::Identity(2, 2), a.adjoint());
  CHECK(max_abs_diff(got, expected) < 1e-13);
  // Appending an environment state and tracing it back out is the identity
  // channel, whose partially transposed choi matrix is the swap.
  Mat append = Mat::Zero(4, 2);
  append(0, 0) = 1.0;
  append(2, 1) = 1.0;
  CHECK(max_abs_diff(choi_t1_cp(append, 1), swap_matrix(1)) < 1e-13);
  const Mat big = rand_mat(4, 2, rng);
  CHECK(operator_norm(choi_t1_cp(big, 1)) <=
        operator_norm(big) * operator_norm(big) + 1e-10);
}

TEST_CASE("choi_t1_cp matches the brute force choi of the traced channel") {
  Rng rng(43);
  // A : X -> Y (x) Z with one environment qubit traced out.
  const Mat a = rand_mat(4, 2, rng);
  std::vector<std::pair<Mat, Mat>> kraus;
  for (Index z = 0; z < 2; ++z) {
    Mat kz(2, 2);
    for (Index y = 0; y < 2; ++y)
      for (Index x = 0; x < 2; ++x) kz(y, x) = a(y * 2 + z, x);
    kraus.emplace_back(kz, kz);
  }
  const LinearMap traced = from_kraus_pairs(kraus);
  CHECK(max_abs_diff(choi_t1_cp(a, 1), choi_t1(traced)) < 1e-12);
}

TEST_CASE("choi_t1_cp of a tensored conjugation") {
  Rng rng(44);
  const Mat a = rand_mat(2, 2, rng);
  const LinearMap m = tensor_with_identity(conjugation(a), 1);
  CHECK(max_abs_diff(choi_t1_cp(kron(a, Mat::Identity(2, 2)), 0), choi_t1(m)) < 1e-12);
}
