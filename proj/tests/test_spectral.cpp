#include "belt/spectral.hpp"

#include "belt/belt.hpp"
#include "belt/maps.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace belt;
using test::max_abs_diff;
using test::rand_unitary;

namespace {

double cheb(int n, double x) {
  if (n == 0) return 1.0;
  double tm = 1.0, t = x;
  for (int k = 2; k <= n; ++k) {
    const double next = 2 * x * t - tm;
    tm = t;
    t = next;
  }
  return t;
}

// Scalar model of the alternating phased walk: acting on a 1x1 "block" with
// singular value x, tracking the full 2x2 rotation space.
Mat scalar_walk(double x, const std::vector<double>& phases) {
  Mat u(2, 2);
  const double c = x, s = std::sqrt(std::max(0.0, 1 - x * x));
  u << c, s, s, -c;  // reflection form, singular value x in the corner
  auto zrot = [](double phi) {
    Mat z = Mat::Zero(2, 2);
    z(0, 0) = std::exp(Cplx(0, phi));
    z(1, 1) = std::exp(Cplx(0, -phi));
    return z;
  };
  Mat w = zrot(phases[0]);
  for (size_t j = 1; j < phases.size(); ++j) {
    w = w * (j % 2 ? u : Mat(u.adjoint()));
    w = w * zrot(phases[j]);
  }
  return w;
}

}  // namespace

TEST_CASE("chebyshev phase vectors") {
  const PhaseSequence p1 = chebyshev_phases(1);
  REQUIRE(p1.phases.size() == 2);
  CHECK(p1.phases[0] == 0.0);
  CHECK(p1.phases[1] == 0.0);
  const PhaseSequence p3 = chebyshev_phases(3);
  REQUIRE(p3.phases.size() == 4);
  CHECK(p3.phases[0] == doctest::Approx(-2.0 * kPi / 4.0));
  CHECK(p3.phases[1] == doctest::Approx(kPi / 2));
  CHECK(p3.phases[2] == doctest::Approx(kPi / 2));
  CHECK(p3.phases[3] == doctest::Approx(-2.0 * kPi / 4.0));
  CHECK_THROWS_AS((void)chebyshev_phases(0), std::invalid_argument);
}

TEST_CASE("chebyshev phases drive the scalar walk to T_N") {
  for (int n : {1, 2, 3, 5}) {
    const PhaseSequence seq = chebyshev_phases(n);
    for (double x : {0.05, 0.3, 0.7, 0.95}) {
      const Mat w = scalar_walk(x, seq.phases);
      // Real part of the corner is the polynomial value.
      CHECK(w(0, 0).real() == doctest::Approx(cheb(n, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("qsvt_apply realizes Chebyshev polynomials of the encoded block") {
  Rng rng(91);
  for (int n : {1, 2, 3, 5}) {
    // Hermitian contraction so T_n acts on eigenvalues directly.
    Mat g(4, 4);
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i < 4; ++i) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
    Mat h = 0.5 * (g + g.adjoint());
    h /= (operator_norm(h) * 1.3);
    const BlockEncoding be = exact_dilation(h, 1.0);
    const BlockEncoding poly = qsvt_apply(be, chebyshev_phases(n));
    CHECK(poly.alpha == 1.0);
    CHECK(poly.anc_qubits == be.anc_qubits + 1);
    CHECK(unitarity_residual(poly.unitary) < 1e-11);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Mat target = Mat::Zero(4, 4);
    for (Index i = 0; i < 4; ++i)
      target += cheb(n, es.eigenvalues()(i)) * es.eigenvectors().col(i) *
                es.eigenvectors().col(i).adjoint();
    CHECK(max_abs_diff(raw_block(poly), target) < 1e-8);
  }
}

TEST_CASE("qsvt_apply frozen values for degree two") {
  // T_2(x) = 2x^2 - 1 on scalar 0.3 and on diag(1, 0.5).
  Mat scalar(1, 1);
  scalar(0, 0) = 0.3;
  const BlockEncoding be1 = exact_dilation(scalar, 1.0);
  const BlockEncoding poly1 = qsvt_apply(be1, chebyshev_phases(2));
  CHECK(raw_block(poly1)(0, 0).real() == doctest::Approx(-0.82).epsilon(1e-10));
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 0.5;
  const BlockEncoding be2 = exact_dilation(diag, 1.0);
  const BlockEncoding poly2 = qsvt_apply(be2, chebyshev_phases(2));
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = -0.5;
  CHECK(max_abs_diff(raw_block(poly2), expected) < 1e-10);
}

TEST_CASE("amplify degree rule frozen values") {
  // Argument is the subnormalized amplitude 1/alpha.
  CHECK(amplify_degree(1.0) == 1);
  CHECK(amplify_degree(6.0 / 7.0) == 1);
  CHECK(amplify_degree(2.0 / 3.0) == 3);
  CHECK(amplify_degree(0.4) == 3);
  CHECK(amplify_degree(0.1) == 15);
  CHECK_THROWS_AS((void)amplify_degree(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)amplify_degree(1.5), std::invalid_argument);
}

TEST_CASE("amplify boosts a rank one block") {
  Rng rng(92);
  const Vec psi = haar_state(1, rng);
  for (double alpha : {7.0 / 6.0, 1.5, 2.5}) {
    const Mat m = psi * psi.adjoint();
    const BlockEncoding be = exact_dilation(m, alpha);
    const int degree = amplify_degree(1.0 / alpha);
    const AmplifyReport res = amplify(be, degree);
    CHECK(res.applications == degree);
    // Frozen gains for the three depolarizing-inverse alphas.
    const double expected = alpha == 2.5 ? 0.9440 : (alpha == 1.5 ? 0.8148 : 0.8571);
    CHECK(res.gain == doctest::Approx(expected).epsilon(5e-4));
    CHECK(res.gain >= 1.0 / alpha - 1e-12);
    CHECK(!res.rank1_warning);
    // Reported gain is a magnitude; the block carries the Chebyshev sign.
    const double tval = std::cos(degree * std::acos(1.0 / alpha));
    CHECK(res.gain == doctest::Approx(std::abs(tval)).epsilon(1e-10));
    const Mat block = raw_block(res.encoding);
    CHECK(max_abs_diff(block, Mat(tval * m)) < 1e-8);
  }
}

TEST_CASE("amplify warns when the block is far from rank one") {
  Rng rng(93);
  const Mat rho = rand_density(1, 2, rng);
  const BlockEncoding be = exact_dilation(rho, 2.0);
  const AmplifyReport res = amplify(be, 3);
  CHECK(res.rank1_warning);
}

TEST_CASE("qetu phase presets") {
  const PhaseSequence one = qetu_phases_one();
  REQUIRE(one.phases.size() == 1);
  CHECK(one.phases[0] == 0.0);
  const PhaseSequence sq = qetu_phases_square();
  REQUIRE(sq.phases.size() == 3);
  CHECK(sq.phases[0] == doctest::Approx(kPi / 8));
  CHECK(sq.phases[1] == doctest::Approx(-kPi / 4));
  CHECK(sq.phases[2] == doctest::Approx(kPi / 8));
  CHECK(sq.phases.front() == sq.phases.back());
}

TEST_CASE("qetu square phases give cos squared via the scalar recursion") {
  // One control qubit over a phase unitary e^{-i lambda}: the walk corner is
  // cos(phi1)cos(2 phi0) - sin(phi1)sin(2 phi0)cos(lambda) = cos^2(lambda/2).
  const PhaseSequence sq = qetu_phases_square();
  const double p0 = sq.phases[0], p1 = sq.phases[1];
  for (double lam : {0.2, 0.9, 2.1}) {
    const double scalar =
        std::cos(p1) * std::cos(2 * p0) - std::sin(p1) * std::sin(2 * p0) * std::cos(lam);
    CHECK(scalar == doctest::Approx(std::cos(lam / 2) * std::cos(lam / 2)).epsilon(1e-12));
  }
}

TEST_CASE("qetu_circuit encodes F of cos(H/2)") {
  Rng rng(94);
  Mat g(4, 4);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 4; ++i) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Mat h = 0.5 * (g + g.adjoint());
  h /= operator_norm(h);  // eigenvalues within [-1, 1] keep cos(H/2) positive
  const Mat u = mat_exp_i(h, -1.0);
  const BlockEncoding be = qetu_circuit(u, qetu_phases_square());
  CHECK(be.alpha == 1.0);
  CHECK(be.anc_qubits == 1);
  CHECK(unitarity_residual(be.unitary) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Mat target = Mat::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) {
    const double c = std::cos(es.eigenvalues()(i) / 2);
    target += (c * c) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  CHECK(max_abs_diff(raw_block(be), target) < 1e-10);
}

TEST_CASE("qetu_circuit identity preset passes the evolution through") {
  Rng rng(95);
  const Mat u = rand_unitary(1, rng);
  const BlockEncoding be = qetu_circuit(u, qetu_phases_one());
  // Degree zero: block equals the controlled evolution corner, the identity.
  CHECK(max_abs_diff(raw_block(be), Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("qetu_circuit rejects non-palindromic or even-length phases") {
  Rng rng(96);
  const Mat u = rand_unitary(1, rng);
  PhaseSequence bad;
  bad.phases = {0.1, 0.2, 0.3};
  CHECK_THROWS_AS((void)qetu_circuit(u, bad), std::invalid_argument);
  PhaseSequence even;
  even.phases = {0.1, 0.1};
  CHECK_THROWS_AS((void)qetu_circuit(u, even), std::invalid_argument);
}

TEST_CASE("hme_step against the ideal conjugation") {
  Rng rng(97);
  const LinearMap nm = identity_map(1);
  const Mat lam = choi_t1(nm);
  const Mat rho = rand_density(1, 2, rng);
  const Mat sigma = rand_density(1, 2, rng);
  const double delta = 0.05;
  const Mat stepped = hme_step(lam, rho, sigma, delta);
  CHECK(std::abs(stepped.trace() - 1.0) < 1e-12);
  const Mat gen = belt::apply(nm, rho);
  const Mat ideal = mat_exp_i(gen, -delta) * sigma * mat_exp_i(gen, delta);
  CHECK(trace_norm(stepped - ideal) / 2.0 <= 2.0 * delta * delta + 1e-12);
}

TEST_CASE("hme_evolve halves the error per step doubling") {
  Rng rng(98);
  const double t = 1.0;
  for (int which : {0, 1}) {
    const LinearMap nm = which ? reduction_map(1) : identity_map(1);
    const Mat lam = choi_t1(nm);
    const Mat rho = rand_density(1, 2, rng);
    const Mat sigma = rand_density(1, 2, rng);
    const Mat gen = belt::apply(nm, rho);
    const Mat ideal = mat_exp_i(gen, -t) * sigma * mat_exp_i(gen, t);
    double prev = -1.0;
    for (int steps : {16, 32, 64}) {
      const Mat evolved = hme_evolve(lam, rho, sigma, t, steps);
      const double err = trace_norm(evolved - ideal) / 2.0;
      if (prev > 0) CHECK(prev / err >= 1.6);
      prev = err;
    }
  }
}

TEST_CASE("qetu_hme converges to the coherent map circuit") {
  Rng rng(99);
  const LinearMap nm = reduction_map(1);
  const Mat rho = rand_density(1, 2, rng);
  const PhaseSequence phases = qetu_phases_square();
  double prev = -1.0;
  for (int steps : {8, 16}) {
    const QetuHmeReport rep = qetu_hme(nm, rho, phases, steps);
    CHECK(rep.copies == rep.degree * steps);
    CHECK(rep.degree == 2);
    if (prev > 0) CHECK(rep.deviation < prev);
    prev = rep.deviation;
  }
  CHECK(prev < 0.05);
}
