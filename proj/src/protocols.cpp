#include "belt/protocols.hpp"

#include <cmath>
#include <thread>

namespace belt {

void parallel_for(long count, int jobs, const std::function<void(long)>& body) {
  if (jobs <= 1 || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  const int workers = int(std::min<long>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (long i = w; i < count; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

PiSample sample_pi(int q, Rng& rng) {
  if (q < 1) throw std::invalid_argument("sample_pi: q must be positive");
  PiSample s;
  s.q = q;
  s.entangled = rng.uniform() < 0.5;
  if (s.entangled) {
    s.state = haar_state(2 * q, rng);
  } else {
    const Vec a = haar_state(q, rng);
    const Vec b = haar_state(q, rng);
    s.state = kron(a, b);
  }
  return s;
}

double detection_prob_formula(const Vec& psi, int q) {
  const Index d = dim_of(q);
  if (psi.size() != d * d) throw std::invalid_argument("detection_prob_formula: size mismatch");
  // rows indexed by the A register: M(a, b) = psi[a d + b]
  Mat m(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) m(a, b) = psi[a * d + b];
  // (I (x) rho_B) psi - psi in matrix form; rho_B^T = M^dag M
  const Mat residual = m * (m.adjoint() * m) - m;
  return 0.25 * residual.squaredNorm();
}

namespace {

}  // namespace

// Lam^{T1} of R (x) I on (q | q) qubits is I13 S24 - S13 S24 on registers
// (inA, inB, outA, outB): both terms are swap products, so a 2-term LCU.
BlockEncoding reduction_lcu(int q) {
  const QubitSplit split{q, q, q, q};
  const Mat s24 = embed(swap_matrix(q), split, {1, 3});
  const Mat s13s24 = embed(swap_matrix(q), split, {0, 2}) * s24;
  return lcu({1.0, -1.0}, {s24, s13s24});
}

double detection_prob_circuit(const Vec& psi, int q, int qubit_cap) {
  const Index d2 = dim_of(2 * q);
  if (psi.size() != d2) throw std::invalid_argument("detection_prob_circuit: size mismatch");
  const Mat rho = psi * psi.adjoint();
  const BlockEncoding u_map = reduction_lcu(q);
  const PurificationOracle oracle = purify(rho);
  const BlockEncoding v = belt_assemble(u_map, oracle, 2 * q, 2 * q, qubit_cap);
  return postselect(v, rho).success_prob;
}

DetectReport detect_entanglement(int q, int samples, int k_trials, bool circuit_mode, Rng rng,
                                 int jobs) {
  if (samples < 1) throw std::invalid_argument("detect_entanglement: samples must be positive");
  if (k_trials < 0) throw std::invalid_argument("detect_entanglement: negative trial count");
  if (circuit_mode && 4 * q + 1 > kQubitCap)
    throw std::invalid_argument("detect_entanglement: circuit mode exceeds the qubit cap");
  DetectReport report;
  report.q = q;
  report.samples = samples;
  report.trials_per_sample = k_trials;
  report.circuit_mode = circuit_mode;
  report.oracle_calls_per_sample = 3L * k_trials;
  report.oracle_calls_total = report.oracle_calls_per_sample * samples;
  report.outcomes.resize(samples);

  parallel_for(samples, jobs, [&](long i) {
    Rng local = rng.derive(std::uint64_t(i));
    const PiSample s = sample_pi(q, local);
    const double p =
        circuit_mode ? detection_prob_circuit(s.state, q) : detection_prob_formula(s.state, q);
    bool hit = false;
    for (int t = 0; t < k_trials; ++t)
      if (local.uniform() < p) hit = true;
    report.outcomes[i] = {s.entangled, hit, p};
  });

  long correct = 0;
  double p_sum = 0.0;
  for (const auto& o : report.outcomes) {
    if (o.classified_entangled == o.entangled_label) ++correct;
    if (o.entangled_label) {
      ++report.entangled_count;
      p_sum += o.prob;
    }
  }
  report.success_rate = double(correct) / samples;
  report.mean_prob_entangled = report.entangled_count > 0 ? p_sum / report.entangled_count : 0.0;
  return report;
}

double ed_success_rate(int q, int samples, int k_trials, Rng rng, int jobs) {
  return detect_entanglement(q, samples, k_trials, false, rng, jobs).success_rate;
}

namespace {

struct InvertSetup {
  LinearMap inverse;
  Mat lam_t1;
  double alpha = 0.0;
  BlockEncoding assembled;  // plain or amplified
  double prob_circuit = 0.0;
  double fidelity = 0.0;
  long calls_per_trial = 0;
  int degree = 0;
  double gain = 0.0;
  bool rank1_warning = false;
};

InvertSetup invert_setup(const LinearMap& channel, const Vec& psi, const Mat& sigma,
                         bool amplified) {
  if (channel.in_qubits != channel.out_qubits)
    throw std::invalid_argument("invert_channel: channel must preserve the system size");
  const Index d = dim_of(channel.in_qubits);
  if (psi.size() != d || sigma.rows() != d)
    throw std::invalid_argument("invert_channel: dimension mismatch");

  InvertSetup s;
  s.inverse = invert(channel);
  s.lam_t1 = choi_t1(s.inverse);
  s.alpha = operator_norm(s.lam_t1);
  const BlockEncoding u_map = exact_dilation(s.lam_t1, s.alpha);
  const Mat rho_in = belt::apply(channel, Mat(psi * psi.adjoint()));
  const PurificationOracle oracle = purify(rho_in);
  BlockEncoding v = belt_assemble(u_map, oracle, channel.in_qubits, channel.out_qubits);
  s.calls_per_trial = 2;  // the purification oracle and its inverse inside V
  if (amplified) {
    const int n = amplify_degree(1.0 / s.alpha);
    AmplifyReport amp = amplify(v, n);
    s.degree = n;
    s.gain = amp.gain;
    s.rank1_warning = amp.rank1_warning;
    s.calls_per_trial = 2L * amp.applications;
    v = std::move(amp.encoding);
  }
  const PostSelection ps = postselect(v, sigma);
  s.prob_circuit = ps.success_prob;
  if (ps.has_state) s.fidelity = (psi.adjoint() * ps.conditional_state * psi)(0, 0).real();
  s.assembled = std::move(v);
  return s;
}

InvertReport report_from_setup(const InvertSetup& s, const Vec& psi, const Mat& sigma,
                               bool amplified) {
  InvertReport r;
  r.alpha = s.alpha;
  r.overlap = (psi.adjoint() * sigma * psi)(0, 0).real();
  r.prob_circuit = s.prob_circuit;
  r.prob_formula = amplified ? s.gain * s.gain * r.overlap : r.overlap / (s.alpha * s.alpha);
  r.fidelity = s.fidelity;
  r.calls_per_trial = s.calls_per_trial;
  r.amplified = amplified;
  r.degree = s.degree;
  r.gain = s.gain;
  r.rank1_warning = s.rank1_warning;
  return r;
}

}  // namespace

InvertReport invert_channel(const LinearMap& channel, const Vec& psi, const Mat& sigma,
                            bool amplified, double delta, Rng rng) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("invert_channel: delta outside (0, 1)");
  const InvertSetup s = invert_setup(channel, psi, sigma, amplified);
  InvertReport r = report_from_setup(s, psi, sigma, amplified);
  const double p = std::min(1.0, std::max(0.0, s.prob_circuit));
  if (p >= 1.0)
    r.budget = 1;
  else if (p <= 0.0)
    r.budget = 0;
  else
    r.budget = long(std::ceil(std::log(1.0 / delta) / -std::log1p(-p)));
  for (long t = 0; t < r.budget && !r.succeeded; ++t) {
    ++r.trials;
    if (rng.uniform() < p) {
      r.succeeded = true;
      ++r.successes;
    }
  }
  r.empirical_rate = r.trials > 0 ? double(r.successes) / r.trials : 0.0;
  r.oracle_calls = r.trials * r.calls_per_trial;
  return r;
}

InvertReport invert_trials(const LinearMap& channel, const Vec& psi, const Mat& sigma,
                           bool amplified, long trials, Rng rng, int jobs) {
  if (trials < 1) throw std::invalid_argument("invert_trials: trials must be positive");
  const InvertSetup s = invert_setup(channel, psi, sigma, amplified);
  InvertReport r = report_from_setup(s, psi, sigma, amplified);
  const double p = std::min(1.0, std::max(0.0, s.prob_circuit));
  std::vector<unsigned char> hits(trials, 0);
  parallel_for(trials, jobs, [&](long i) {
    Rng local = rng.derive(std::uint64_t(i));
    hits[i] = local.uniform() < p ? 1 : 0;
  });
  r.trials = trials;
  for (long i = 0; i < trials; ++i) r.successes += hits[i];
  r.succeeded = r.successes > 0;
  r.empirical_rate = double(r.successes) / trials;
  r.oracle_calls = trials * r.calls_per_trial;
  r.budget = 0;
  return r;
}

Mat pdo_build(const PdoSpec& spec) {
  if (spec.dims < 1 || spec.grid_exp < 1) throw std::invalid_argument("pdo_build: bad grid");
  if (!spec.symbol) throw std::invalid_argument("pdo_build: missing symbol");
  const int q_total = spec.dims * spec.grid_exp;
  if (q_total > kQubitCap) throw std::invalid_argument("pdo_build: grid exceeds the qubit cap");
  const Index p = Index(1) << spec.grid_exp;
  const Index dim = dim_of(q_total);

  auto coords = [&](Index flat) {
    std::vector<int> x(spec.dims);
    for (int a = spec.dims - 1; a >= 0; --a) {
      x[a] = int(flat % p);
      flat /= p;
    }
    return x;
  };
  auto dot_mod = [&](const std::vector<int>& x, const std::vector<int>& xi) {
    long acc = 0;
    for (int a = 0; a < spec.dims; ++a) acc += long(x[a]) * xi[a];
    return acc;
  };

  std::vector<std::vector<int>> grid(dim);
  for (Index i = 0; i < dim; ++i) grid[i] = coords(i);

  const double tau = 2.0 * kPi / double(p);
  Mat b(dim, dim), f(dim, dim);
  const double scale = std::pow(double(p), -spec.dims);
  for (Index xi = 0; xi < dim; ++xi)
    for (Index x = 0; x < dim; ++x) {
      const long t = dot_mod(grid[x], grid[xi]);
      b(x, xi) = spec.symbol(grid[x], grid[xi]) * std::exp(Cplx(0.0, tau * double(t)));
      f(xi, x) = scale * std::exp(Cplx(0.0, -tau * double(t)));
    }
  return b * f;
}

PdoSpec pdo_symbol_one(int dims, int grid_exp) {
  PdoSpec spec{dims, grid_exp, nullptr};
  spec.symbol = [](const std::vector<int>&, const std::vector<int>&) { return Cplx(1.0, 0.0); };
  return spec;
}

PdoSpec pdo_symbol_elliptic(int dims, int grid_exp,
                            std::function<double(const std::vector<int>&)> omega) {
  if (!omega) throw std::invalid_argument("pdo_symbol_elliptic: missing coefficient field");
  PdoSpec spec{dims, grid_exp, nullptr};
  const int p = 1 << grid_exp;
  spec.symbol = [dims, p, omega](const std::vector<int>& x, const std::vector<int>& xi) {
    double grad_dot = 0.0;
    double xi2 = 0.0;
    for (int a = 0; a < dims; ++a) {
      const int xs = xi[a] < p / 2 ? xi[a] : xi[a] - p;  // signed frequency
      std::vector<int> fwd = x, bwd = x;
      fwd[a] = (x[a] + 1) % p;
      bwd[a] = (x[a] + p - 1) % p;
      grad_dot += 0.5 * (omega(fwd) - omega(bwd)) * xs;
      xi2 += double(xs) * xs;
    }
    return Cplx(1.0 + 4.0 * kPi * kPi * xi2, -2.0 * kPi * grad_dot);
  };
  return spec;
}

BlockEncoding pdo_conjugate(const Mat& t, const Mat& rho, int qubit_cap) {
  if (t.rows() != t.cols()) throw std::invalid_argument("pdo_conjugate: square operator required");
  if (rho.rows() != t.rows()) throw std::invalid_argument("pdo_conjugate: dimension mismatch");
  const int q = qubits_of(t.rows());
  const double alpha_t = operator_norm(t);
  if (!(alpha_t > 0.0)) throw std::invalid_argument("pdo_conjugate: zero operator");
  const BlockEncoding ut = exact_dilation(t, alpha_t);

  // Each dilation factor gets its own ancilla so the off-block parts cannot
  // leak into the composed corner.
  const QubitSplit split{1, 1, q, q};
  const Mat u_n = embed(ut.unitary, split, {0, 3}) * embed(swap_matrix(q), split, {2, 3}) *
                  embed(ut.unitary.adjoint(), split, {1, 3});
  BlockEncoding map_enc{u_n, alpha_t * alpha_t, 2, 0.0, 2 * q};
  map_enc.eps = verify(map_enc, choi_t1(conjugation(t)));

  const PurificationOracle oracle = purify(rho);
  return belt_assemble(map_enc, oracle, q, q, qubit_cap);
}

}  // namespace belt
