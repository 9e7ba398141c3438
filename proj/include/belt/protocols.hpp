#pragma once

#include "belt/spectral.hpp"

#include <functional>
#include <optional>

namespace belt {

// Fair coin between a global Haar state on 2q qubits and a product of two
// independent q-qubit Haar states.
struct PiSample {
  Vec state;  // ket on 2q qubits
  bool entangled = false;
  int q = 0;
};

PiSample sample_pi(int q, Rng& rng);

// Per-run probability of the all-zeros outcome with sigma = rho:
// (1/4) Tr[(R(x)I)(rho) rho (R(x)I)(rho)].
double detection_prob_formula(const Vec& psi, int q);

// Same number from the materialized circuit: LCU encoding of the partially
// transposed Choi matrix of R(x)I, assembled and post-selected.
double detection_prob_circuit(const Vec& psi, int q, int qubit_cap = kQubitCap);

// (2, 1, 0)-encoding of that Choi matrix: both terms are swap products.
BlockEncoding reduction_lcu(int q);

struct DetectOutcome {
  bool entangled_label = false;
  bool classified_entangled = false;
  double prob = 0.0;
};

struct DetectReport {
  int q = 0;
  int samples = 0;
  int trials_per_sample = 0;  // K
  bool circuit_mode = false;
  long oracle_calls_per_sample = 0;  // 3K
  long oracle_calls_total = 0;
  double success_rate = 0.0;        // correct classifications / samples
  double mean_prob_entangled = 0.0; // over entangled-labeled samples
  int entangled_count = 0;
  std::vector<DetectOutcome> outcomes;
};

DetectReport detect_entanglement(int q, int samples, int k_trials, bool circuit_mode, Rng rng,
                                 int jobs = 1);

double ed_success_rate(int q, int samples, int k_trials, Rng rng, int jobs = 1);

struct InvertReport {
  double alpha = 0.0;            // ||Lam_{E^{-1}}^{T1}||_inf
  double overlap = 0.0;          // <psi| sigma |psi>
  double prob_formula = 0.0;     // per-run success
  double prob_circuit = 0.0;
  long budget = 0;               // ceil(log(1/delta) / -log(1 - p))
  long trials = 0;
  long successes = 0;
  double empirical_rate = 0.0;
  double fidelity = 0.0;         // <psi| conditional |psi> on success
  long calls_per_trial = 0;
  long oracle_calls = 0;
  bool succeeded = false;
  bool amplified = false;
  int degree = 0;
  double gain = 0.0;
  bool rank1_warning = false;
};

// Protocol mode: geometric repetition until the all-zeros outcome or the
// delta-derived budget is exhausted.
InvertReport invert_channel(const LinearMap& channel, const Vec& psi, const Mat& sigma,
                            bool amplified, double delta, Rng rng);

// Pooled mode: fixed number of independent single-shot trials.
InvertReport invert_trials(const LinearMap& channel, const Vec& psi, const Mat& sigma,
                           bool amplified, long trials, Rng rng, int jobs = 1);

struct PdoSpec {
  int dims = 1;           // d
  int grid_exp = 1;       // p, P = 2^p points per axis
  std::function<Cplx(const std::vector<int>&, const std::vector<int>&)> symbol;
};

// T = B F with B[x, xi] = a(x, xi) e^{2 pi i x.xi / P} and
// F[xi, y] = P^{-d} e^{-2 pi i y.xi / P}; a == 1 gives T = I.
Mat pdo_build(const PdoSpec& spec);

PdoSpec pdo_symbol_one(int dims, int grid_exp);

// a(x, xi) = 1 - 2 pi i grad(omega)(x) . xi + 4 pi^2 |xi|^2 with signed
// frequencies; periodic central differences for the gradient.
PdoSpec pdo_symbol_elliptic(int dims, int grid_exp,
                            std::function<double(const std::vector<int>&)> omega);

// Conjugation circuit: dilate T once, give each factor its own ancilla,
// sandwich the inter-register swap, then run the purification assembly.
// Result encodes T rho T^dag with alpha = ||T||_inf^2.
BlockEncoding pdo_conjugate(const Mat& t, const Mat& rho, int qubit_cap = kQubitCap);

// Deterministic index-sharded parallel loop; results must be written into
// per-index slots so the reduction is order-independent.
void parallel_for(long count, int jobs, const std::function<void(long)>& body);

}  // namespace belt
