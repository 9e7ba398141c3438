#include "belt/io.hpp"
#include "belt/protocols.hpp"
#include "belt/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace {

using belt::Json;

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string mode;  // "<=", ">=", "=="
  bool pass = false;
};

void add_check(std::vector<Check>& checks, const std::string& name, double value, double limit,
               const std::string& mode) {
  Check c{name, value, limit, mode, false};
  if (mode == "<=")
    c.pass = value <= limit;
  else if (mode == ">=")
    c.pass = value >= limit;
  else
    c.pass = value == limit;
  checks.push_back(std::move(c));
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"limit", c.limit},
                   {"mode", c.mode},
                   {"pass", c.pass}});
  return arr;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  Json results;
  std::vector<Check> checks;
  std::vector<std::vector<std::string>> csv_rows;  // header first
};

int finish(const std::string& command, std::uint64_t seed, const Json& config, const Output& out,
           bool csv, bool pretty) {
  if (csv) {
    for (const auto& row : out.csv_rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) std::fputc(',', stdout);
        std::fputs(row[i].c_str(), stdout);
      }
      std::fputc('\n', stdout);
    }
  } else {
    Json env;
    env["command"] = command;
    env["version"] = belt::kVersion;
    env["seed"] = seed;
    env["config"] = config;
    env["results"] = out.results;
    env["checks"] = checks_to_json(out.checks);
    std::fputs(pretty ? env.dump(2).c_str() : env.dump().c_str(), stdout);
    std::fputc('\n', stdout);
  }
  for (const auto& c : out.checks)
    if (!c.pass) return 2;
  return 0;
}

// Pauli-string decomposition; only Hermitian targets have real coefficients.
belt::BlockEncoding pauli_lcu(const belt::Mat& target) {
  using belt::Mat;
  const int q = belt::qubits_of(target.rows());
  Mat paulis[4];
  paulis[0] = Mat::Identity(2, 2);
  paulis[1] = Mat(2, 2);
  paulis[1] << 0, 1, 1, 0;
  paulis[2] = Mat(2, 2);
  paulis[2] << 0, belt::Cplx(0, -1), belt::Cplx(0, 1), 0;
  paulis[3] = Mat(2, 2);
  paulis[3] << 1, 0, 0, -1;
  std::vector<double> coeffs;
  std::vector<Mat> terms;
  const long count = 1L << (2 * q);
  for (long t = 0; t < count; ++t) {
    Mat p = Mat::Identity(1, 1);
    for (int i = 0; i < q; ++i) p = belt::kron(p, paulis[(t >> (2 * (q - 1 - i))) & 3]);
    const belt::Cplx c = (p * target).trace() / double(target.rows());
    if (std::abs(c.imag()) > 1e-9)
      throw std::invalid_argument("lcu constructor: target is not Hermitian");
    if (std::abs(c.real()) > 1e-12) {
      coeffs.push_back(c.real());
      terms.push_back(std::move(p));
    }
  }
  return belt::lcu(coeffs, terms);
}

belt::BlockEncoding build_map_encoding(const belt::Mat& lam, const std::string& constructor) {
  if (constructor == "dilation") {
    const double alpha = std::max(belt::operator_norm(lam), 1e-300);
    return belt::exact_dilation(lam, alpha);
  }
  if (constructor == "lcu") return pauli_lcu(lam);
  if (constructor == "sparse") {
    const belt::Index d = lam.rows();
    int s = 0;
    for (belt::Index j = 0; j < d; ++j) {
      int col_nnz = 0, row_nnz = 0;
      for (belt::Index i = 0; i < d; ++i) {
        if (std::abs(lam(i, j)) > 1e-14) ++col_nnz;
        if (std::abs(lam(j, i)) > 1e-14) ++row_nnz;
      }
      s = std::max({s, col_nnz, row_nnz});
    }
    s = std::max(s, 1);
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    belt::BlockEncoding be = belt::sparse_block_encoding(lam / scale, s);
    be.alpha *= scale;
    be.eps = belt::verify(be, lam);
    return be;
  }
  throw std::invalid_argument("unknown constructor '" + constructor + "'");
}

Output run_verify(const std::string& map_arg, const std::string& rho_arg,
                  const std::string& sigma_arg, const std::string& constructor,
                  std::uint64_t seed) {
  (void)seed;
  const belt::LinearMap nm = belt::parse_map_arg(map_arg);
  const belt::Mat rho = belt::parse_density_arg(rho_arg, nm.in_qubits);
  const belt::Mat sigma =
      sigma_arg.empty() && nm.in_qubits == nm.out_qubits
          ? rho
          : belt::parse_density_arg(sigma_arg.empty() ? "mixed" : sigma_arg, nm.out_qubits);
  const belt::Mat lam = belt::choi_t1(nm);
  const belt::BlockEncoding u_map = build_map_encoding(lam, constructor);
  const belt::PurificationOracle oracle = belt::purify(rho);
  const belt::Mat target = belt::apply(nm, rho);
  const double prob_formula =
      belt::success_prob_formula(nm, rho, sigma, u_map.alpha);

  Output out;
  out.results["alpha"] = u_map.alpha;
  out.results["map_encoding_eps"] = u_map.eps;
  out.results["lam_norm"] = belt::operator_norm(lam);
  out.results["in_qubits"] = nm.in_qubits;
  out.results["out_qubits"] = nm.out_qubits;
  out.results["purifier_qubits"] = oracle.r_qubits;
  out.results["success_prob_formula"] = prob_formula;

  const int total = u_map.anc_qubits + oracle.r_qubits + nm.in_qubits + nm.out_qubits;
  out.results["total_qubits"] = total;
  double measured_eps = -1.0, prob_circuit = -1.0;
  if (total <= belt::kQubitCap) {
    const belt::BlockEncoding v =
        belt::belt_assemble(u_map, oracle, nm.in_qubits, nm.out_qubits);
    measured_eps = belt::verify(v, target);
    prob_circuit = belt::postselect(v, sigma).success_prob;
    out.results["measured_eps"] = measured_eps;
    out.results["success_prob_circuit"] = prob_circuit;
    add_check(out.checks, "assembled deviation within declared eps", measured_eps,
              u_map.eps + 1e-9, "<=");
    add_check(out.checks, "formula and circuit probabilities agree",
              std::abs(prob_circuit - prob_formula), 1e-10, "<=");
  } else {
    out.results["measured_eps"] = nullptr;
    out.results["success_prob_circuit"] = nullptr;
  }
  add_check(out.checks, "map encoding deviation small", u_map.eps, 1e-8, "<=");

  out.csv_rows.push_back({"alpha", "map_encoding_eps", "measured_eps", "success_prob_formula",
                          "success_prob_circuit"});
  out.csv_rows.push_back({fmt_double(u_map.alpha), fmt_double(u_map.eps),
                          measured_eps < 0 ? "" : fmt_double(measured_eps),
                          fmt_double(prob_formula),
                          prob_circuit < 0 ? "" : fmt_double(prob_circuit)});
  return out;
}

Output run_detect(int q, int samples, int k_trials, const std::string& mode, std::uint64_t seed,
                  int jobs) {
  const bool circuit = mode == "circuit";
  if (!circuit && mode != "formula") throw std::invalid_argument("detect: unknown mode");
  const belt::DetectReport rep =
      belt::detect_entanglement(q, samples, k_trials, circuit, belt::Rng(seed), jobs);
  Output out;
  out.results["success_rate"] = rep.success_rate;
  out.results["mean_prob_entangled"] = rep.mean_prob_entangled;
  out.results["entangled_count"] = rep.entangled_count;
  out.results["product_count"] = rep.samples - rep.entangled_count;
  out.results["oracle_calls_per_sample"] = rep.oracle_calls_per_sample;
  out.results["oracle_calls_total"] = rep.oracle_calls_total;
  double max_product_prob = 0.0;
  for (const auto& o : rep.outcomes)
    if (!o.entangled_label) max_product_prob = std::max(max_product_prob, o.prob);
  out.results["max_product_prob"] = max_product_prob;
  add_check(out.checks, "product samples have zero success probability", max_product_prob,
            1e-14, "<=");
  add_check(out.checks, "oracle tally is 3 per trial", double(rep.oracle_calls_per_sample),
            3.0 * k_trials, "==");
  out.csv_rows.push_back({"sample", "entangled", "prob", "classified_entangled"});
  for (size_t i = 0; i < rep.outcomes.size(); ++i) {
    const auto& o = rep.outcomes[i];
    out.csv_rows.push_back({std::to_string(i), o.entangled_label ? "1" : "0", fmt_double(o.prob),
                            o.classified_entangled ? "1" : "0"});
  }
  return out;
}

Output run_invert(const std::string& channel_arg, const std::string& sigma_arg,
                  const std::string& psi_arg, double delta, bool amplified, long trials,
                  std::uint64_t seed, int jobs) {
  const belt::LinearMap channel = belt::parse_map_arg(channel_arg);
  belt::Rng rng(seed);
  belt::Vec psi;
  if (psi_arg == "haar") {
    psi = belt::haar_state(channel.in_qubits, rng);
  } else {
    const belt::Mat m = belt::mat_from_json(belt::load_json_file(psi_arg));
    if (m.cols() != 1) throw std::invalid_argument("invert: psi must be a column vector");
    psi = m.col(0);
    psi /= psi.norm();
  }
  const belt::Mat sigma = belt::parse_density_arg(sigma_arg, channel.in_qubits);
  const belt::InvertReport rep =
      trials > 0 ? belt::invert_trials(channel, psi, sigma, amplified, trials, rng, jobs)
                 : belt::invert_channel(channel, psi, sigma, amplified, delta, rng);

  Output out;
  out.results["alpha"] = rep.alpha;
  out.results["overlap"] = rep.overlap;
  out.results["prob_formula"] = rep.prob_formula;
  out.results["prob_circuit"] = rep.prob_circuit;
  out.results["budget"] = rep.budget;
  out.results["trials"] = rep.trials;
  out.results["successes"] = rep.successes;
  out.results["empirical_rate"] = rep.empirical_rate;
  out.results["fidelity"] = rep.fidelity;
  out.results["calls_per_trial"] = rep.calls_per_trial;
  out.results["oracle_calls"] = rep.oracle_calls;
  out.results["succeeded"] = rep.succeeded;
  if (amplified) {
    out.results["degree"] = rep.degree;
    out.results["gain"] = rep.gain;
    out.results["rank1_warning"] = rep.rank1_warning;
  }
  add_check(out.checks, "formula and circuit probabilities agree",
            std::abs(rep.prob_circuit - rep.prob_formula), 1e-10, "<=");
  if (rep.prob_circuit > 1e-14)
    add_check(out.checks, "recovered fidelity", rep.fidelity, 1.0 - 1e-9, ">=");
  if (trials > 0) {
    const double sigma3 =
        3.0 * std::sqrt(std::max(0.0, rep.prob_circuit * (1.0 - rep.prob_circuit) / trials));
    add_check(out.checks, "empirical rate within 3 sigma of formula",
              std::abs(rep.empirical_rate - rep.prob_formula), sigma3, "<=");
  }
  out.csv_rows.push_back({"alpha", "overlap", "prob_formula", "prob_circuit", "trials",
                          "successes", "empirical_rate", "fidelity", "oracle_calls"});
  out.csv_rows.push_back({fmt_double(rep.alpha), fmt_double(rep.overlap),
                          fmt_double(rep.prob_formula), fmt_double(rep.prob_circuit),
                          std::to_string(rep.trials), std::to_string(rep.successes),
                          fmt_double(rep.empirical_rate), fmt_double(rep.fidelity),
                          std::to_string(rep.oracle_calls)});
  return out;
}

Output run_pdo(int d, int p, const std::string& symbol, const std::string& omega_arg,
               const std::string& rho_arg, std::uint64_t seed) {
  double omega_const = 1.0;
  if (omega_arg.rfind("const:", 0) == 0)
    omega_const = std::stod(omega_arg.substr(6));
  else
    throw std::invalid_argument("pdo: only const:<value> coefficient fields are supported");
  belt::PdoSpec spec =
      symbol == "const"
          ? belt::pdo_symbol_one(d, p)
          : belt::pdo_symbol_elliptic(d, p, [omega_const](const std::vector<int>&) {
              return omega_const;
            });
  if (symbol != "const" && symbol != "elliptic")
    throw std::invalid_argument("pdo: unknown symbol preset");
  const belt::Mat t = belt::pdo_build(spec);
  const int q = d * p;

  belt::Rng rng(seed);
  belt::Mat rho;
  if (rho_arg.rfind("rand", 0) == 0) {
    int rank = 2;
    const size_t colon = rho_arg.find(':');
    if (colon != std::string::npos) rank = std::stoi(rho_arg.substr(colon + 1));
    rho = belt::rand_density(q, rank, rng);
  } else {
    rho = belt::parse_density_arg(rho_arg, q);
  }

  Output out;
  out.results["dim"] = t.rows();
  const double alpha_t = belt::operator_norm(t);
  out.results["alpha_t"] = alpha_t;
  const double herm = (t - t.adjoint()).cwiseAbs().maxCoeff();
  out.results["hermitian_residual"] = herm;
  if (symbol == "const") {
    const double id_resid = belt::operator_norm(t - belt::Mat::Identity(t.rows(), t.cols()));
    out.results["identity_residual"] = id_resid;
    add_check(out.checks, "unit symbol gives the identity operator", id_resid, 1e-12, "<=");
  }
  if (symbol == "elliptic") {
    Eigen::SelfAdjointEigenSolver<belt::Mat> es(0.5 * (t + t.adjoint()),
                                                Eigen::EigenvaluesOnly);
    out.results["min_eigenvalue"] = es.eigenvalues().minCoeff();
    add_check(out.checks, "elliptic operator is Hermitian", herm, 1e-10, "<=");
    add_check(out.checks, "elliptic operator is positive", es.eigenvalues().minCoeff(), -1e-9,
              ">=");
  }

  const belt::BlockEncoding v = belt::pdo_conjugate(t, rho);
  const belt::Mat target = t * rho * t.adjoint();
  const double conj_eps = belt::verify(v, target);
  out.results["conjugation_eps"] = conj_eps;
  out.results["alpha"] = v.alpha;
  add_check(out.checks, "block equals T rho T^dag over alpha", conj_eps, 1e-9, "<=");

  const belt::LinearMap conj_map = belt::conjugation(t);
  const belt::Mat lam = belt::choi_t1(conj_map);
  const belt::BlockEncoding u2 = belt::exact_dilation(lam, belt::operator_norm(lam));
  const belt::BlockEncoding v2 = belt::belt_assemble(u2, belt::purify(rho), q, q);
  const double two_path =
      belt::operator_norm(belt::extract_block(v) - belt::extract_block(v2));
  out.results["two_path_delta"] = two_path;
  add_check(out.checks, "matches the map-level assembly", two_path, 1e-9, "<=");

  out.csv_rows.push_back({"dim", "alpha_t", "hermitian_residual", "conjugation_eps",
                          "two_path_delta"});
  out.csv_rows.push_back({std::to_string(t.rows()), fmt_double(alpha_t), fmt_double(herm),
                          fmt_double(conj_eps), fmt_double(two_path)});
  return out;
}

Output run_qetu_hme(const std::string& map_arg, const std::string& rho_arg,
                    const std::string& steps_arg, int degree, std::uint64_t seed) {
  const belt::LinearMap nm = belt::parse_map_arg(map_arg);
  belt::Rng rng(seed);
  belt::Mat rho;
  if (rho_arg.rfind("rand", 0) == 0) {
    int rank = 2;
    const size_t colon = rho_arg.find(':');
    if (colon != std::string::npos) rank = std::stoi(rho_arg.substr(colon + 1));
    rho = belt::rand_density(nm.in_qubits, rank, rng);
  } else {
    rho = belt::parse_density_arg(rho_arg, nm.in_qubits);
  }
  belt::PhaseSequence phases;
  if (degree == 0)
    phases = belt::qetu_phases_one();
  else if (degree == 2)
    phases = belt::qetu_phases_square();
  else
    throw std::invalid_argument("qetu-hme: shipped phase presets are degree 0 and 2");

  std::vector<int> steps;
  size_t pos = 0;
  while (pos <= steps_arg.size()) {
    const size_t comma = std::min(steps_arg.find(',', pos), steps_arg.size());
    steps.push_back(std::stoi(steps_arg.substr(pos, comma - pos)));
    pos = comma + 1;
  }

  Output out;
  Json rows = Json::array();
  out.csv_rows.push_back({"steps_per_u", "deviation", "copies"});
  std::vector<double> devs;
  for (int s : steps) {
    const belt::QetuHmeReport rep = belt::qetu_hme(nm, rho, phases, s);
    rows.push_back({{"steps_per_u", s}, {"deviation", rep.deviation}, {"copies", rep.copies}});
    out.csv_rows.push_back({std::to_string(s), fmt_double(rep.deviation),
                            std::to_string(rep.copies)});
    add_check(out.checks, "copies equal degree x steps (" + std::to_string(s) + ")",
              double(rep.copies), double(rep.degree) * s, "==");
    devs.push_back(rep.deviation);
  }
  for (size_t i = 1; i < devs.size(); ++i)
    add_check(out.checks,
              "deviation decreases (" + std::to_string(steps[i - 1]) + " to " +
                  std::to_string(steps[i]) + ")",
              devs[i], devs[i - 1], "<=");
  out.results["rows"] = std::move(rows);
  return out;
}

Output run_bench(std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  belt::Rng rng(seed);
  Output out;
  Json cases = Json::array();
  out.csv_rows.push_back({"case", "reps"});
  auto record = [&](const std::string& name, int reps, auto&& body) {
    const auto start = clock::now();
    for (int r = 0; r < reps; ++r) body();
    const double ms =
        std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start).count() /
        1000.0;
    std::fprintf(stderr, "bench %s: %d reps, %.2f ms\n", name.c_str(), reps, ms);
    cases.push_back({{"case", name}, {"reps", reps}});
    out.csv_rows.push_back({name, std::to_string(reps)});
  };

  const belt::Mat rho2 = belt::rand_density(4, 3, rng);
  record("purify-4q", 5, [&] { (void)belt::purify(rho2); });
  const belt::Vec psi = belt::haar_state(4, rng);
  record("detect-circuit-q2", 3, [&] { (void)belt::detection_prob_circuit(psi, 2); });
  record("detect-formula-q6", 200, [&] {
    belt::Rng local = rng.derive(7);
    const belt::Vec s = belt::haar_state(12, local);
    (void)belt::detection_prob_formula(s, 6);
  });
  const belt::Mat lam = belt::choi_t1(belt::depolarizing(0.25));
  record("hme-evolve-64", 3, [&] {
    (void)belt::hme_evolve(lam, belt::rand_density(1, 2, rng), belt::Mat::Identity(2, 2) * 0.5,
                           1.0, 64);
  });
  out.results["cases"] = std::move(cases);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"belt: block encodings of linear maps applied to density matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  if (const char* env = std::getenv("BELT_SEED")) seed = std::strtoull(env, nullptr, 10);
  int jobs = 1;
  bool csv = false, pretty = false;
  app.add_option("--seed", seed, "random seed (default from BELT_SEED)");
  app.add_option("--jobs", jobs, "worker threads for Monte Carlo loops");
  app.add_flag("--csv", csv, "emit a flat table instead of JSON");
  app.add_flag("--pretty", pretty, "indent JSON output");

  auto* c_verify = app.add_subcommand("verify", "assemble and check one map/state pair");
  std::string map_arg, rho_arg = "mixed", sigma_arg, constructor = "dilation";
  c_verify->add_option("--map", map_arg, "map shorthand or JSON file")->required();
  c_verify->add_option("--rho", rho_arg, "density shorthand or JSON file");
  c_verify->add_option("--sigma", sigma_arg, "reference state (default rho)");
  c_verify->add_option("--constructor", constructor, "dilation | lcu | sparse");

  auto* c_detect = app.add_subcommand("detect", "entanglement detection over random states");
  int q = 2, samples = 500, k_trials = 2;
  std::string mode = "formula";
  c_detect->add_option("--q", q, "qubits per side")->required();
  c_detect->add_option("--samples", samples, "number of sampled states");
  c_detect->add_option("--K", k_trials, "circuit repetitions per sample");
  c_detect->add_option("--mode", mode, "formula | circuit");

  auto* c_invert = app.add_subcommand("invert", "recover a pure state through an inverse map");
  std::string channel_arg, inv_sigma = "mixed", psi_arg = "haar";
  double delta = 0.01;
  bool amplify_flag = false;
  long trials = 0;
  c_invert->add_option("--channel", channel_arg, "channel shorthand or JSON file")->required();
  c_invert->add_option("--sigma", inv_sigma, "reference state guess");
  c_invert->add_option("--psi", psi_arg, "input pure state (haar | JSON file)");
  c_invert->add_option("--delta", delta, "failure probability target");
  c_invert->add_flag("--amplify", amplify_flag, "amplitude-amplified mode");
  c_invert->add_option("--trials", trials, "fixed trial count (pooled statistics mode)");

  auto* c_pdo = app.add_subcommand("pdo", "discretized pseudo-differential conjugation");
  int pdo_d = 1, pdo_p = 3;
  std::string symbol = "elliptic", omega_arg = "const:1", pdo_rho = "rand:2";
  c_pdo->add_option("--d", pdo_d, "coordinate dimensions");
  c_pdo->add_option("--p", pdo_p, "grid exponent, P = 2^p points per axis");
  c_pdo->add_option("--symbol", symbol, "elliptic | const");
  c_pdo->add_option("--omega", omega_arg, "coefficient field, const:<value>");
  c_pdo->add_option("--rho", pdo_rho, "state (rand[:rank] | shorthand | file)");

  auto* c_qetu = app.add_subcommand("qetu-hme", "copy-driven controlled evolution inside QETU");
  std::string qh_map = "reduction:1", qh_rho = "rand:2", steps_arg = "16";
  int degree = 2;
  c_qetu->add_option("--map", qh_map, "map shorthand or JSON file");
  c_qetu->add_option("--rho", qh_rho, "state (rand[:rank] | shorthand | file)");
  c_qetu->add_option("--steps", steps_arg, "comma list of steps per controlled-U");
  c_qetu->add_option("--degree", degree, "phase preset degree (0 or 2)");

  auto* c_bench = app.add_subcommand("bench", "time the dense kernels (timings on stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out;
    std::string command;
    Json config;
    if (app.got_subcommand(c_verify)) {
      command = "verify";
      config = {{"map", map_arg}, {"rho", rho_arg},
                {"sigma", sigma_arg.empty() ? "rho" : sigma_arg}, {"constructor", constructor}};
      out = run_verify(map_arg, rho_arg, sigma_arg, constructor, seed);
    } else if (app.got_subcommand(c_detect)) {
      command = "detect";
      config = {{"q", q}, {"samples", samples}, {"K", k_trials}, {"mode", mode}, {"jobs", jobs}};
      out = run_detect(q, samples, k_trials, mode, seed, jobs);
    } else if (app.got_subcommand(c_invert)) {
      command = "invert";
      config = {{"channel", channel_arg}, {"sigma", inv_sigma}, {"psi", psi_arg},
                {"delta", delta}, {"amplify", amplify_flag}, {"trials", trials}, {"jobs", jobs}};
      out = run_invert(channel_arg, inv_sigma, psi_arg, delta, amplify_flag, trials, seed, jobs);
    } else if (app.got_subcommand(c_pdo)) {
      command = "pdo";
      config = {{"d", pdo_d}, {"p", pdo_p}, {"symbol", symbol}, {"omega", omega_arg},
                {"rho", pdo_rho}};
      out = run_pdo(pdo_d, pdo_p, symbol, omega_arg, pdo_rho, seed);
    } else if (app.got_subcommand(c_qetu)) {
      command = "qetu-hme";
      config = {{"map", qh_map}, {"rho", qh_rho}, {"steps", steps_arg}, {"degree", degree}};
      out = run_qetu_hme(qh_map, qh_rho, steps_arg, degree, seed);
    } else if (app.got_subcommand(c_bench)) {
      command = "bench";
      config = Json::object();
      out = run_bench(seed);
    }
    return finish(command, seed, config, out, csv, pretty);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
