// ergocert: certified ergotropy lower bounds from partial measurement data.
//
// Subcommands:
//   exact         exact ergotropy of a configured state and Hamiltonian
//   certify       one certification from a Pauli constraint set
//   sweep         hierarchical measurement sweeps, aggregated to CSV
//   certify-file  monotone certification of a measurement record file
//   coverage      Monte-Carlo check of the joint confidence guarantee
//   analytic      closed-form bounds vs the two-step protocol
//
// Configuration may also be given as a JSON file (--config); explicitly
// passed command line flags override file values.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ergocert/analytic.hpp"
#include "ergocert/certify.hpp"
#include "ergocert/ergotropy.hpp"
#include "ergocert/measurement.hpp"
#include "ergocert/models.hpp"
#include "ergocert/pauli.hpp"
#include "ergocert/rng.hpp"
#include "ergocert/sweep.hpp"
#include "ergocert/text.hpp"
#include "ergocert/version.hpp"

namespace {

using namespace ergocert;
using nlohmann::json;

struct CommonOptions {
  int n = 3;
  std::string preset = "xxz";
  std::optional<double> j1, j2, b, g, jy, dz;
  std::string state = "ghz";
  double beta = -1.0;
  double sweight = 1.0;
  bool allow_slow = false;
};

SpinChainParams resolve_hamiltonian(const CommonOptions& common) {
  SpinChainParams p;
  p.n = common.n;
  if (common.preset == "xxz") {
    p = SpinChainParams::xxz(common.n, 1.0, 0.5, 0.0);
  } else if (common.preset == "annni") {
    p = SpinChainParams::annni(common.n, 1.0, -1.0, 0.5);
  } else if (common.preset == "mfi") {
    p = SpinChainParams::mfi(common.n, 0.5, 0.5, 1.0);
  } else if (common.preset == "custom") {
    p = SpinChainParams{common.n, 0, 0, 0, 0, 0, 0};
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "unknown preset \"" + common.preset + "\"");
  }
  if (common.j1) p.j1 = *common.j1;
  if (common.j2) p.j2 = *common.j2;
  if (common.b) p.b = *common.b;
  if (common.g) p.g = *common.g;
  if (common.jy) p.jy = *common.jy;
  if (common.dz) p.delta = *common.dz;
  return p;
}

void check_scale(int n, bool allow_slow) {
  if (n > 5) {
    throw Error(ErrorKind::DimensionTooLarge,
                "n > 5 is not supported by the command line tool");
  }
  if (n > 3 && !allow_slow) {
    throw Error(ErrorKind::InvalidArgument,
                "n > 3 runs minutes-scale SDPs; pass --allow-slow to confirm");
  }
}

double state_param(const CommonOptions& common, StateKind kind) {
  if (kind == StateKind::Gibbs) return common.beta;
  if (kind == StateKind::ExtremalSuperposition) return common.sweight;
  return 0.0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--n", common.n, "qubit count");
  cmd->add_option("--preset", common.preset,
                  "hamiltonian preset: xxz | annni | mfi | custom");
  cmd->add_option("--j1", common.j1, "nearest-neighbour XX coupling");
  cmd->add_option("--j2", common.j2, "next-nearest XX coupling");
  cmd->add_option("--bz", common.b, "transverse Z field");
  cmd->add_option("--gx", common.g, "X field");
  cmd->add_option("--jy", common.jy, "nearest-neighbour YY coupling");
  cmd->add_option("--dz", common.dz, "nearest-neighbour ZZ coupling");
  cmd->add_option("--state", common.state,
                  "true state: ghz | w | product | gibbs | extremal");
  cmd->add_option("--beta", common.beta, "inverse temperature for gibbs");
  cmd->add_option("--sweight", common.sweight,
                  "weight s of the extremal superposition");
  cmd->add_flag("--allow-slow", common.allow_slow, "permit n in {4, 5}");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  }
  return out;
}

// --config JSON: values become defaults, explicit flags still win because
// CLI11 only assigns bound variables for flags that were actually passed.
void apply_config_file(const std::string& path, CommonOptions& common,
                       json& extras) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::InvalidArgument, "cannot open config " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  if (doc.contains("n")) common.n = doc["n"].get<int>();
  if (doc.contains("preset")) common.preset = doc["preset"].get<std::string>();
  if (doc.contains("j1")) common.j1 = doc["j1"].get<double>();
  if (doc.contains("j2")) common.j2 = doc["j2"].get<double>();
  if (doc.contains("bz")) common.b = doc["bz"].get<double>();
  if (doc.contains("gx")) common.g = doc["gx"].get<double>();
  if (doc.contains("jy")) common.jy = doc["jy"].get<double>();
  if (doc.contains("dz")) common.dz = doc["dz"].get<double>();
  if (doc.contains("state")) common.state = doc["state"].get<std::string>();
  if (doc.contains("beta")) common.beta = doc["beta"].get<double>();
  if (doc.contains("sweight")) common.sweight = doc["sweight"].get<double>();
  if (doc.contains("allow_slow")) common.allow_slow = doc["allow_slow"].get<bool>();
  extras = doc;
}

template <typename T>
void config_value(const json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc[key].get<T>();
}

template <typename T>
void config_value(const json& doc, const char* key, std::optional<T>& target) {
  if (doc.contains(key) && !doc[key].is_null()) target = doc[key].get<T>();
}

int run_exact(const CommonOptions& common) {
  check_scale(common.n, common.allow_slow);
  const HamiltonianData H = build_spin_chain(resolve_hamiltonian(common));
  const StateKind kind = parse_state_kind(common.state);
  const DensityMatrix rho =
      make_reference_state(kind, common.n, &H, state_param(common, kind));
  const ErgotropyReport report = exact_ergotropy(rho, H);
  const auto [dephased, incoherent] = dephase_incoherent(rho, H);
  std::cout << "n=" << common.n << " preset=" << common.preset
            << " state=" << common.state << "\n";
  std::cout << "exact_ergotropy=" << format_double(report.value) << "\n";
  std::cout << "incoherent_ergotropy=" << format_double(incoherent) << "\n";
  std::cout << "coherent_ergotropy="
            << format_double(report.value - incoherent) << "\n";
  std::cout << "mean_energy="
            << format_double((H.matrix * rho.matrix).trace().real()) << "\n";
  std::cout << "ground_energy=" << format_double(H.energies(0)) << "\n";
  std::cout << "top_energy="
            << format_double(H.energies(H.energies.size() - 1)) << "\n";
  std::cout << "purity=" << format_double(rho.purity()) << "\n";
  return 0;
}

int run_certify_cmd(const CommonOptions& common, int k, std::uint64_t seed,
                    const std::string& paulis,
                    std::optional<long long> shots,
                    std::optional<double> delta,
                    const std::string& objective) {
  check_scale(common.n, common.allow_slow);
  if (shots.has_value() != delta.has_value()) {
    throw Error(ErrorKind::InvalidArgument,
                "--shots and --delta must be given together");
  }
  const HamiltonianData H = build_spin_chain(resolve_hamiltonian(common));
  const StateKind kind = parse_state_kind(common.state);
  const DensityMatrix rho =
      make_reference_state(kind, common.n, &H, state_param(common, kind));

  std::vector<PauliString> observables;
  if (!paulis.empty()) {
    for (const auto& label : split(paulis, ',')) {
      observables.push_back(parse_pauli(trim(label)));
    }
  } else {
    const auto order = hierarchical_order(common.n, mix_seed(seed, 0));
    if (k < 1 || k > static_cast<int>(order.size())) {
      throw Error(ErrorKind::InvalidArgument,
                  "--k outside [1, " + std::to_string(order.size()) + "]");
    }
    observables.assign(order.begin(), order.begin() + k);
  }

  FeasibleSetSpec spec;
  spec.dim = static_cast<int>(H.dim());
  const int K = static_cast<int>(observables.size());
  const double eps =
      shots ? hoeffding_epsilon(*shots, K, *delta) : 0.0;
  spec.provenance = shots ? Provenance::Estimated : Provenance::Exact;
  for (int i = 0; i < K; ++i) {
    const auto& p = observables[static_cast<std::size_t>(i)];
    double target;
    if (shots) {
      target = simulate_shots(rho, p, *shots,
                              mix_seed(seed, 0, static_cast<std::uint64_t>(i)))
                   .estimate;
    } else {
      target = expectation(rho.matrix, p);
    }
    spec.add_pauli(p, target, eps);
  }

  CertifyOptions options;
  if (objective == "energy") {
    options.objective = StepOneObjective::linear_functional(H.matrix);
  } else if (objective != "purity") {
    throw Error(ErrorKind::InvalidArgument,
                "objective must be purity or energy");
  }
  const CertificationResult result = certify(spec, H, options);
  const double exact = exact_ergotropy(rho, H).value;
  std::cout << "K=" << K << "\n";
  std::cout << "bound=" << format_double(result.bound) << "\n";
  std::cout << "raw_min=" << format_double(result.raw_min) << "\n";
  std::cout << "exact_reference=" << format_double(exact) << "\n";
  if (shots) std::cout << "epsilon=" << format_double(eps) << "\n";
  std::cout << "step1_iterations=" << result.step1.iterations
            << " step2_iterations=" << result.step2.iterations << "\n";
  std::cout << "step1_gap=" << format_double(result.step1.duality_gap)
            << " step2_gap=" << format_double(result.step2.duality_gap) << "\n";
  if (result.step1_state_degenerate) {
    std::cout << "note=step1 state has a near-degenerate spectrum; the "
                 "reported unitary follows the deterministic tie-break\n";
  }
  return 0;
}

std::vector<int> parse_klist(const std::string& klist, int kmax, int limit) {
  std::vector<int> out;
  if (!klist.empty()) {
    for (const auto& item : split(klist, ',')) {
      out.push_back(std::stoi(trim(item)));
    }
    return out;
  }
  const int cap = kmax > 0 ? std::min(kmax, limit) : limit;
  for (int k = 1; k <= cap; ++k) out.push_back(k);
  return out;
}

int run_sweep_cmd(const CommonOptions& common, const std::string& klist,
                  int kmax, int realizations, std::uint64_t seed,
                  std::optional<long long> shots, std::optional<double> delta,
                  bool monotone, const std::string& objective,
                  const std::string& out_path) {
  check_scale(common.n, common.allow_slow);
  SweepConfig config;
  config.hamiltonian = resolve_hamiltonian(common);
  config.preset = common.preset;
  config.state = parse_state_kind(common.state);
  config.state_param = state_param(common, config.state);
  config.realizations = realizations;
  config.base_seed = seed;
  config.shots = shots;
  config.delta = delta;
  config.monotone = monotone;
  if (objective == "energy") {
    config.objective = StepOneObjective::Kind::Linear;
  } else if (objective != "purity") {
    throw Error(ErrorKind::InvalidArgument,
                "objective must be purity or energy");
  }
  const int limit = (1 << (2 * common.n)) - 1;
  const std::vector<int> k_values = parse_klist(klist, kmax, limit);

  const SweepResult result = run_sweep(config, k_values);
  auto out = open_out(out_path);
  write_sweep_csv(out, config, k_values, result);
  std::cout << "wrote " << result.rows.size() << " rows to " << out_path
            << " (exact=" << format_double(result.exact_ergotropy)
            << ", feasibility_failures=" << result.total_feasibility_failures
            << ")\n";
  return result.total_feasibility_failures > 0 ? 2 : 0;
}

int run_certify_file_cmd(const CommonOptions& common,
                         const std::string& records_path,
                         std::optional<double> delta_override, bool monotone,
                         const std::string& out_path) {
  ExperimentPlan plan = load_records(records_path);
  for (const auto& warning : plan.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (delta_override) plan.delta = *delta_override;
  if (!plan.delta) {
    throw Error(ErrorKind::InvalidDelta,
                "no delta in the record file; pass --delta");
  }
  const int n = plan.records.front().pauli.n();
  CommonOptions with_n = common;
  with_n.n = n;
  check_scale(n, common.allow_slow);
  const HamiltonianData H = build_spin_chain(resolve_hamiltonian(with_n));

  const CertifyFileResult result = run_certify_file(plan, H, monotone);

  const StateKind kind = parse_state_kind(common.state);
  const DensityMatrix reference =
      make_reference_state(kind, n, &H, state_param(with_n, kind));
  const double exact = exact_ergotropy(reference, H).value;

  std::ostringstream provenance;
  provenance << "records=" << records_path << " delta="
             << format_double(*plan.delta) << " preset=" << common.preset
             << " n=" << n << " monotone=" << (monotone ? 1 : 0)
             << " reference_state=" << common.state
             << " reference_exact=" << format_double(exact);
  auto out = open_out(out_path);
  write_certify_file_csv(out, result, provenance.str());
  std::cout << "best_bound=" << format_double(result.best_bound)
            << " last_update_K=" << result.last_update_K
            << " reference_exact=" << format_double(exact)
            << " infeasible_prefixes=" << result.infeasible_prefixes << "\n";
  return result.infeasible_prefixes > 0 ? 2 : 0;
}

int run_coverage_cmd(const CommonOptions& common, int k, long long shots,
                     double delta, int repetitions, std::uint64_t seed) {
  check_scale(common.n, common.allow_slow);
  const HamiltonianData H = build_spin_chain(resolve_hamiltonian(common));
  const StateKind kind = parse_state_kind(common.state);
  const DensityMatrix rho =
      make_reference_state(kind, common.n, &H, state_param(common, kind));
  const auto order = hierarchical_order(common.n, mix_seed(seed, 0));
  if (k < 1 || k > static_cast<int>(order.size())) {
    throw Error(ErrorKind::InvalidArgument, "--k out of range");
  }
  ExperimentPlan plan;
  plan.delta = delta;
  for (int i = 0; i < k; ++i) {
    plan.records.push_back({order[static_cast<std::size_t>(i)], shots, 0.0});
  }
  const double rate = coverage_rate(rho, plan, repetitions, mix_seed(seed, 1));
  std::cout << "K=" << k << " shots=" << shots << " delta="
            << format_double(delta) << " repetitions=" << repetitions << "\n";
  std::cout << "violation_rate=" << format_double(rate) << "\n";
  std::cout << "guarantee_holds=" << (rate <= delta ? 1 : 0) << "\n";
  return 0;
}

int run_analytic_cmd(const CommonOptions& common, bool qubit_mode,
                     double zstar, double e0, double e1, int points,
                     double smax, const std::string& out_path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  if (qubit_mode) {
    if (std::abs(zstar) > 1.0) {
      throw Error(ErrorKind::OutsideBlochBall, "|zstar| > 1");
    }
    const HamiltonianData H = HamiltonianData::from_matrix(
        (Eigen::MatrixXcd(2, 2) << e0, 0.0, 0.0, e1).finished());
    const double xmax = std::sqrt(std::max(0.0, 1.0 - zstar * zstar));
    *out << "# schema=1\n# tool=ergocert " << kVersion << "\n";
    *out << "# mode=qubit zstar=" << format_double(zstar)
         << " e0=" << format_double(e0) << " e1=" << format_double(e1) << "\n";
    *out << "xstar,two_step,qubit_xz,energy_basis,oracle\n";
    for (int i = 0; i < points; ++i) {
      const double x =
          points > 1 ? -xmax + 2.0 * xmax * i / (points - 1) : 0.0;
      FeasibleSetSpec spec;
      spec.dim = 2;
      spec.add_pauli(parse_pauli("X"), x);
      spec.add_pauli(parse_pauli("Z"), zstar);
      const double two_step = certify(spec, H).bound;
      const QubitXZBound analytic = qubit_xz_bound({x, zstar, e0, e1});
      Eigen::VectorXd populations(2);
      populations << 0.5 * (1.0 + zstar), 0.5 * (1.0 - zstar);
      Eigen::VectorXd energies(2);
      energies << e0, e1;
      const double incoherent = energy_basis_bound(populations, energies);
      const double oracle = qubit_minimax_oracle(spec, H, 2001);
      *out << format_double(x) << "," << format_double(two_step) << ","
           << format_double(analytic.bound) << ","
           << format_double(incoherent) << "," << format_double(oracle)
           << "\n";
    }
    return 0;
  }

  check_scale(common.n, common.allow_slow);
  const HamiltonianData H = build_spin_chain(resolve_hamiltonian(common));
  const PauliDecomposition terms = pauli_decompose(H.matrix);
  *out << "# schema=1\n# tool=ergocert " << kVersion << "\n";
  *out << "# mode=spin-chain preset=" << common.preset << " n=" << common.n
       << " observables=hamiltonian-pauli-terms\n";
  *out << "s,mean_energy,exact,two_step,energy_basis\n";
  for (int i = 0; i < points; ++i) {
    const double s = points > 1 ? smax * i / (points - 1) : 0.0;
    const DensityMatrix rho =
        make_reference_state(StateKind::ExtremalSuperposition, common.n, &H, s);
    FeasibleSetSpec spec;
    spec.dim = static_cast<int>(H.dim());
    for (const auto& [p, coeff] : terms.terms) {
      if (p.is_identity()) continue;
      spec.add_pauli(p, expectation(rho.matrix, p));
    }
    const double two_step = certify(spec, H).bound;
    const Eigen::VectorXd populations =
        (H.eigenvectors.adjoint() * rho.matrix * H.eigenvectors)
            .diagonal()
            .real();
    const double incoherent = energy_basis_bound(populations, H.energies);
    const double exact = exact_ergotropy(rho, H).value;
    const double mean = (H.matrix * rho.matrix).trace().real();
    *out << format_double(s) << "," << format_double(mean) << ","
         << format_double(exact) << "," << format_double(two_step) << ","
         << format_double(incoherent) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified ergotropy lower bounds from partial information"};
  app.set_version_flag("--version", std::string("ergocert ") + kVersion);
  app.require_subcommand(1);

  CommonOptions common;
  json config_doc;
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }

  try {
    if (!config_path.empty()) {
      apply_config_file(config_path, common, config_doc);
    }

    // certify options
    int cert_k = 3;
    std::uint64_t cert_seed = 1;
    std::string cert_paulis;
    std::optional<long long> cert_shots;
    std::optional<double> cert_delta;
    std::string cert_objective = "purity";
    // sweep options
    std::string sweep_klist;
    int sweep_kmax = 0;
    int sweep_realizations = 20;
    std::uint64_t sweep_seed = 1;
    std::optional<long long> sweep_shots;
    std::optional<double> sweep_delta;
    bool sweep_monotone = false;
    std::string sweep_objective = "purity";
    std::string sweep_out = "sweep.csv";
    // certify-file options
    std::string records_path;
    std::optional<double> file_delta;
    bool file_monotone = true;
    std::string file_out = "certify_file.csv";
    // coverage options
    int cov_k = 10;
    long long cov_shots = 1000;
    double cov_delta = 0.05;
    int cov_reps = 500;
    std::uint64_t cov_seed = 1;
    // analytic options
    bool qubit_mode = false;
    double zstar = 0.0, qubit_e0 = -1.0, qubit_e1 = 1.0;
    int ana_points = 21;
    double smax = 1.0;
    std::string ana_out;

    config_value(config_doc, "k", cert_k);
    config_value(config_doc, "seed", cert_seed);
    config_value(config_doc, "shots", cert_shots);
    config_value(config_doc, "delta", cert_delta);
    config_value(config_doc, "objective", cert_objective);
    config_value(config_doc, "klist", sweep_klist);
    config_value(config_doc, "kmax", sweep_kmax);
    config_value(config_doc, "realizations", sweep_realizations);
    config_value(config_doc, "seed", sweep_seed);
    config_value(config_doc, "shots", sweep_shots);
    config_value(config_doc, "delta", sweep_delta);
    config_value(config_doc, "monotone", sweep_monotone);
    config_value(config_doc, "objective", sweep_objective);
    config_value(config_doc, "out", sweep_out);
    config_value(config_doc, "records", records_path);
    config_value(config_doc, "delta", file_delta);
    config_value(config_doc, "monotone", file_monotone);
    config_value(config_doc, "out", file_out);

    std::string ignored_config;
    app.add_option("--config", ignored_config, "JSON configuration file");

    auto* exact_cmd =
        app.add_subcommand("exact", "exact ergotropy of the configured state");
    add_common_flags(exact_cmd, common);
    exact_cmd->add_option("--config", ignored_config, "JSON configuration file");

    auto* certify_cmd =
        app.add_subcommand("certify", "certify one Pauli constraint set");
    add_common_flags(certify_cmd, common);
    certify_cmd->add_option("--config", ignored_config, "JSON configuration file");
    certify_cmd->add_option("--k", cert_k, "number of hierarchical Paulis");
    certify_cmd->add_option("--seed", cert_seed, "hierarchical order seed");
    certify_cmd->add_option("--paulis", cert_paulis,
                            "explicit comma-separated Pauli labels");
    certify_cmd->add_option("--shots", cert_shots,
                            "simulate this many shots per observable");
    certify_cmd->add_option("--delta", cert_delta, "confidence parameter");
    certify_cmd->add_option("--objective", cert_objective,
                            "step-(i) objective: purity | energy");

    auto* sweep_cmd = app.add_subcommand("sweep", "K sweep, CSV output");
    add_common_flags(sweep_cmd, common);
    sweep_cmd->add_option("--config", ignored_config, "JSON configuration file");
    sweep_cmd->add_option("--klist", sweep_klist, "comma-separated K values");
    sweep_cmd->add_option("--kmax", sweep_kmax, "use K = 1..kmax");
    sweep_cmd->add_option("--realizations", sweep_realizations,
                          "hierarchical order realizations");
    sweep_cmd->add_option("--seed", sweep_seed, "base seed");
    sweep_cmd->add_option("--shots", sweep_shots, "shots per observable");
    sweep_cmd->add_option("--delta", sweep_delta, "confidence parameter");
    sweep_cmd->add_flag("--monotone,!--no-monotone", sweep_monotone,
                        "conditional unitary updates");
    sweep_cmd->add_option("--objective", sweep_objective,
                          "step-(i) objective: purity | energy");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path");

    auto* file_cmd = app.add_subcommand(
        "certify-file", "monotone certification of a record file");
    add_common_flags(file_cmd, common);
    file_cmd->add_option("--config", ignored_config, "JSON configuration file");
    file_cmd->add_option("--records", records_path, "CSV or JSON record file")
        ->required();
    file_cmd->add_option("--delta", file_delta, "override the file delta");
    file_cmd->add_flag("--monotone,!--no-monotone", file_monotone,
                       "conditional unitary updates");
    file_cmd->add_option("--out", file_out, "output CSV path");

    auto* coverage_cmd = app.add_subcommand(
        "coverage", "empirical joint confidence-interval violation rate");
    add_common_flags(coverage_cmd, common);
    coverage_cmd->add_option("--config", ignored_config, "JSON configuration file");
    coverage_cmd->add_option("--k", cov_k, "observable count");
    coverage_cmd->add_option("--shots", cov_shots, "shots per observable");
    coverage_cmd->add_option("--delta", cov_delta, "confidence parameter");
    coverage_cmd->add_option("--reps", cov_reps, "simulated experiments");
    coverage_cmd->add_option("--seed", cov_seed, "base seed");

    auto* analytic_cmd = app.add_subcommand(
        "analytic", "two-step protocol vs closed-form bounds");
    add_common_flags(analytic_cmd, common);
    analytic_cmd->add_option("--config", ignored_config, "JSON configuration file");
    analytic_cmd->add_flag("--qubit", qubit_mode,
                           "single-qubit sigma-x/sigma-z comparison");
    analytic_cmd->add_option("--zstar", zstar, "fixed sigma-z expectation");
    analytic_cmd->add_option("--e0", qubit_e0, "qubit ground energy");
    analytic_cmd->add_option("--e1", qubit_e1, "qubit excited energy");
    analytic_cmd->add_option("--points", ana_points, "grid points");
    analytic_cmd->add_option("--smax", smax, "largest superposition weight");
    analytic_cmd->add_option("--out", ana_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (exact_cmd->parsed()) return run_exact(common);
    if (certify_cmd->parsed()) {
      return run_certify_cmd(common, cert_k, cert_seed, cert_paulis,
                             cert_shots, cert_delta, cert_objective);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep_cmd(common, sweep_klist, sweep_kmax,
                           sweep_realizations, sweep_seed, sweep_shots,
                           sweep_delta, sweep_monotone, sweep_objective,
                           sweep_out);
    }
    if (file_cmd->parsed()) {
      return run_certify_file_cmd(common, records_path, file_delta,
                                  file_monotone, file_out);
    }
    if (coverage_cmd->parsed()) {
      return run_coverage_cmd(common, cov_k, cov_shots, cov_delta, cov_reps,
                              cov_seed);
    }
    if (analytic_cmd->parsed()) {
      return run_analytic_cmd(common, qubit_mode, zstar, qubit_e0, qubit_e1,
                              ana_points, smax, ana_out);
    }
  } catch (const InfeasibleSetError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
