#include "ergocert/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ergocert/rng.hpp"
#include "ergocert/text.hpp"
#include "ergocert/version.hpp"

namespace ergocert {

void SweepConfig::validate() const {
  if (realizations < 1) {
    throw Error(ErrorKind::InvalidArgument, "realizations must be >= 1");
  }
  if (shots.has_value() != delta.has_value()) {
    throw Error(ErrorKind::InvalidArgument,
                "shots and delta must be given together");
  }
  if (shots.has_value() && *shots < 1) {
    throw Error(ErrorKind::ZeroShots, "shots must be >= 1");
  }
  if (delta.has_value() && !(*delta > 0.0 && *delta < 1.0)) {
    throw Error(ErrorKind::InvalidDelta, "delta outside (0, 1)");
  }
}

std::tuple<double, double, double> aggregate_median_iqr(
    std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorKind::EmptyInput, "no values to aggregate");
  }
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= values.size()) return values.back();
    return values[i] + frac * (values[i + 1] - values[i]);
  };
  return {quantile(0.5), quantile(0.25), quantile(0.75)};
}

namespace {

struct RealizationOutcome {
  std::vector<double> bounds;  // per K, NaN when excluded
  std::vector<bool> failed;
};

}  // namespace

SweepResult run_sweep(const SweepConfig& config,
                      const std::vector<int>& k_list) {
  config.validate();
  if (k_list.empty()) {
    throw Error(ErrorKind::EmptyInput, "empty K list");
  }
  const int n = config.hamiltonian.n;
  const int k_max_allowed = (1 << (2 * n)) - 1;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1 || k_list[i] > k_max_allowed) {
      throw Error(ErrorKind::InvalidArgument,
                  "K = " + std::to_string(k_list[i]) + " outside [1, " +
                      std::to_string(k_max_allowed) + "]");
    }
    if (i > 0 && k_list[i] <= k_list[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "K list must be increasing");
    }
  }

  const HamiltonianData H = build_spin_chain(config.hamiltonian);
  const DensityMatrix rho =
      make_reference_state(config.state, n, &H, config.state_param);
  const double exact = exact_ergotropy(rho, H).value;
  const int k_count = static_cast<int>(k_list.size());
  const int k_max = k_list.back();

  CertifyOptions cert_options;
  cert_options.objective.kind = config.objective;
  if (config.objective == StepOneObjective::Kind::Linear) {
    cert_options.objective = StepOneObjective::linear_functional(H.matrix);
  }
  cert_options.solver = config.solver;

  auto run_realization = [&](int r) {
    RealizationOutcome outcome;
    outcome.bounds.assign(static_cast<std::size_t>(k_count),
                          std::numeric_limits<double>::quiet_NaN());
    outcome.failed.assign(static_cast<std::size_t>(k_count), false);

    const std::vector<PauliString> order =
        hierarchical_order(n, mix_seed(config.base_seed,
                                       static_cast<std::uint64_t>(r)));
    std::vector<double> targets(static_cast<std::size_t>(k_max));
    std::vector<double> epsilons(static_cast<std::size_t>(k_max), 0.0);
    for (int i = 0; i < k_max; ++i) {
      const auto& p = order[static_cast<std::size_t>(i)];
      if (config.shots.has_value()) {
        targets[static_cast<std::size_t>(i)] =
            simulate_shots(rho, p, *config.shots,
                           mix_seed(config.base_seed,
                                    static_cast<std::uint64_t>(r),
                                    static_cast<std::uint64_t>(i)))
                .estimate;
      } else {
        targets[static_cast<std::size_t>(i)] = expectation(rho.matrix, p);
      }
    }
    if (config.shots.has_value() && config.monotone) {
      // Fixed union bound over the whole chain keeps the sets nested.
      const double eps = hoeffding_epsilon(*config.shots, k_max, *config.delta);
      std::fill(epsilons.begin(), epsilons.end(), eps);
    }

    MonotoneSession session;
    double previous_bound = 0.0;
    for (int ki = 0; ki < k_count; ++ki) {
      const int K = k_list[static_cast<std::size_t>(ki)];
      FeasibleSetSpec spec;
      spec.dim = static_cast<int>(Eigen::Index{1} << n);
      spec.provenance = config.shots.has_value() ? Provenance::Estimated
                                                 : Provenance::Exact;
      double eps_k = 0.0;
      if (config.shots.has_value() && !config.monotone) {
        eps_k = hoeffding_epsilon(*config.shots, K, *config.delta);
      }
      for (int i = 0; i < K; ++i) {
        const double eps = config.shots.has_value()
                               ? (config.monotone
                                      ? epsilons[static_cast<std::size_t>(i)]
                                      : eps_k)
                               : 0.0;
        spec.add_pauli(order[static_cast<std::size_t>(i)],
                       targets[static_cast<std::size_t>(i)], eps);
      }
      try {
        const CertificationResult result =
            config.monotone ? certify_monotone(session, spec, H, cert_options)
                            : certify(spec, H, cert_options);
        outcome.bounds[static_cast<std::size_t>(ki)] = result.bound;
        previous_bound = result.bound;
      } catch (const InfeasibleSetError&) {
        outcome.failed[static_cast<std::size_t>(ki)] = true;
        if (config.monotone) {
          outcome.bounds[static_cast<std::size_t>(ki)] = previous_bound;
        }
      }
    }
    return outcome;
  };

  const int R = config.realizations;
  std::vector<RealizationOutcome> outcomes(static_cast<std::size_t>(R));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(R));
  {
    std::atomic<int> next{0};
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(R));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (int r; (r = next.fetch_add(1)) < R;) {
          try {
            outcomes[static_cast<std::size_t>(r)] = run_realization(r);
          } catch (...) {
            errors[static_cast<std::size_t>(r)] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  SweepResult result;
  result.exact_ergotropy = exact;
  for (int ki = 0; ki < k_count; ++ki) {
    SweepRow row;
    row.K = k_list[static_cast<std::size_t>(ki)];
    row.exact = exact;
    std::vector<double> bounds;
    for (int r = 0; r < R; ++r) {
      const auto& outcome = outcomes[static_cast<std::size_t>(r)];
      if (outcome.failed[static_cast<std::size_t>(ki)]) {
        ++row.feasibility_failures;
      }
      const double b = outcome.bounds[static_cast<std::size_t>(ki)];
      if (std::isfinite(b)) bounds.push_back(b);
    }
    if (!bounds.empty()) {
      std::tie(row.median, row.q25, row.q75) = aggregate_median_iqr(bounds);
    } else {
      row.median = row.q25 = row.q75 =
          std::numeric_limits<double>::quiet_NaN();
    }
    result.total_feasibility_failures += row.feasibility_failures;
    result.rows.push_back(row);
  }
  return result;
}

namespace {

nlohmann::json config_json(const SweepConfig& config) {
  nlohmann::json j;
  j["n"] = config.hamiltonian.n;
  j["preset"] = config.preset;
  j["j1"] = config.hamiltonian.j1;
  j["j2"] = config.hamiltonian.j2;
  j["b"] = config.hamiltonian.b;
  j["g"] = config.hamiltonian.g;
  j["jy"] = config.hamiltonian.jy;
  j["delta_z"] = config.hamiltonian.delta;
  j["state"] = state_kind_name(config.state);
  j["state_param"] = config.state_param;
  j["realizations"] = config.realizations;
  j["seed"] = config.base_seed;
  if (config.shots.has_value()) {
    j["shots"] = *config.shots;
    j["delta"] = *config.delta;
  }
  j["objective"] = config.objective == StepOneObjective::Kind::MinPurity
                       ? "purity"
                       : "linear";
  j["monotone"] = config.monotone;
  return j;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<int>& k_list,
                     const SweepResult& result) {
  out << "# schema=1\n";
  out << "# tool=ergocert " << kVersion << "\n";
  out << "# config=" << config_json(config).dump() << "\n";
  out << "# klist=";
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (i > 0) out << " ";
    out << k_list[i];
  }
  out << "\n";
  out << "K,median,q25,q75,exact,feasibility_failures\n";
  for (const auto& row : result.rows) {
    out << row.K << "," << format_double(row.median) << ","
        << format_double(row.q25) << "," << format_double(row.q75) << ","
        << format_double(row.exact) << "," << row.feasibility_failures << "\n";
  }
}

CertifyFileResult run_certify_file(const ExperimentPlan& plan,
                                   const HamiltonianData& H, bool monotone,
                                   const CertifyOptions& options) {
  if (plan.records.empty()) {
    throw Error(ErrorKind::EmptyInput, "record list is empty");
  }
  if (!plan.delta.has_value()) {
    throw Error(ErrorKind::InvalidDelta, "no delta configured for the plan");
  }
  const int n = plan.records.front().pauli.n();
  if ((Eigen::Index{1} << n) != H.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "record string length vs Hamiltonian dimension");
  }
  const int k_total = plan.observable_count();
  std::vector<double> epsilons(static_cast<std::size_t>(k_total));
  for (int i = 0; i < k_total; ++i) {
    const auto& record = plan.records[static_cast<std::size_t>(i)];
    if (record.pauli.n() != n) {
      throw Error(ErrorKind::DimensionMismatch, "record string lengths differ");
    }
    // Plan-global union bound: epsilon is fixed across prefixes so the
    // feasible sets are nested and the monotone session applies.
    epsilons[static_cast<std::size_t>(i)] =
        hoeffding_epsilon(record.shots, k_total, *plan.delta);
  }

  CertifyFileResult result;
  MonotoneSession session;
  double previous_bound = 0.0;
  for (int K = 1; K <= k_total; ++K) {
    FeasibleSetSpec spec;
    spec.dim = static_cast<int>(H.dim());
    spec.provenance = Provenance::Estimated;
    for (int i = 0; i < K; ++i) {
      const auto& record = plan.records[static_cast<std::size_t>(i)];
      spec.add_pauli(record.pauli, record.estimate,
                     epsilons[static_cast<std::size_t>(i)]);
    }
    CertifyFileRow row;
    row.K = K;
    try {
      const CertificationResult cert =
          monotone ? certify_monotone(session, spec, H, options)
                   : certify(spec, H, options);
      row.bound = cert.bound;
      row.unitary_updated = cert.unitary_updated;
      previous_bound = cert.bound;
    } catch (const InfeasibleSetError& e) {
      row.bound = previous_bound;
      row.infeasible = true;
      row.advice_epsilon = e.advice_epsilon();
      ++result.infeasible_prefixes;
    }
    result.rows.push_back(row);
  }
  result.best_bound = 0.0;
  for (const auto& row : result.rows) {
    result.best_bound = std::max(result.best_bound, row.bound);
    if (row.unitary_updated) result.last_update_K = row.K;
  }
  return result;
}

void write_certify_file_csv(std::ostream& out, const CertifyFileResult& result,
                            const std::string& provenance) {
  out << "# schema=1\n";
  out << "# tool=ergocert " << kVersion << "\n";
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "K,bound,unitary_updated,infeasible,advice_epsilon\n";
  for (const auto& row : result.rows) {
    out << row.K << "," << format_double(row.bound) << ","
        << (row.unitary_updated ? 1 : 0) << "," << (row.infeasible ? 1 : 0)
        << "," << format_double(row.advice_epsilon) << "\n";
  }
  out << "# best_bound=" << format_double(result.best_bound) << "\n";
  out << "# last_update_K=" << result.last_update_K << "\n";
}

}  // namespace ergocert
