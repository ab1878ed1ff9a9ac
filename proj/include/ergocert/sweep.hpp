#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ergocert/certify.hpp"
#include "ergocert/measurement.hpp"
#include "ergocert/models.hpp"

namespace ergocert {

/// One experiment sweep: for every realization draw a hierarchical
/// measurement order, then certify prefixes of increasing K with exact
/// targets or simulated shot estimates.
struct SweepConfig {
  SpinChainParams hamiltonian;
  std::string preset = "custom";  // echoed into output provenance
  StateKind state = StateKind::GHZ;
  double state_param = 0.0;  // beta for gibbs, weight s for extremal
  int realizations = 20;
  std::uint64_t base_seed = 1;
  std::optional<long long> shots;  // absent = exact expectation values
  std::optional<double> delta;
  StepOneObjective::Kind objective = StepOneObjective::Kind::MinPurity;
  bool monotone = false;
  SolverOptions solver;

  void validate() const;
};

struct SweepRow {
  int K = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double exact = 0.0;
  int feasibility_failures = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double exact_ergotropy = 0.0;
  int total_feasibility_failures = 0;
};

SweepResult run_sweep(const SweepConfig& config, const std::vector<int>& k_list);

void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<int>& k_list, const SweepResult& result);

struct CertifyFileRow {
  int K = 0;
  double bound = 0.0;
  bool unitary_updated = false;
  bool infeasible = false;
  double advice_epsilon = 0.0;
};

struct CertifyFileResult {
  std::vector<CertifyFileRow> rows;
  double best_bound = 0.0;
  int last_update_K = 0;
  int infeasible_prefixes = 0;
};

/// Feeds record prefixes of increasing K through certify_monotone (or plain
/// certify when monotone is off). Per-record epsilons use the plan-global K
/// so the prefix feasible sets are nested. Infeasible prefixes carry the
/// previous bound forward and record the advice epsilon.
CertifyFileResult run_certify_file(const ExperimentPlan& plan,
                                   const HamiltonianData& H, bool monotone,
                                   const CertifyOptions& options = {});

void write_certify_file_csv(std::ostream& out, const CertifyFileResult& result,
                            const std::string& provenance);

/// Median and quartiles under the linear-interpolation convention
/// q(p) = x[i] + frac * (x[i+1] - x[i]) with i + frac = p * (n - 1).
std::tuple<double, double, double> aggregate_median_iqr(
    std::vector<double> values);

}  // namespace ergocert
