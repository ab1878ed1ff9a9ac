#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergocert/models.hpp"
#include "ergocert/pauli.hpp"

namespace ergocert {

struct ShotRecord {
  PauliString pauli;
  long long shots = 0;
  double estimate = 0.0;
};

/// An ordered measurement record list; duplicates are kept and order is
/// preserved, matching fixed experimental orderings.
struct ExperimentPlan {
  std::vector<ShotRecord> records;
  std::optional<double> delta;
  std::vector<std::string> warnings;

  int observable_count() const { return static_cast<int>(records.size()); }
};

/// Hoeffding half-width eps = sqrt(2 log(2K/delta) / N) (natural log); all K
/// intervals then hold jointly with probability at least 1 - delta.
double hoeffding_epsilon(long long shots, int observable_count, double delta);

/// Binomial shot simulation: N_+ ~ Bin(N, (1+<P>)/2), estimate 2 N_+/N - 1.
ShotRecord simulate_shots(const DensityMatrix& rho, const PauliString& pauli,
                          long long shots, std::uint64_t seed);

/// Fraction of `repetitions` simulated experiments in which some record
/// deviates from its true expectation by more than its Hoeffding epsilon;
/// at most delta in expectation. Repetitions use sub-seeds derived from
/// (seed, repetition index), so results are schedule-independent.
double coverage_rate(const DensityMatrix& rho, const ExperimentPlan& plan,
                     int repetitions, std::uint64_t seed);

/// Reads a CSV (`pauli,estimate,shots` header, `#` comments, optional
/// `# delta=...`) or JSON ({"delta": ..., "records": [...]}) record file.
ExperimentPlan load_records(const std::string& path);

void save_records_csv(const ExperimentPlan& plan, const std::string& path,
                      const std::vector<std::string>& header_comments = {});

}  // namespace ergocert
