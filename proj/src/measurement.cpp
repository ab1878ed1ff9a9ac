#include "ergocert/measurement.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ergocert/rng.hpp"
#include "ergocert/text.hpp"

namespace ergocert {

double hoeffding_epsilon(long long shots, int observable_count, double delta) {
  if (shots < 1) {
    throw Error(ErrorKind::ZeroShots, "shots = " + std::to_string(shots));
  }
  if (observable_count < 1) {
    throw Error(ErrorKind::InvalidArgument, "observable count < 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidDelta, "delta = " + std::to_string(delta));
  }
  return std::sqrt(2.0 * std::log(2.0 * observable_count / delta) /
                   static_cast<double>(shots));
}

namespace {

long long draw_binomial(std::mt19937_64& eng, long long n, double p) {
  std::binomial_distribution<long long> dist(n, p);
  return dist(eng);
}

void check_record(const ShotRecord& record, std::vector<std::string>* warnings,
                  const std::string& context) {
  if (record.shots < 1) {
    throw Error(ErrorKind::ParseError, context + ": shots must be >= 1");
  }
  if (record.estimate < -1.0 - 1e-12 || record.estimate > 1.0 + 1e-12) {
    throw Error(ErrorKind::ParseError,
                context + ": estimate outside [-1, 1]");
  }
  if (warnings != nullptr) {
    // estimate*N + N = 2 N_+ must be an even integer for raw +-1 counts.
    const double doubled =
        record.estimate * static_cast<double>(record.shots) +
        static_cast<double>(record.shots);
    const double nearest_even = 2.0 * std::round(doubled / 2.0);
    if (std::abs(doubled - nearest_even) > 1e-6) {
      warnings->push_back(context + ": estimate " +
                          format_double(record.estimate) + " with " +
                          std::to_string(record.shots) +
                          " shots is not consistent with integer +-1 counts");
    }
  }
}

}  // namespace

ShotRecord simulate_shots(const DensityMatrix& rho, const PauliString& pauli,
                          long long shots, std::uint64_t seed) {
  if (shots < 1) {
    throw Error(ErrorKind::ZeroShots, "shots = " + std::to_string(shots));
  }
  const double mean = expectation(rho.matrix, pauli);  // DimensionMismatch here
  const double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
  std::mt19937_64 eng(seed);
  const long long plus = draw_binomial(eng, shots, p_plus);
  ShotRecord record;
  record.pauli = pauli;
  record.shots = shots;
  record.estimate =
      2.0 * static_cast<double>(plus) / static_cast<double>(shots) - 1.0;
  return record;
}

double coverage_rate(const DensityMatrix& rho, const ExperimentPlan& plan,
                     int repetitions, std::uint64_t seed) {
  if (repetitions < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative repetition count");
  }
  if (repetitions == 0) return 0.0;
  if (!plan.delta.has_value()) {
    throw Error(ErrorKind::InvalidDelta, "plan has no delta");
  }
  const int K = plan.observable_count();
  std::vector<double> truth(plan.records.size());
  std::vector<double> epsilon(plan.records.size());
  for (std::size_t i = 0; i < plan.records.size(); ++i) {
    truth[i] = expectation(rho.matrix, plan.records[i].pauli);
    epsilon[i] = hoeffding_epsilon(plan.records[i].shots, K, *plan.delta);
  }
  int violations = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    std::mt19937_64 eng(mix_seed(seed, static_cast<std::uint64_t>(rep)));
    for (std::size_t i = 0; i < plan.records.size(); ++i) {
      const double p_plus = std::clamp(0.5 * (1.0 + truth[i]), 0.0, 1.0);
      const long long plus = draw_binomial(eng, plan.records[i].shots, p_plus);
      const double estimate =
          2.0 * static_cast<double>(plus) /
              static_cast<double>(plan.records[i].shots) -
          1.0;
      if (std::abs(estimate - truth[i]) > epsilon[i]) {
        ++violations;
        break;
      }
    }
  }
  return static_cast<double>(violations) / static_cast<double>(repetitions);
}

namespace {

ExperimentPlan load_records_json(std::istream& in, const std::string& path) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  ExperimentPlan plan;
  if (doc.contains("delta")) plan.delta = doc.at("delta").get<double>();
  if (!doc.contains("records") || !doc.at("records").is_array()) {
    throw Error(ErrorKind::ParseError, path + ": missing records array");
  }
  int index = 0;
  for (const auto& item : doc.at("records")) {
    ++index;
    const std::string context = path + ": record " + std::to_string(index);
    try {
      ShotRecord record;
      record.pauli = parse_pauli(item.at("pauli").get<std::string>());
      record.estimate = item.at("estimate").get<double>();
      record.shots = item.at("shots").get<long long>();
      check_record(record, &plan.warnings, context);
      plan.records.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, context + ": " + e.what());
    }
  }
  if (plan.records.empty()) {
    throw Error(ErrorKind::ParseError, path + ": no records");
  }
  return plan;
}

ExperimentPlan load_records_csv(std::istream& in, const std::string& path) {
  ExperimentPlan plan;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string context = path + ":" + std::to_string(line_number);
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      const auto fields = split(trimmed.substr(1), '=');
      if (fields.size() == 2 && trim(fields[0]) == "delta") {
        try {
          plan.delta = std::stod(trim(fields[1]));
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, context + ": bad delta value");
        }
      }
      continue;
    }
    auto fields = split(trimmed, ',');
    for (auto& f : fields) f = trim(f);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "pauli" ||
          fields[1] != "estimate" || fields[2] != "shots") {
        throw Error(ErrorKind::ParseError,
                    context + ": expected header pauli,estimate,shots");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw Error(ErrorKind::ParseError, context + ": expected 3 fields");
    }
    ShotRecord record;
    record.pauli = parse_pauli(fields[0]);  // InvalidSymbol propagates
    try {
      record.estimate = std::stod(fields[1]);
      record.shots = std::stoll(fields[2]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, context + ": bad numeric field");
    }
    check_record(record, &plan.warnings, context);
    plan.records.push_back(std::move(record));
  }
  if (!header_seen || plan.records.empty()) {
    throw Error(ErrorKind::ParseError, path + ": no records");
  }
  return plan;
}

}  // namespace

ExperimentPlan load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ParseError, path + ": cannot open");
  }
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return load_records_json(in, path);
  }
  // Peek: a leading '{' also selects JSON.
  int c = in.peek();
  while (c != EOF && std::isspace(c)) {
    in.get();
    c = in.peek();
  }
  if (c == '{') return load_records_json(in, path);
  return load_records_csv(in, path);
}

void save_records_csv(const ExperimentPlan& plan, const std::string& path,
                      const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::ParseError, path + ": cannot open for writing");
  }
  for (const auto& comment : header_comments) out << "# " << comment << "\n";
  if (plan.delta.has_value()) {
    out << "# delta=" << format_double(*plan.delta) << "\n";
  }
  out << "pauli,estimate,shots\n";
  for (const auto& record : plan.records) {
    out << record.pauli.label() << "," << format_double(record.estimate) << ","
        << record.shots << "\n";
  }
}

}  // namespace ergocert
