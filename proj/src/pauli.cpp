#include "ergocert/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <random>

#include "ergocert/rng.hpp"

namespace ergocert {

namespace {

constexpr double kCoefficientCutoff = 1e-12;

bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

int log2_exact(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  return n;
}

// Image of basis column k under the string: P |k> = phase |row>.
std::pair<Eigen::Index, std::complex<double>> column_image(
    const PauliString& p, Eigen::Index k) {
  const int n = p.n();
  Eigen::Index row = k;
  std::complex<double> phase(1.0, 0.0);
  for (int s = 0; s < n; ++s) {
    const int bitpos = n - 1 - s;  // site 1 is the most significant bit
    const int b = static_cast<int>((k >> bitpos) & 1);
    switch (p.symbols[static_cast<std::size_t>(s)]) {
      case PauliOp::I:
        break;
      case PauliOp::X:
        row ^= (Eigen::Index{1} << bitpos);
        break;
      case PauliOp::Y:
        row ^= (Eigen::Index{1} << bitpos);
        phase *= std::complex<double>(0.0, b ? -1.0 : 1.0);
        break;
      case PauliOp::Z:
        if (b) phase = -phase;
        break;
    }
  }
  return {row, phase};
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::EmptyLabel: return "EmptyLabel";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPowerOfTwoDimension: return "NotPowerOfTwoDimension";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateExtremalLevels: return "DegenerateExtremalLevels";
    case ErrorKind::MissingHamiltonian: return "MissingHamiltonian";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InfeasibleSet: return "InfeasibleSet";
    case ErrorKind::NonNestedConstraints: return "NonNestedConstraints";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::OutsideBlochBall: return "OutsideBlochBall";
    case ErrorKind::InvalidDelta: return "InvalidDelta";
    case ErrorKind::ZeroShots: return "ZeroShots";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

int PauliString::weight() const {
  return static_cast<int>(
      std::count_if(symbols.begin(), symbols.end(),
                    [](PauliOp op) { return op != PauliOp::I; }));
}

std::string PauliString::label() const {
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  out.reserve(symbols.size());
  for (PauliOp op : symbols) out.push_back(letters[static_cast<int>(op)]);
  return out;
}

PauliString parse_pauli(const std::string& label) {
  if (label.empty()) throw Error(ErrorKind::EmptyLabel, "empty Pauli label");
  PauliString p;
  p.symbols.reserve(label.size());
  for (char c : label) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'I': p.symbols.push_back(PauliOp::I); break;
      case 'X': p.symbols.push_back(PauliOp::X); break;
      case 'Y': p.symbols.push_back(PauliOp::Y); break;
      case 'Z': p.symbols.push_back(PauliOp::Z); break;
      default:
        throw Error(ErrorKind::InvalidSymbol,
                    "character '" + std::string(1, c) + "' in label \"" +
                        label + "\"");
    }
  }
  return p;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p, int max_qubits) {
  if (p.n() > max_qubits) {
    throw Error(ErrorKind::DimensionTooLarge,
                "Pauli string on " + std::to_string(p.n()) +
                    " qubits exceeds the configured maximum of " +
                    std::to_string(max_qubits));
  }
  const Eigen::Index d = Eigen::Index{1} << p.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    auto [row, phase] = column_image(p, k);
    m(row, k) = phase;
  }
  return m;
}

std::vector<PauliString> hierarchical_order(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "qubit count must be >= 1");
  std::vector<std::vector<PauliString>> by_weight(static_cast<std::size_t>(n) + 1);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);  // 4^n codes
  for (std::uint64_t code = 1; code < total; ++code) {
    PauliString p;
    p.symbols.resize(static_cast<std::size_t>(n));
    std::uint64_t c = code;
    for (int s = n - 1; s >= 0; --s) {
      p.symbols[static_cast<std::size_t>(s)] = static_cast<PauliOp>(c & 3);
      c >>= 2;
    }
    by_weight[static_cast<std::size_t>(p.weight())].push_back(p);
  }
  std::mt19937_64 eng(mix_seed(seed, 0x7061756c69ULL));
  std::vector<PauliString> out;
  out.reserve(total - 1);
  for (int w = 1; w <= n; ++w) {
    auto& block = by_weight[static_cast<std::size_t>(w)];
    std::sort(block.begin(), block.end());  // canonical base order before shuffling
    shuffle_in_place(block, eng);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

PauliDecomposition pauli_decompose(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols() || !is_power_of_two(M.rows())) {
    throw Error(ErrorKind::NotPowerOfTwoDimension,
                "matrix dimension " + std::to_string(M.rows()) + "x" +
                    std::to_string(M.cols()) + " is not a square power of two");
  }
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::NotHermitian, "pauli_decompose input");
  }
  const int n = log2_exact(M.rows());
  const double d = static_cast<double>(M.rows());

  PauliDecomposition decomposition;
  decomposition.n = n;
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    PauliString p;
    p.symbols.resize(static_cast<std::size_t>(n));
    std::uint64_t c = code;
    for (int s = n - 1; s >= 0; --s) {
      p.symbols[static_cast<std::size_t>(s)] = static_cast<PauliOp>(c & 3);
      c >>= 2;
    }
    // tr(M P) using the one-entry-per-column structure of P.
    std::complex<double> trace(0.0, 0.0);
    for (Eigen::Index k = 0; k < M.rows(); ++k) {
      auto [row, phase] = column_image(p, k);
      trace += M(k, row) * phase;
    }
    const std::complex<double> coeff = trace / d;
    if (std::abs(coeff.imag()) > kCoefficientCutoff) {
      throw Error(ErrorKind::NotHermitian,
                  "coefficient of " + p.label() + " has imaginary part " +
                      std::to_string(coeff.imag()));
    }
    if (std::abs(coeff.real()) > kCoefficientCutoff) {
      decomposition.terms.emplace(std::move(p), coeff.real());
    }
  }
  return decomposition;
}

Eigen::MatrixXcd reconstruct(const PauliDecomposition& decomposition) {
  const Eigen::Index d = Eigen::Index{1} << decomposition.n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [p, coeff] : decomposition.terms) {
    for (Eigen::Index k = 0; k < d; ++k) {
      auto [row, phase] = column_image(p, k);
      m(row, k) += coeff * phase;
    }
  }
  return m;
}

double expectation(const Eigen::MatrixXcd& rho, const PauliString& p) {
  const Eigen::Index d = Eigen::Index{1} << p.n();
  if (rho.rows() != d || rho.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dimension " + std::to_string(rho.rows()) +
                    " vs Pauli dimension " + std::to_string(d));
  }
  std::complex<double> trace(0.0, 0.0);
  for (Eigen::Index k = 0; k < d; ++k) {
    auto [row, phase] = column_image(p, k);
    trace += rho(k, row) * phase;
  }
  return trace.real();
}

}  // namespace ergocert
