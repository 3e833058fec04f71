#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "markov/embeddability.hpp"
#include "markov/matrix.hpp"
#include "markov/stochastic.hpp"
#include "markov/tolerances.hpp"

namespace markov {

struct SearchOptions {
  Tolerances tol{};
  /// Largest |k| tried for any eigenvalue's branch offset.
  int max_offset = 64;
  /// Largest number of offset tuples reconstructed before giving up.
  std::size_t max_candidates = 1'000'000;
};

/// One real logarithm of A: mu_r = Log(lambda_r) + 2 pi i k_r on the
/// eigenvector basis of A.
struct LogBranch {
  std::vector<int> offsets;  // k_r, one per eigenvalue in spectral order
  std::vector<Complex> mu;
  RealMatrix matrix;
  bool is_generator = false;
  /// u cot(pi/n) - |v| for mu_r = -u + iv; negative outside the sector.
  std::vector<double> sector_margins;
  /// Validated copy of `matrix` when is_generator.
  std::optional<GeneratorMatrix> generator;

  bool is_principal() const noexcept;
};

/// validate_generator(logm_principal(A)) if that succeeds. Propagates
/// SpectrumOnClosedNegativeAxis.
std::optional<GeneratorMatrix> principal_generator(const StochasticMatrix& a, const Tolerances& tol = {});

/// Every real logarithm whose eigenvalues lie in the Karpelevic sector,
/// sorted by sum |k_r| then lexicographically by offsets.
///
/// Requires distinct eigenvalues (else DegenerateSpectrum) and an invertible
/// A (else NotInvertible). Throws EnumerationLimit if an offset range would
/// exceed options.max_offset or the tuple count options.max_candidates.
std::vector<LogBranch> enumerate_branches(const StochasticMatrix& a, const SearchOptions& options = {});

enum class Status { Embeddable, NotEmbeddable, Inconclusive };
enum class Uniqueness { UniquePrincipal, AtMostFinite, Unknown };

std::string_view to_string(Status s) noexcept;
std::string_view to_string(Uniqueness u) noexcept;

struct ExhaustedEnumeration {
  std::size_t candidates = 0;  // offset tuples inside the sector
};
struct UniquenessStatement {
  Uniqueness level = Uniqueness::Unknown;
};
struct InconclusiveReason {
  std::string reason;
};
using VerdictCertificate = std::variant<CheckResult, ExhaustedEnumeration, UniquenessStatement, InconclusiveReason>;

struct EmbeddabilityVerdict {
  Status status = Status::Inconclusive;
  std::optional<GeneratorMatrix> witness;
  /// Failed check or exhausted enumeration for NotEmbeddable, uniqueness
  /// for Embeddable, the reason for Inconclusive.
  VerdictCertificate certificate = InconclusiveReason{};
  std::size_t generator_count_lower_bound = 0;
  /// Generator branches found by enumeration (empty when it did not run).
  std::vector<LogBranch> generators;
};

/// Constructive answer first (principal log or any enumerated branch is a
/// generator), then the battery, then exhausted enumeration; anything else
/// is Inconclusive. Never throws on numerical trouble.
EmbeddabilityVerdict decide_embeddable(const StochasticMatrix& a, const SearchOptions& options = {});

Uniqueness uniqueness_certificate(const StochasticMatrix& a, const Tolerances& tol = {});

/// Determinant, trace and norm conditions that each imply the next, for a
/// generator B with exp(B) = A.
struct CuthbertDiagnostics {
  double det_a = 0.0;
  double trace_b = 0.0;
  double beta = 0.0;              // max_i |B_ii|
  double norm_b_plus_beta = 0.0;  // ||B + beta I||
  bool spectral_strip_ok = false; // every eigenvalue of B has |Im| < pi
  /// exp(-pi) < det A <= 1; -pi < tr B <= 0; ||B + beta I|| < pi; strip.
  std::array<bool, 4> conditions{};

  bool chain_holds() const noexcept;
};

/// Throws WitnessMismatch unless ||exp(B) - A|| <= 1e-8 n.
CuthbertDiagnostics cuthbert_diagnostics(const StochasticMatrix& a, const GeneratorMatrix& b,
                                         const Tolerances& tol = {});

/// ||exp(B) - A|| accepted for a witness or branch.
double witness_tolerance(std::size_t n) noexcept;

}  // namespace markov
