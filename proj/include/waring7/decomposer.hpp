#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "waring7/binary_geom.hpp"
#include "waring7/form.hpp"
#include "waring7/theta.hpp"
#include "waring7/tolerances.hpp"

namespace waring7 {

enum class FailureCode {
  VDegenerate,
  QZero,
  QSquare,
  ThetaDegenerate,
  NoValidFixedPoint,
  RootCollision,
  RootForbidden,
  AntiderivativeUndefined,
  ResidualTooLarge,
};

std::string_view to_string(FailureCode code);

struct FailureReason {
  FailureCode code;
  int index = -1;  // quadric index for QZero / QSquare
  std::string detail;

  /// "Q_SQUARE(1)", "V_DEGENERATE", ...
  std::string label() const;
};

/// Where a decomposition term came from. pair is the ring index i for the six
/// main terms and -1 for the extra seventh term.
struct TermProvenance {
  int pair = -1;
  int root = 0;
  int fixed_point = -1;
};

/// Outcome of trying one fixed point of the θ-chain.
struct CandidateReport {
  int fixed_point = 0;
  std::optional<double> residual;
  std::optional<FailureReason> failure;
};

struct SixResult {
  std::optional<Decomposition> decomposition;
  std::vector<TermProvenance> provenance;
  std::optional<FailureReason> failure;
  std::optional<ThetaChain> chain;
  std::vector<CandidateReport> candidates;
  /// Relative discriminant of each q_i (nullopt when q_i vanishes).
  std::array<std::optional<double>, 3> q_discriminant;

  bool ok() const noexcept { return decomposition.has_value(); }
};

struct SevenResult {
  std::optional<Decomposition> decomposition;
  std::vector<TermProvenance> provenance;
  std::optional<FailureReason> failure;
  /// v = ∂_{x^0 x^1 x^2} f.
  std::optional<HomogeneousForm> v;
  /// ‖g‖ / ‖f‖ for g = f − V, when the V step applied.
  std::optional<double> g_relative_norm;
  /// ∂_{x^0 x^1 x^2} f already vanished; no seventh term was added.
  bool already_harmonic = false;
  SixResult six;

  bool ok() const noexcept { return decomposition.has_value(); }
};

/// Six fourth powers for a quartic g with ∂_{x^0 x^1 x^2} g = 0.
/// Zero tests and the final residual are taken relative to reference_norm
/// (defaults to ‖g‖); decompose_seven passes ‖f‖ of the original form.
SixResult decompose_six(const HomogeneousForm& g, const Frame& frame, const Tolerances& tol = {},
                        double reference_norm = 0.0);

/// Seven fourth powers for a general ternary quartic.
SevenResult decompose_seven(const HomogeneousForm& f, const Frame& frame, const Tolerances& tol = {});

/// ‖f − Σ λ_j v_j^d‖ / ‖f‖ in max-coefficient-modulus norm.
double verify(const HomogeneousForm& f, const Decomposition& dec);

/// Random frame with coefficients uniform on [-1, 1] + i[-1, 1].
Eigen::Matrix3cd random_frame_matrix(std::uint64_t seed, std::uint64_t stream = 0);

struct ProbeTrial {
  int trial = 0;
  Eigen::Matrix3cd frame;
  bool success = false;
  std::optional<FailureReason> failure;
  std::optional<double> residual;
  std::optional<double> discriminant;  // of the composite θ-map
  std::optional<int> fixed_point_count;
  std::optional<double> g_relative_norm;
  std::array<std::optional<double>, 3> q_discriminant;
};

struct ProbeReport {
  int trials = 0;
  std::uint64_t seed = 0;
  int successes = 0;
  std::map<std::string, int> failures;
  std::map<int, int> fixed_point_counts;
  std::vector<ProbeTrial> records;
};

/// Runs decompose_seven on n_trials seeded random frames. Trial k draws its
/// frame from a generator seeded with (seed, k).
ProbeReport probe_frames(const HomogeneousForm& f, int n_trials, std::uint64_t seed,
                         const Tolerances& tol = {});

}  // namespace waring7
