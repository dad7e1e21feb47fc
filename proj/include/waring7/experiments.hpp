#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring7/decomposer.hpp"
#include "waring7/form.hpp"

namespace waring7 {

enum class GeneratorKind { PurePower, RankTwo, RankThree, DoubleLineConic, RandomQuartic, ExplicitTerms };

std::string_view to_string(GeneratorKind kind);
/// Accepts the names printed by to_string ("pure-power", "rank-two", ...).
GeneratorKind generator_kind_from_string(std::string_view name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::RandomQuartic;
  std::uint64_t seed = 0;
  /// ExplicitTerms: the terms to expand.
  std::vector<DecompositionTerm> terms;
  /// DoubleLineConic: optional explicit primal line ℓ and conic q (random otherwise).
  std::optional<HomogeneousForm> line;
  std::optional<HomogeneousForm> conic;
};

/// Deterministic ternary quartic for the given settings. Random coefficients are
/// uniform on [-1, 1] + i[-1, 1]. Throws TangentConic when a DoubleLineConic
/// conic is tangent to its line.
HomogeneousForm generate(const GeneratorSpec& spec);

/// Normalized discriminant of the conic restricted to the line ℓ = 0; zero
/// exactly when the conic is tangent to (or contains) the line.
double line_conic_discriminant(const HomogeneousForm& line, const HomogeneousForm& conic);

struct Incidence {
  std::size_t term = 0;
  std::size_t line = 0;
  double value = 0.0;  // |Σ ℓ_k v_k| / (‖ℓ‖‖v‖), Euclidean norms
  bool incident = false;
};

struct IncidenceReport {
  std::vector<Incidence> entries;  // term-major
  std::vector<bool> term_on_some_line;
};

/// Lines may be primal or dual linear forms; both pair with v coordinatewise.
IncidenceReport incidence_check(const Decomposition& dec, const std::vector<HomogeneousForm>& lines,
                                double tol = 1e-8);

/// One special-case experiment: a claim checked over a batch of frames.
struct ExperimentCase {
  std::string name;
  std::string claim;
  HomogeneousForm form;
  ProbeReport probe;
  int eligible = 0;  // frames the claim applies to
  int observed = 0;  // frames where the claimed behavior was seen
  double required_fraction = 1.0;
  bool calibrated = false;  // required_fraction is a calibration margin, not a claim
  bool passed = false;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  int frames = 0;
  std::vector<ExperimentCase> cases;
  bool all_passed = false;
};

/// Pure power (g vanishes), rank two (q_i are squares), double line plus
/// conic (succeeds, one fixed point) and a random quartic (two fixed points),
/// each over n_frames seeded frames; plus an unasserted rank-three run.
ExperimentReport experiment_special_cases(std::uint64_t seed, int n_frames, const Tolerances& tol = {});

}  // namespace waring7
