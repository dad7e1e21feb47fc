#include "waring7/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "waring7/errors.hpp"
#include "waring7/linalg.hpp"

namespace waring7 {

namespace {

class ComplexSampler {
 public:
  explicit ComplexSampler(std::uint64_t seed) : rng_(seed), unit_(-1.0, 1.0) {}

  Scalar next() {
    const double re = unit_(rng_);
    const double im = unit_(rng_);
    return {re, im};
  }

  HomogeneousForm form(int degree) {
    std::vector<Scalar> c(monomial_count(3, degree));
    for (auto& x : c) x = next();
    return HomogeneousForm(Side::Primal, 3, degree, std::move(c));
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_;
};

HomogeneousForm sum_of_powers(ComplexSampler& s, int count) {
  std::vector<DecompositionTerm> terms;
  for (int k = 0; k < count; ++k) terms.push_back({s.next(), s.form(1)});
  return expand(terms, 4);
}

constexpr double kClaimTol = 1e-9;

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::PurePower: return "pure-power";
    case GeneratorKind::RankTwo: return "rank-two";
    case GeneratorKind::RankThree: return "rank-three";
    case GeneratorKind::DoubleLineConic: return "double-line-conic";
    case GeneratorKind::RandomQuartic: return "random";
    case GeneratorKind::ExplicitTerms: return "explicit-terms";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  for (auto k : {GeneratorKind::PurePower, GeneratorKind::RankTwo, GeneratorKind::RankThree,
                 GeneratorKind::DoubleLineConic, GeneratorKind::RandomQuartic, GeneratorKind::ExplicitTerms}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::Parse, "unknown generator kind: " + std::string(name));
}

double line_conic_discriminant(const HomogeneousForm& line, const HomogeneousForm& conic) {
  require(line.side() == Side::Primal && line.nvars() == 3 && line.degree() == 1,
          "line_conic_discriminant: expected a ternary linear form");
  require(conic.side() == Side::Primal && conic.nvars() == 3 && conic.degree() == 2,
          "line_conic_discriminant: expected a ternary quadric");
  // parametrize {ℓ = 0} by a basis of the bilinear annihilator of ℓ
  const linalg::Matrix basis = linalg::annihilator(line.to_vector());
  std::vector<HomogeneousForm> images;
  for (int k = 0; k < 3; ++k) images.push_back(HomogeneousForm::linear(Side::Primal, {basis(k, 0), basis(k, 1)}));
  const HomogeneousForm restricted = substitute_linear(conic, images);
  if (restricted.norm() <= kClaimTol * conic.norm()) return 0.0;  // the line is a component
  return relative_discriminant(restricted);
}

HomogeneousForm generate(const GeneratorSpec& spec) {
  ComplexSampler s(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::PurePower: return sum_of_powers(s, 1);
    case GeneratorKind::RankTwo: return sum_of_powers(s, 2);
    case GeneratorKind::RankThree: return sum_of_powers(s, 3);
    case GeneratorKind::RandomQuartic: return s.form(4);
    case GeneratorKind::ExplicitTerms:
      require(!spec.terms.empty(), "generate: explicit-terms needs at least one term");
      return expand(spec.terms, 4);
    case GeneratorKind::DoubleLineConic: {
      const HomogeneousForm line = spec.line ? *spec.line : s.form(1);
      const HomogeneousForm conic = spec.conic ? *spec.conic : s.form(2);
      if (line_conic_discriminant(line, conic) <= kClaimTol) {
        throw Error(ErrorKind::TangentConic, "generate: the conic is tangent to the line");
      }
      return multiply(power_of_linear(line, 2), conic);
    }
  }
  throw Error(ErrorKind::Precondition, "generate: unknown kind");
}

IncidenceReport incidence_check(const Decomposition& dec, const std::vector<HomogeneousForm>& lines,
                                double tol) {
  IncidenceReport report;
  for (std::size_t t = 0; t < dec.terms.size(); ++t) {
    const auto& v = dec.terms[t].direction;
    bool any = false;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const double scale = lines[l].to_vector().norm() * v.to_vector().norm();
      const Scalar pairing = lines[l].to_vector().transpose() * v.to_vector();
      const double value = scale > 0.0 ? std::abs(pairing) / scale : 0.0;
      const bool incident = value <= tol;
      any = any || incident;
      report.entries.push_back({t, l, value, incident});
    }
    report.term_on_some_line.push_back(any);
  }
  return report;
}

ExperimentReport experiment_special_cases(std::uint64_t seed, int n_frames, const Tolerances& tol) {
  require(n_frames >= 1, "experiment_special_cases: need at least one frame");
  ExperimentReport report;
  report.seed = seed;
  report.frames = n_frames;

  auto run = [&](std::string name, std::string claim, GeneratorKind kind) {
    ExperimentCase c{std::move(name), std::move(claim), generate({kind, seed, {}, {}, {}}), {}};
    c.probe = probe_frames(c.form, n_frames, seed, tol);
    return c;
  };

  {
    auto c = run("pure-power", "g vanishes whenever the V step applies", GeneratorKind::PurePower);
    for (const auto& t : c.probe.records) {
      if (!t.g_relative_norm && !(t.failure && t.failure->detail.starts_with("g vanishes"))) continue;
      ++c.eligible;
      if (!t.g_relative_norm || *t.g_relative_norm <= kClaimTol) ++c.observed;
    }
    c.passed = c.eligible > 0 && c.observed == c.eligible;
    report.cases.push_back(std::move(c));
  }
  {
    auto c = run("rank-two", "every nonzero q_i is a square", GeneratorKind::RankTwo);
    for (const auto& t : c.probe.records) {
      bool any = false;
      bool all_square = true;
      for (const auto& d : t.q_discriminant) {
        if (!d) continue;
        any = true;
        all_square = all_square && *d <= kClaimTol;
      }
      if (!any) continue;
      ++c.eligible;
      if (all_square) ++c.observed;
    }
    c.passed = c.eligible > 0 && c.observed == c.eligible;
    report.cases.push_back(std::move(c));
  }
  {
    auto c = run("double-line-conic", "the procedure succeeds and the composite has one fixed point",
                 GeneratorKind::DoubleLineConic);
    c.eligible = n_frames;
    for (const auto& t : c.probe.records) {
      if (t.success && t.fixed_point_count == 1) ++c.observed;
    }
    c.required_fraction = 0.95;
    c.calibrated = true;
    c.passed = c.observed >= c.required_fraction * c.eligible;
    report.cases.push_back(std::move(c));
  }
  {
    auto c = run("random", "the composite has two fixed points", GeneratorKind::RandomQuartic);
    c.eligible = n_frames;
    for (const auto& t : c.probe.records) {
      if (t.fixed_point_count == 2) ++c.observed;
    }
    c.required_fraction = 0.95;
    c.calibrated = true;
    c.passed = c.observed >= c.required_fraction * c.eligible;
    report.cases.push_back(std::move(c));
  }
  {
    // exploration only: no claim attached
    auto c = run("rank-three", "", GeneratorKind::RankThree);
    c.eligible = n_frames;
    c.observed = c.probe.successes;
    c.required_fraction = 0.0;
    c.passed = true;
    report.cases.push_back(std::move(c));
  }
  report.all_passed = std::all_of(report.cases.begin(), report.cases.end(),
                                  [](const ExperimentCase& c) { return c.passed; });
  return report;
}

}  // namespace waring7
