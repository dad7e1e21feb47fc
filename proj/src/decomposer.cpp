#include "waring7/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <variant>

#include "waring7/errors.hpp"
#include "waring7/linalg.hpp"

namespace waring7 {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

FailureReason failure_from(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ZeroForm:
      if (e.index() >= 0) return {FailureCode::QZero, e.index(), e.what()};
      return {FailureCode::ThetaDegenerate, -1, e.what()};
    case ErrorKind::QSquare:
      return {FailureCode::QSquare, e.index(), e.what()};
    case ErrorKind::AntiderivativeUndefined:
      return {FailureCode::AntiderivativeUndefined, -1, e.what()};
    case ErrorKind::CollinearDirections:
      return {FailureCode::RootCollision, -1, e.what()};
    case ErrorKind::InconsistentSystem:
      return {FailureCode::ResidualTooLarge, -1, e.what()};
    default:
      return {FailureCode::ThetaDegenerate, -1, e.what()};
  }
}

// Drops the monomials divisible by z_0 z_1 z_2 in frame coordinates, i.e.
// removes round-off that keeps ∂_{x^0 x^1 x^2} g from vanishing exactly.
HomogeneousForm harmonic_projection(const HomogeneousForm& g, const Frame& frame) {
  const HomogeneousForm z = frame.to_frame_coordinates(g);
  std::vector<Scalar> c(z.coeffs().begin(), z.coeffs().end());
  const auto es = monomials(3, z.degree());
  for (std::size_t j = 0; j < es.size(); ++j)
    if (es[j][0] > 0 && es[j][1] > 0 && es[j][2] > 0) c[j] = 0.0;
  const std::array<HomogeneousForm, 3> back{frame.direction(0), frame.direction(1), frame.direction(2)};
  return substitute_linear(HomogeneousForm(Side::Primal, 3, z.degree(), std::move(c)), back);
}

// Rescales each direction to unit max-modulus; the coefficient absorbs the scale.
std::vector<DecompositionTerm> normalized(std::vector<DecompositionTerm> terms, int degree) {
  for (auto& t : terms) {
    const double n = t.direction.norm();
    if (n == 0.0) continue;
    t.direction *= Scalar(1.0 / n);
    t.coefficient *= std::pow(n, degree);
  }
  return terms;
}

struct Candidate {
  std::vector<DecompositionTerm> terms;
  std::vector<TermProvenance> provenance;
  double residual = 0.0;
};

// Decomposition attempt from one fixed point of the chain.
std::variant<Candidate, FailureReason> try_fixed_point(const HomogeneousForm& g, const ThetaChain& chain,
                                                       int k, const Tolerances& tol, double reference) {
  const auto orbit = chain.orbit(chain.fixed.points[static_cast<std::size_t>(k)]);
  std::vector<HomogeneousForm> directions;
  Candidate out;
  try {
    for (int i = 0; i < 3; ++i) {
      const auto& ctx = chain.contexts[static_cast<std::size_t>(i)];
      const RootPair roots = roots_of_dual_quadratic(orbit[static_cast<std::size_t>(i)], tol.zero);
      if (roots.repeated) {
        return FailureReason{FailureCode::RootCollision, i, "h^" + std::to_string(i) + " has a double root"};
      }
      for (const ProjPoint& p : {roots.first, roots.second}) {
        // avoid ⟨v_{i'}⟩ and ⟨v_{i''}⟩, where the antiderivative is undefined
        if (std::abs(p[0]) <= tol.zero || std::abs(p[1]) <= tol.zero) {
          return FailureReason{FailureCode::RootForbidden, i,
                               "a root of h^" + std::to_string(i) + " is a coordinate point"};
        }
      }
      const auto u = HomogeneousForm::linear(Side::Primal, {roots.first[0], roots.first[1]});
      const auto w = HomogeneousForm::linear(Side::Primal, {roots.second[0], roots.second[1]});
      const auto [alpha, beta] = sum_of_squares_coeffs(chain.q[static_cast<std::size_t>(i)], u, w, tol);

      const std::array<DecompositionTerm, 2> quad_terms{
          DecompositionTerm{alpha, ctx.direction(roots.first)},
          DecompositionTerm{beta, ctx.direction(roots.second)}};
      const HomogeneousForm op = dual_multiply(ctx.dual_basis(0), ctx.dual_basis(1));
      const auto lifted = antiderivative_terms(quad_terms, 2, op, tol.zero);
      for (int r = 0; r < 2; ++r) {
        out.terms.push_back(lifted[static_cast<std::size_t>(r)]);
        out.provenance.push_back({i, r, k});
        directions.push_back(lifted[static_cast<std::size_t>(r)].direction);
      }
    }
  } catch (const Error& e) {
    return failure_from(e);
  }
  for (std::size_t a = 0; a < directions.size(); ++a) {
    for (std::size_t b = a + 1; b < directions.size(); ++b) {
      if (linalg::projective_distance(directions[a].to_vector(), directions[b].to_vector()) <= tol.distinct) {
        return FailureReason{FailureCode::RootCollision, -1, "two of the six roots coincide"};
      }
    }
  }
  out.residual = (expand(out.terms, 4) - g).norm() / reference;
  if (!(out.residual <= tol.verify)) {
    return FailureReason{FailureCode::ResidualTooLarge, -1,
                         "reconstruction residual " + sci(out.residual)};
  }
  return out;
}

}  // namespace

std::string_view to_string(FailureCode code) {
  switch (code) {
    case FailureCode::VDegenerate: return "V_DEGENERATE";
    case FailureCode::QZero: return "Q_ZERO";
    case FailureCode::QSquare: return "Q_SQUARE";
    case FailureCode::ThetaDegenerate: return "THETA_DEGENERATE";
    case FailureCode::NoValidFixedPoint: return "NO_VALID_FIXED_POINT";
    case FailureCode::RootCollision: return "ROOT_COLLISION";
    case FailureCode::RootForbidden: return "ROOT_FORBIDDEN";
    case FailureCode::AntiderivativeUndefined: return "ANTIDERIVATIVE_UNDEFINED";
    case FailureCode::ResidualTooLarge: return "RESIDUAL_TOO_LARGE";
  }
  return "UNKNOWN";
}

std::string FailureReason::label() const {
  std::string s(to_string(code));
  if ((code == FailureCode::QZero || code == FailureCode::QSquare) && index >= 0) {
    s += "(" + std::to_string(index) + ")";
  }
  return s;
}

SixResult decompose_six(const HomogeneousForm& g, const Frame& frame, const Tolerances& tol,
                        double reference_norm) {
  require(g.side() == Side::Primal && g.nvars() == 3 && g.degree() == 4,
          "decompose_six: expected a ternary primal quartic");
  SixResult result;
  const double gnorm = g.norm();
  const double reference = reference_norm > 0.0 ? reference_norm : gnorm;
  if (gnorm <= tol.zero * reference || reference == 0.0) {
    result.failure = FailureReason{FailureCode::QZero, -1, "the form vanishes"};
    return result;
  }
  const double frame_norm = frame.to_frame_coordinates(g).norm();
  // zero tests in frame coordinates, rescaled to the reference form
  const double frame_scale = frame_norm * reference / gnorm;
  require(frame.triple_defect(g, frame_scale) <= tol.zero,
          "decompose_six: ∂_{x^0 x^1 x^2} g does not vanish");

  std::array<HomogeneousForm, 3> q{HomogeneousForm(Side::Primal, 2, 2), HomogeneousForm(Side::Primal, 2, 2),
                                   HomogeneousForm(Side::Primal, 2, 2)};
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    q[idx] = quadric_of(g, BinaryContext(frame, i), frame_scale);
    if (q[idx].norm() > tol.zero * frame_scale) result.q_discriminant[idx] = relative_discriminant(q[idx]);
  }
  for (int i = 0; i < 3; ++i) {
    if (!result.q_discriminant[static_cast<std::size_t>(i)]) {
      result.failure = FailureReason{FailureCode::QZero, i, "q_" + std::to_string(i) + " vanishes"};
      return result;
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (*result.q_discriminant[static_cast<std::size_t>(i)] <= tol.zero) {
      result.failure = FailureReason{FailureCode::QSquare, i, "q_" + std::to_string(i) + " is a square"};
      return result;
    }
  }

  try {
    result.chain = build_chain(g, frame, tol);
  } catch (const Error& e) {
    result.failure = failure_from(e);
    return result;
  }

  std::optional<Candidate> best;
  const int count = static_cast<int>(result.chain->fixed.points.size());
  for (int k = 0; k < count; ++k) {
    auto attempt = try_fixed_point(g, *result.chain, k, tol, reference);
    CandidateReport report{k, std::nullopt, std::nullopt};
    if (auto* c = std::get_if<Candidate>(&attempt)) {
      report.residual = c->residual;
      if (!best || c->residual < best->residual) best = std::move(*c);
    } else {
      report.failure = std::get<FailureReason>(attempt);
    }
    result.candidates.push_back(std::move(report));
  }

  if (best) {
    result.decomposition = Decomposition{4, normalized(std::move(best->terms), 4), best->residual};
    result.provenance = std::move(best->provenance);
    return result;
  }
  // every fixed point failed: report the shared reason, or NO_VALID_FIXED_POINT
  const FailureReason& first = *result.candidates.front().failure;
  const bool shared = std::all_of(result.candidates.begin(), result.candidates.end(),
                                  [&](const CandidateReport& c) { return c.failure->code == first.code; });
  if (shared) {
    result.failure = first;
  } else {
    std::string detail;
    for (const auto& c : result.candidates) {
      if (!detail.empty()) detail += "; ";
      detail += "fixed point " + std::to_string(c.fixed_point) + ": " + c.failure->label();
    }
    result.failure = FailureReason{FailureCode::NoValidFixedPoint, -1, detail};
  }
  return result;
}

SevenResult decompose_seven(const HomogeneousForm& f, const Frame& frame, const Tolerances& tol) {
  require(f.side() == Side::Primal && f.nvars() == 3 && f.degree() == 4,
          "decompose_seven: expected a ternary primal quartic");
  SevenResult result;
  const double fnorm = f.norm();
  if (fnorm == 0.0) {
    result.failure = FailureReason{FailureCode::QZero, -1, "the form vanishes"};
    return result;
  }

  const HomogeneousForm triple = frame.triple_product();
  const HomogeneousForm v = apolar_apply(triple, f);
  result.v = v;

  auto finish = [&](SixResult six, std::vector<DecompositionTerm> extra) {
    if (!six.ok()) {
      result.failure = six.failure;
      result.six = std::move(six);
      return;
    }
    Decomposition dec = *six.decomposition;
    result.provenance = six.provenance;
    for (auto& t : extra) {
      dec.terms.push_back(normalized({std::move(t)}, 4).front());
      result.provenance.push_back({-1, 0, -1});
    }
    dec.target_residual = verify(f, dec);
    if (dec.target_residual <= tol.verify) {
      result.decomposition = std::move(dec);
    } else {
      result.failure = FailureReason{FailureCode::ResidualTooLarge, -1,
                                     "reconstruction residual " + sci(dec.target_residual)};
    }
    result.six = std::move(six);
  };

  if (frame.triple_defect(f) <= tol.zero) {
    result.already_harmonic = true;
    finish(decompose_six(harmonic_projection(f, frame), frame, tol, fnorm), {});
    return result;
  }

  for (int i = 0; i < 3; ++i) {
    const Scalar xv = evaluate_dual(frame.dual(i), v);
    if (!(std::abs(xv) > tol.zero * frame.dual(i).norm() * v.norm())) {
      result.failure = FailureReason{FailureCode::VDegenerate, i,
                                     "x^" + std::to_string(i) + " vanishes on v"};
      return result;
    }
  }
  const std::array<DecompositionTerm, 1> vterm{DecompositionTerm{1.0, v}};
  std::vector<DecompositionTerm> seventh = antiderivative_terms(vterm, 1, triple, tol.zero);
  const HomogeneousForm g = f - expand(seventh, 4);
  result.g_relative_norm = g.norm() / fnorm;
  if (*result.g_relative_norm <= tol.zero) {
    result.failure = FailureReason{FailureCode::QZero, -1, "g vanishes: f is the fourth power of v"};
    return result;
  }
  // ∂_{x^0 x^1 x^2} g = 0 by construction, up to round-off
  const double defect = frame.triple_defect(g, frame.to_frame_coordinates(f).norm());
  if (defect > 1e-10) {
    result.failure = FailureReason{FailureCode::ResidualTooLarge, -1,
                                   "∂_{x^0 x^1 x^2} g does not vanish: " + sci(defect)};
    return result;
  }
  finish(decompose_six(harmonic_projection(g, frame), frame, tol, fnorm), std::move(seventh));
  return result;
}

double verify(const HomogeneousForm& f, const Decomposition& dec) {
  require(dec.degree == f.degree(), "verify: degree mismatch");
  return relative_difference(f, expand(dec.terms, dec.degree), f);
}

Eigen::Matrix3cd random_frame_matrix(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::Matrix3cd m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const double re = unit(rng);
      const double im = unit(rng);
      m(r, c) = {re, im};
    }
  return m;
}

ProbeReport probe_frames(const HomogeneousForm& f, int n_trials, std::uint64_t seed, const Tolerances& tol) {
  require(n_trials >= 1, "probe_frames: need at least one trial");
  ProbeReport report;
  report.trials = n_trials;
  report.seed = seed;
  for (int k = 0; k < n_trials; ++k) {
    ProbeTrial trial;
    trial.trial = k;
    trial.frame = random_frame_matrix(seed, static_cast<std::uint64_t>(k));
    try {
      const Frame frame = make_frame(trial.frame, tol.zero);
      const SevenResult r = decompose_seven(f, frame, tol);
      trial.success = r.ok();
      trial.failure = r.failure;
      trial.g_relative_norm = r.g_relative_norm;
      trial.q_discriminant = r.six.q_discriminant;
      if (r.ok()) trial.residual = r.decomposition->target_residual;
      if (r.six.chain) {
        trial.discriminant = r.six.chain->fixed.discriminant;
        trial.fixed_point_count = static_cast<int>(r.six.chain->fixed.points.size());
      }
    } catch (const Error& e) {
      trial.failure = FailureReason{FailureCode::ThetaDegenerate, -1, e.what()};
    }
    if (trial.success) ++report.successes;
    if (trial.failure) ++report.failures[trial.failure->label()];
    if (trial.fixed_point_count) ++report.fixed_point_counts[*trial.fixed_point_count];
    report.records.push_back(std::move(trial));
  }
  return report;
}

}  // namespace waring7
