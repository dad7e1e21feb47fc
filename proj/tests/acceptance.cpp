// Acceptance suite: one PASS/FAIL line per criterion. Expected values come
// from the sparse oracle in oracle.hpp, never from the code under test.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "waring7/cli.hpp"
#include "waring7/decomposer.hpp"
#include "waring7/errors.hpp"
#include "waring7/experiments.hpp"
#include "waring7/json_io.hpp"
#include "waring7/linalg.hpp"
#include "waring7/theta.hpp"

using namespace waring7;
using oracle::C;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double max_abs_diff(const oracle::Poly& a, const oracle::Poly& b) {
  double m = 0.0;
  for (const auto& [e, c] : oracle::add(a, b, -1.0)) m = std::max(m, std::abs(c));
  return m;
}

Eigen::Vector3cd quad_vec(oracle::Poly p) { return {p[{2, 0, 0}], p[{1, 1, 0}], p[{0, 2, 0}]}; }

// 1. ∂_x of the antiderivative reproduces Σ λ_j v_j^d.
Outcome antiderivative_inverse() {
  oracle::Rng rng(1001);
  double worst = 0.0;
  int done = 0;
  while (done < 200) {
    const int d = 1 + static_cast<int>(rng.engine()() % 4);
    const int delta = 1 + static_cast<int>(rng.engine()() % 3);
    const auto x = rng.form(Side::Dual, 3, delta);
    const auto t = fixtures::random_terms(rng, 1 + done % 5);
    bool separated = true;
    for (const auto& v : t.v) {
      double vn = 0.0;
      for (const auto& c : v) vn = std::max(vn, std::abs(c));
      separated = separated && std::abs(oracle::eval(oracle::from_form(x), v)) > 1e-2 * x.norm() * std::pow(vn, delta);
    }
    if (!separated) continue;
    const auto big = antiderivative(t.terms, d, x);
    const auto target = oracle::sum_of_powers(t.lambda, t.v, d);
    const auto back = oracle::act(oracle::from_form(x), oracle::from_form(big));
    worst = std::max(worst, max_abs_diff(back, target) / oracle::max_abs(target));
    ++done;
  }
  return {worst <= 1e-10, fmt("200 cases, max relative error %.2e (limit 1e-10)", worst)};
}

// 2. ω(h) is killed by h, and {F ∈ L : ∂_h F = 0} is one-dimensional.
Outcome omega_biconditional() {
  oracle::Rng rng(1002);
  double worst = 0.0;
  int bad_dim = 0;
  for (int t = 0; t < 100; ++t) {
    auto q = rng.form(Side::Primal, 2, 2);
    if (is_square(q)) continue;
    const auto x = rng.linear(Side::Dual, 2);
    const auto perp = quadric_perp(q);
    auto h = perp_element(perp, {rng.complex(), rng.complex()});
    h *= Scalar(1.0 / h.norm());
    const auto f = omega_point(q, x, h);
    worst = std::max(worst, oracle::max_abs(oracle::act(oracle::from_form(h), oracle::from_form(f))) / f.norm());

    // defining system on binary cubics, built by direct differentiation:
    // ∂_h F = 0 (2 equations) and ∂_x F ∧ q = 0 (2 independent equations)
    const auto w = linalg::annihilator(q.to_vector());
    Eigen::Matrix<Scalar, 4, 4> sys;
    const auto basis = monomials(2, 3);
    for (int k = 0; k < 4; ++k) {
      const auto mono = oracle::from_form(HomogeneousForm::monomial(Side::Primal, 2, basis[static_cast<std::size_t>(k)]));
      auto dh = oracle::act(oracle::from_form(h), mono);
      const Eigen::Vector3cd dx = quad_vec(oracle::act(oracle::from_form(x), mono));
      sys(0, k) = dh[{1, 0, 0}];
      sys(1, k) = dh[{0, 1, 0}];
      sys(2, k) = w.col(0).transpose() * dx;
      sys(3, k) = w.col(1).transpose() * dx;
    }
    for (int r = 0; r < 4; ++r) sys.row(r) /= std::max(sys.row(r).norm(), 1e-300);
    if (linalg::nullspace(sys, 1e-9).basis.cols() != 1) ++bad_dim;
  }
  return {worst <= 1e-9 && bad_dim == 0,
          fmt("max |∂_h ω(h)| %.2e (limit 1e-9), nullspace not 1-dim in %.0f cases", worst, bad_dim)};
}

// 3. ψ: membership, linearity, ψ(v³) ∝ v³, rank-2 span.
Outcome psi_contract() {
  oracle::Rng rng(1003);
  double member = 0.0, lin = 0.0, vcube = 0.0, span = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Frame frame = fixtures::random_frame(rng);
    const auto f = fixtures::harmonic_quartic(rng, frame);
    const PsiContext ctx = PsiContext::from_quartic(f, frame, t % 3);
    const auto l = omega_domain_basis(ctx.source_q(), ctx.source_x());
    const auto pick = [&] {
      return HomogeneousForm::from_vector(Side::Primal, 2, 3,
                                          Eigen::Vector4cd(l.col(0) * rng.complex() + l.col(1) * rng.complex()));
    };
    const auto F = pick();
    const auto G = pick();
    const auto pf = psi_apply(ctx, F);
    member = std::max(member, linalg::projective_distance(
                                  quad_vec(oracle::act(oracle::from_form(ctx.target_x()), oracle::from_form(pf))),
                                  ctx.target_q().to_vector()));
    const C a = rng.complex(), b = rng.complex();
    lin = std::max(lin, (psi_apply(ctx, F * a + G * b) - pf * a - psi_apply(ctx, G) * b).norm() / pf.norm());
    // v = v_{i''}: b2³ in source coordinates, compared to v³ expanded by the oracle
    const auto image = psi_apply_ternary(ctx, HomogeneousForm::monomial(Side::Primal, 2, {0, 3, 0}));
    const int i2 = next_index(next_index(t % 3));
    const auto v3 = oracle::power(oracle::linear(linear_coords(frame.direction(i2))), 3);
    Eigen::VectorXcd v3vec(10);
    const auto mons = monomials(3, 3);
    for (std::size_t k = 0; k < 10; ++k) v3vec(static_cast<Eigen::Index>(k)) = v3.count(mons[k]) ? v3.at(mons[k]) : 0.0;
    vcube = std::max(vcube, linalg::projective_distance(image.to_vector(), v3vec));
    Eigen::Matrix<Scalar, 10, 3> m;
    m.col(0) = ctx.cubic().to_vector().normalized();
    m.col(1) = ctx.source().embed_from_binary(F).to_vector().normalized();
    m.col(2) = psi_apply_ternary(ctx, F).to_vector().normalized();
    const auto s = Eigen::JacobiSVD<Eigen::Matrix<Scalar, 10, 3>>(m).singularValues();
    span = std::max(span, s(2) / s(0));
  }
  const bool pass = member <= 1e-10 && lin <= 1e-10 && vcube <= 1e-10 && span <= 1e-8;
  return {pass, fmt("membership %.2e, linearity %.2e, ", member, lin) +
                    fmt("v³ %.2e, span σmin/σmax %.2e", vcube, span)};
}

// Pointwise θ step: ω by its defining property, ψ, then the kernel in ⟨q_{i'}⟩^⊥.
Eigen::Vector2cd theta_step(const HomogeneousForm& f, const Frame& frame, int i, const Eigen::Vector2cd& h) {
  const PsiContext ctx = PsiContext::from_quartic(f, frame, i);
  const auto src_perp = quadric_perp(quadric_of(f, ctx.source()));
  const auto tgt_perp = quadric_perp(quadric_of(f, ctx.target()));
  const auto G = oracle::from_form(
      psi_apply(ctx, omega_point(ctx.source_q(), ctx.source_x(), perp_element(src_perp, h))));
  Eigen::Matrix2cd m;
  for (int k = 0; k < 2; ++k) {
    auto r = oracle::act(oracle::from_form(k == 0 ? tgt_perp.first : tgt_perp.second), G);
    m(0, k) = r[{1, 0, 0}];
    m(1, k) = r[{0, 1, 0}];
  }
  return linalg::nullspace(m, 1e-8).basis.col(0);
}

// 4. θ-chain closure at the fixed points. Each θ_i is also checked against
// the pointwise construction along the orbit.
Outcome chain_closure() {
  oracle::Rng rng(1004);
  double closure = 0.0;
  double step = 0.0;
  int points = 0;
  for (int t = 0; t < 50; ++t) {
    const Frame frame = fixtures::random_frame(rng);
    const auto f = fixtures::harmonic_quartic(rng, frame);
    const ThetaChain chain = build_chain(f, frame);
    for (const auto& p : chain.fixed.points) {
      Eigen::Vector2cd h = p.vector();
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector2cd next = chain.theta[static_cast<std::size_t>(i)].theta.apply(h);
        step = std::max(step, linalg::projective_distance(next, theta_step(f, frame, i, h)));
        h = next / next.norm();
      }
      closure = std::max(closure, linalg::projective_distance(h, p.vector()));
      ++points;
    }
  }
  return {closure <= 1e-8 && step <= 1e-8,
          fmt("%.0f fixed points, max projective distance %.2e (limit 1e-8)", points, closure) +
              fmt(", max step deviation from pointwise θ %.2e", step)};
}

// 5. Seven-term forms from the forward-expansion oracle.
Outcome end_to_end() {
  oracle::Rng rng(1005);
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto terms = fixtures::random_terms(rng, 7);
    const auto f = fixtures::oracle_quartic(terms);
    const SevenResult r = decompose_seven(f, make_frame(random_frame_matrix(1005, static_cast<std::uint64_t>(t))));
    if (!r.ok()) continue;
    ++ok;
    std::vector<C> lambda;
    std::vector<std::vector<C>> v;
    for (const auto& term : r.decomposition->terms) {
      lambda.push_back(term.coefficient);
      v.push_back(linear_coords(term.direction));
    }
    worst = std::max(worst, oracle::max_diff(oracle::sum_of_powers(lambda, v, 4), f) / f.norm());
  }
  return {ok >= 45 && worst <= 1e-8, fmt("%.0f/50 succeeded (need 45), max residual %.2e (limit 1e-8)", ok, worst)};
}

// 6. ℓ⁴: g vanishes whenever the V step applies.
Outcome pure_power() {
  const auto f = generate({GeneratorKind::PurePower, 1006, {}, {}, {}});
  int applied = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const SevenResult r = decompose_seven(f, make_frame(random_frame_matrix(1006, static_cast<std::uint64_t>(t))));
    if (!r.g_relative_norm) continue;
    ++applied;
    worst = std::max(worst, *r.g_relative_norm);
  }
  return {applied > 0 && worst <= 1e-9, fmt("V step applied on %.0f/20 frames, max ‖g‖/‖f‖ %.2e (limit 1e-9)",
                                            applied, worst)};
}

// 7. Rank two: every nonzero q_i is a square.
Outcome rank_two() {
  const auto f = generate({GeneratorKind::RankTwo, 1007, {}, {}, {}});
  int nonzero = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const SevenResult r = decompose_seven(f, make_frame(random_frame_matrix(1007, static_cast<std::uint64_t>(t))));
    for (const auto& d : r.six.q_discriminant) {
      if (!d) continue;
      ++nonzero;
      worst = std::max(worst, *d);
    }
  }
  return {nonzero > 0 && worst <= 1e-9, fmt("%.0f nonzero q_i over 20 frames, max discriminant %.2e (limit 1e-9)",
                                            nonzero, worst)};
}

// 8. ℓ²q: success and a parabolic composite.
Outcome double_line_conic() {
  const auto f = generate({GeneratorKind::DoubleLineConic, 1008, {}, {}, {}});
  int ok = 0, parabolic = 0;
  double worst = 0.0;
  const int frames = 20;
  for (int t = 0; t < frames; ++t) {
    const SevenResult r = decompose_seven(f, make_frame(random_frame_matrix(1008, static_cast<std::uint64_t>(t))));
    if (r.ok()) ++ok;
    if (r.six.chain && r.six.chain->fixed.kind == FixedPointClass::Parabolic) {
      ++parabolic;
      worst = std::max(worst, r.six.chain->fixed.discriminant);
    }
  }
  return {ok == frames && parabolic == frames,
          fmt("succeeded on %.0f/20 frames, parabolic on %.0f/20", ok, parabolic) +
              fmt(", max discriminant %.2e (threshold %.0e)", worst, Tolerances{}.parabolic)};
}

// 9. Generic quartic: two fixed points.
Outcome generic_quartic() {
  const auto f = generate({GeneratorKind::RandomQuartic, 1009, {}, {}, {}});
  int diag = 0;
  for (int t = 0; t < 20; ++t) {
    const SevenResult r = decompose_seven(f, make_frame(random_frame_matrix(1009, static_cast<std::uint64_t>(t))));
    if (r.six.chain && r.six.chain->fixed.kind == FixedPointClass::Diagonalizable) ++diag;
  }
  return {diag >= 19, fmt("diagonalizable on %.0f/20 frames (need 19)", diag)};
}

// 10. Byte-identical probe and experiments output.
Outcome determinism() {
  const std::string path = "acceptance_form.json";
  {
    std::ostringstream out, err;
    run_cli({"generate", "--kind", "random", "--seed", "1010", "--out", path}, out, err);
  }
  const auto once = [&](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return std::to_string(code) + out.str();
  };
  const std::vector<std::string> probe{"probe", path, "--trials", "10", "--seed", "1010"};
  const std::vector<std::string> exps{"experiments", "--seed", "1010", "--frames", "10"};
  const std::string p1 = once(probe), p2 = once(probe);
  const std::string e1 = once(exps), e2 = once(exps);
  std::remove(path.c_str());
  const bool pass = p1 == p2 && e1 == e2 && p1.size() > 2 && e1.size() > 2;
  return {pass, fmt("probe %.0f bytes, experiments %.0f bytes, identical across runs", static_cast<double>(p1.size()),
                    static_cast<double>(e1.size()))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"antiderivative inverse", antiderivative_inverse},
      {"omega biconditional", omega_biconditional},
      {"psi contract", psi_contract},
      {"theta-chain closure", chain_closure},
      {"seven-term end to end", end_to_end},
      {"pure power", pure_power},
      {"rank two", rank_two},
      {"double line plus conic", double_line_conic},
      {"generic quartic", generic_quartic},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
