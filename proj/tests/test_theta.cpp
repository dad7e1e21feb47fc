#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "waring7/errors.hpp"
#include "waring7/linalg.hpp"
#include "waring7/theta.hpp"

using namespace waring7;
using oracle::C;

namespace {

HomogeneousForm random_l_element(oracle::Rng& rng, const HomogeneousForm& q, const HomogeneousForm& x) {
  const auto basis = omega_domain_basis(q, x);
  const Eigen::Vector4cd v = basis.col(0) * rng.complex() + basis.col(1) * rng.complex();
  return HomogeneousForm::from_vector(Side::Primal, 2, 3, v);
}

// Distance of ∂_x F from the line through q, computed by direct differentiation.
double membership_defect(const HomogeneousForm& f, const HomogeneousForm& q, const HomogeneousForm& x) {
  auto d = oracle::act(oracle::from_form(x), oracle::from_form(f));
  const Eigen::Vector3cd a{d[{2, 0, 0}], d[{1, 1, 0}], d[{0, 2, 0}]};
  if (a.norm() < 1e-14) return 0.0;
  return linalg::projective_distance(a, q.to_vector());
}

// One θ step without the fitted matrices: ω pointwise, ψ, then the h' in
// ⟨q_{i'}⟩^⊥ killing ψ(F).
Eigen::Vector2cd theta_step(const HomogeneousForm& f, const Frame& frame, int i, const Eigen::Vector2cd& h) {
  const PsiContext ctx = PsiContext::from_quartic(f, frame, i);
  const auto src_perp = quadric_perp(quadric_of(f, ctx.source()));
  const auto tgt_perp = quadric_perp(quadric_of(f, ctx.target()));
  const auto F = omega_point(ctx.source_q(), ctx.source_x(), perp_element(src_perp, h));
  const auto G = oracle::from_form(psi_apply(ctx, F));
  Eigen::Matrix<Scalar, 2, 2> m;
  for (int k = 0; k < 2; ++k) {
    auto r = oracle::act(oracle::from_form(k == 0 ? tgt_perp.first : tgt_perp.second), G);
    m(0, k) = r[{1, 0, 0}];
    m(1, k) = r[{0, 1, 0}];
  }
  const auto ns = linalg::nullspace(m, 1e-8);
  EXPECT_EQ(ns.basis.cols(), 1);
  return ns.basis.col(0);
}

}  // namespace

TEST(Psi, ContractOnRandomInstances) {
  oracle::Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const Frame frame = fixtures::random_frame(rng);
    const auto f = fixtures::harmonic_quartic(rng, frame);
    const int i = t % 3;
    const PsiContext ctx = PsiContext::from_quartic(f, frame, i);

    const auto F = random_l_element(rng, ctx.source_q(), ctx.source_x());
    const auto G = random_l_element(rng, ctx.source_q(), ctx.source_x());
    const auto pf = psi_apply(ctx, F);
    EXPECT_LT(membership_defect(pf, ctx.target_q(), ctx.target_x()), 1e-10);

    const C a = rng.complex();
    const C b = rng.complex();
    const auto lin = psi_apply(ctx, F * a + G * b) - (pf * a + psi_apply(ctx, G) * b);
    EXPECT_LT(lin.norm() / pf.norm(), 1e-10);

    // v = v_{i''} is b2 in the source ring and b1 in the target ring
    const auto vcube_src = HomogeneousForm::monomial(Side::Primal, 2, {0, 3, 0});
    const auto image = psi_apply(ctx, vcube_src);
    EXPECT_LT(linalg::projective_distance(image.to_vector(),
                                          HomogeneousForm::monomial(Side::Primal, 2, {3, 0, 0}).to_vector()),
              1e-10);
    EXPECT_LT(relative_difference(ctx.target().embed_from_binary(image), -ctx.vcube(), ctx.vcube()), 1e-10);

    Eigen::Matrix<Scalar, 10, 3> span;
    span.col(0) = ctx.cubic().to_vector();
    span.col(1) = ctx.source().embed_from_binary(F).to_vector();
    span.col(2) = psi_apply_ternary(ctx, F).to_vector();
    for (int k = 0; k < 3; ++k) span.col(k).normalize();
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, 10, 3>> svd(span);
    EXPECT_LE(svd.singularValues()(2) / svd.singularValues()(0), 1e-8);
  }
}

TEST(Psi, RejectsElementsOutsideL) {
  oracle::Rng rng(42);
  const Frame frame = fixtures::random_frame(rng);
  const PsiContext ctx = PsiContext::from_quartic(fixtures::harmonic_quartic(rng, frame), frame, 0);
  try {
    psi_apply(ctx, rng.form(Side::Primal, 2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInL);
  }
}

TEST(Lambda, RecoversMultiple) {
  const auto q = HomogeneousForm(Side::Primal, 2, 2, {1.0, 2.0, 3.0});
  const auto x = HomogeneousForm::linear(Side::Dual, {1.0, 0.0});
  // F = b1³/3 + b1² b2 + 3 b1 b2² has ∂_{B1} F = q
  const auto f = HomogeneousForm(Side::Primal, 2, 3, {1.0 / 3.0, 1.0, 3.0, 0.0});
  EXPECT_LT(std::abs(lambda_functional(f * C(0.0, 2.0), q, x) - C(0.0, 2.0)), 1e-14);
}

TEST(ThetaChain, StepsAgreeWithPointwiseConstruction) {
  oracle::Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const Frame frame = fixtures::random_frame(rng);
    const auto f = fixtures::harmonic_quartic(rng, frame);
    const ThetaChain chain = build_chain(f, frame);
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2cd h{rng.complex(), rng.complex()};
      const Eigen::Vector2cd fitted = chain.theta[static_cast<std::size_t>(i)].theta.apply(h);
      EXPECT_LT(linalg::projective_distance(fitted, theta_step(f, frame, i, h)), 1e-8) << "i=" << i;
    }
  }
}

TEST(ThetaChain, FixedPointsCloseTheCycle) {
  oracle::Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    const Frame frame = fixtures::random_frame(rng);
    const auto f = fixtures::harmonic_quartic(rng, frame);
    const ThetaChain chain = build_chain(f, frame);
    ASSERT_FALSE(chain.fixed.points.empty());
    for (const auto& p : chain.fixed.points) {
      Eigen::Vector2cd h = p.vector();
      for (int i = 0; i < 3; ++i) h = theta_step(f, frame, i, h);
      EXPECT_LT(linalg::projective_distance(h, p.vector()), 1e-8);
    }
  }
}

TEST(ThetaChain, RequiresHarmonicForm) {
  oracle::Rng rng(45);
  const Frame frame = fixtures::random_frame(rng);
  EXPECT_THROW(build_chain(rng.form(Side::Primal, 3, 4), frame), Error);
}

TEST(FixedPoints, Classification) {
  Eigen::Matrix2cd jordan;
  jordan << 1.0, 1.0, 0.0, 1.0;
  const auto p = fixed_points(ProjMap::make(jordan, "A", "A"));
  EXPECT_EQ(p.kind, FixedPointClass::Parabolic);
  ASSERT_EQ(p.points.size(), 1u);
  EXPECT_LT(std::abs(p.points[0][1]), 1e-15);

  Eigen::Matrix2cd diag;
  diag << 2.0, 0.0, 0.0, C(0.0, 1.0);
  const auto d = fixed_points(ProjMap::make(diag, "A", "A"));
  EXPECT_EQ(d.kind, FixedPointClass::Diagonalizable);
  ASSERT_EQ(d.points.size(), 2u);
  EXPECT_GT(projective_distance(d.points[0], d.points[1]), 0.99);

  try {
    fixed_points(ProjMap::make(Eigen::Matrix2cd::Identity() * C(0.0, 3.0), "A", "A"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityMap);
  }
}

TEST(FixedPoints, EigenvectorsOfRandomMatrices) {
  oracle::Rng rng(46);
  for (int t = 0; t < 20; ++t) {
    Eigen::Matrix2cd m;
    m << rng.complex(), rng.complex(), rng.complex(), rng.complex();
    const auto fp = fixed_points(ProjMap::make(m, "A", "A"));
    for (const auto& p : fp.points) {
      EXPECT_LT(linalg::projective_distance(Eigen::VectorXcd(m * p.vector()), Eigen::VectorXcd(p.vector())), 1e-12);
    }
  }
}
