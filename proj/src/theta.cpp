#include "waring7/theta.hpp"

#include <cmath>
#include <string>

#include "waring7/errors.hpp"
#include "waring7/linalg.hpp"

namespace waring7 {

namespace {

std::string perp_name(int i) { return "perp(q" + std::to_string(i) + ")"; }

HomogeneousForm binary_dual_unit(int k) {
  return HomogeneousForm::linear(Side::Dual, {k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0});
}

// Null vector of a rank-one 2x2 matrix, taken from its larger row.
Eigen::Vector2cd rank_one_kernel(const Eigen::Matrix2cd& n) {
  const Eigen::Index r = n.row(0).norm() >= n.row(1).norm() ? 0 : 1;
  Eigen::Vector2cd v{-n(r, 1), n(r, 0)};
  return v / v.norm();
}

}  // namespace

std::string_view to_string(FixedPointClass kind) {
  return kind == FixedPointClass::Parabolic ? "parabolic" : "diagonalizable";
}

HomogeneousForm quadric_of(const HomogeneousForm& f, const BinaryContext& ctx, double scale) {
  require(f.side() == Side::Primal && f.nvars() == 3 && f.degree() >= 2,
          "quadric_of: expected a ternary primal form of degree >= 2");
  const HomogeneousForm op = dual_multiply(ctx.dual_basis(0), ctx.dual_basis(1));
  scale = std::max(scale, ctx.frame().to_frame_coordinates(f).norm());
  try {
    return ctx.restrict_to_binary(apolar_apply(op, f), Tolerances{}.zero, scale);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInKernel) throw;
    throw Error(ErrorKind::Precondition, "quadric_of: ∂_{x^0 x^1 x^2} f does not vanish");
  }
}

PsiContext::PsiContext(HomogeneousForm cubic, const Frame& frame, int index, const Tolerances& tol)
    : cubic_(std::move(cubic)),
      source_(frame, index),
      target_(frame, next_index(index)),
      source_q_(Side::Primal, 2, 2),
      target_q_(Side::Primal, 2, 2),
      source_x_(binary_dual_unit(0)),
      target_x_(binary_dual_unit(1)),
      vcube_(power_of_linear(frame.direction(next_index(next_index(index))), 3)),
      index_(index),
      tol_(tol) {
  require(cubic_.side() == Side::Primal && cubic_.nvars() == 3 && cubic_.degree() == 3,
          "PsiContext: expected a ternary primal cubic");
  const double scale = frame.to_frame_coordinates(cubic_).norm();
  try {
    source_q_ = source_.restrict_to_binary(apolar_apply(source_.dual_basis(0), cubic_), tol.zero, scale);
    target_q_ = target_.restrict_to_binary(apolar_apply(target_.dual_basis(1), cubic_), tol.zero, scale);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInKernel) throw;
    throw Error(ErrorKind::Precondition, "PsiContext: ∂_{x^i x^{i'}} c does not vanish");
  }
  if (source_q_.norm() <= tol.zero * scale)
    throw Error(ErrorKind::ZeroForm, "PsiContext: source quadric vanishes", index);
  if (target_q_.norm() <= tol.zero * scale)
    throw Error(ErrorKind::ZeroForm, "PsiContext: target quadric vanishes", next_index(index));
}

PsiContext PsiContext::from_quartic(const HomogeneousForm& f, const Frame& frame, int index,
                                    const Tolerances& tol) {
  require(f.side() == Side::Primal && f.nvars() == 3 && f.degree() == 4,
          "PsiContext: expected a ternary primal quartic");
  const int i2 = next_index(next_index(index));
  return PsiContext(apolar_apply(frame.dual(i2), f), frame, index, tol);
}

Scalar lambda_functional(const HomogeneousForm& f, const HomogeneousForm& q, const HomogeneousForm& x,
                         double verify_tol) {
  const HomogeneousForm d = apolar_apply(x, f);
  require(d.same_space(q), "lambda_functional: ∂_x F and q live in different spaces");
  const linalg::Vector dv = d.to_vector();
  const linalg::Vector qv = q.to_vector();
  const double qq = qv.squaredNorm();
  if (qq == 0.0) throw Error(ErrorKind::ZeroForm, "lambda_functional: zero quadric");
  const Scalar lambda = qv.dot(dv) / qq;
  const double scale = std::max(f.norm() * x.norm(), d.norm());
  if ((d - q * lambda).norm() > verify_tol * scale) {
    throw Error(ErrorKind::NotInL, "lambda_functional: ∂_x F is not a multiple of q");
  }
  return lambda;
}

HomogeneousForm psi_apply_ternary(const PsiContext& ctx, const HomogeneousForm& f) {
  require(f.side() == Side::Primal && f.nvars() == 2 && f.degree() == 3,
          "psi_apply: expected a binary cubic in source coordinates");
  const Scalar lambda = lambda_functional(f, ctx.source_q(), ctx.source_x(), ctx.tolerances().verify);
  return ctx.cubic() * lambda - ctx.source().embed_from_binary(f);
}

HomogeneousForm psi_apply(const PsiContext& ctx, const HomogeneousForm& f) {
  const HomogeneousForm g = psi_apply_ternary(ctx, f);
  HomogeneousForm out(Side::Primal, 2, 3);
  try {
    out = ctx.target().restrict_to_binary(g, ctx.tolerances().verify, f.norm());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInKernel) throw;
    throw Error(ErrorKind::NotInL, "psi_apply: image is not annihilated by the target operator");
  }
  // membership in L_target: ∂_{x^i} ψ(F) ∈ ⟨q_{i'}⟩
  lambda_functional(out, ctx.target_q(), ctx.target_x(), ctx.tolerances().verify);
  return out;
}

ProjMap psi_matrix(const PsiContext& ctx, const Eigen::Matrix<Scalar, 4, 2>& source_l,
                   const Eigen::Matrix<Scalar, 4, 2>& target_l) {
  Eigen::Matrix2cd m;
  for (int k = 0; k < 2; ++k) {
    const auto f = HomogeneousForm::from_vector(Side::Primal, 2, 3, source_l.col(k));
    const linalg::Vector g = psi_apply(ctx, f).to_vector();
    const linalg::Vector c = target_l.adjoint() * g;
    if ((target_l * c - g).norm() > ctx.tolerances().verify * std::max(1.0, g.norm())) {
      throw Error(ErrorKind::NotInL, "psi_matrix: image leaves the target space");
    }
    m.col(k) = c;
  }
  const std::string i = std::to_string(ctx.index());
  return ProjMap::make(m, "L_src(" + i + ")", "L_tgt(" + i + ")", ctx.tolerances().zero);
}

ThetaMap build_theta(const HomogeneousForm& f, const Frame& frame, int index, const Tolerances& tol) {
  const PsiContext psi = PsiContext::from_quartic(f, frame, index, tol);
  const int i1 = next_index(index);
  // recompute the quadrics straight from f so consecutive θ's share the exact same bases
  const HomogeneousForm q_src = quadric_of(f, psi.source());
  const HomogeneousForm q_tgt = quadric_of(f, psi.target());
  if (is_square(q_src, tol.zero)) throw Error(ErrorKind::QSquare, "build_theta: q is a square", index);
  if (is_square(q_tgt, tol.zero)) throw Error(ErrorKind::QSquare, "build_theta: q is a square", i1);

  const PerpBasis src_perp = quadric_perp(q_src);
  const PerpBasis tgt_perp = quadric_perp(q_tgt);
  const auto src_l = omega_domain_basis(q_src, psi.source_x());
  const auto tgt_l = omega_domain_basis(q_tgt, psi.target_x());

  const std::string i = std::to_string(index);
  ProjMap omega_src = omega_map(q_src, psi.source_x(), src_perp, src_l, "", tol.zero);
  omega_src.domain = perp_name(index);
  omega_src.codomain = "L_src(" + i + ")";
  ProjMap omega_tgt = omega_map(q_tgt, psi.target_x(), tgt_perp, tgt_l, "", tol.zero);
  omega_tgt.domain = perp_name(i1);
  omega_tgt.codomain = "L_tgt(" + i + ")";

  ProjMap psi_m = psi_matrix(psi, src_l, tgt_l);
  ProjMap theta = compose(omega_tgt.inverse(), compose(psi_m, omega_src));
  return ThetaMap{index, src_perp, tgt_perp, src_l, tgt_l, omega_src, omega_tgt, psi_m, theta};
}

FixedPoints fixed_points(const ProjMap& map, const Tolerances& tol) {
  const Eigen::Matrix2cd m = map.matrix / map.matrix.norm();
  const Scalar tr = m.trace();
  const Scalar det = m.determinant();
  const Scalar disc = tr * tr - 4.0 * det;
  const Eigen::Matrix2cd shifted = m - 0.5 * tr * Eigen::Matrix2cd::Identity();
  if (shifted.norm() <= tol.zero) {
    throw Error(ErrorKind::IdentityMap, "fixed_points: the map is a multiple of the identity");
  }
  FixedPoints out;
  out.discriminant = std::abs(disc);
  if (out.discriminant < tol.parabolic) {
    // one fixed point: M − (tr/2) I is nilpotent of rank one
    out.kind = FixedPointClass::Parabolic;
    out.points.emplace_back(rank_one_kernel(shifted));
    return out;
  }
  out.kind = FixedPointClass::Diagonalizable;
  const Scalar sd = std::sqrt(disc);
  for (const Scalar mu : {0.5 * (tr + sd), 0.5 * (tr - sd)}) {
    out.points.emplace_back(rank_one_kernel(m - mu * Eigen::Matrix2cd::Identity()));
  }
  return out;
}

std::array<HomogeneousForm, 3> ThetaChain::orbit(const ProjPoint& h0) const {
  Eigen::Vector2cd c0 = h0.vector();
  Eigen::Vector2cd c1 = theta[0].theta.apply(c0);
  c1 /= c1.norm();
  Eigen::Vector2cd c2 = theta[1].theta.apply(c1);
  c2 /= c2.norm();
  return {perp_element(theta[0].source_perp, c0), perp_element(theta[1].source_perp, c1),
          perp_element(theta[2].source_perp, c2)};
}

ThetaChain build_chain(const HomogeneousForm& f, const Frame& frame, const Tolerances& tol) {
  require(f.side() == Side::Primal && f.nvars() == 3 && f.degree() == 4,
          "build_chain: expected a ternary primal quartic");
  require(frame.triple_defect(f) <= tol.zero, "build_chain: ∂_{x^0 x^1 x^2} f does not vanish");

  std::vector<BinaryContext> contexts;
  for (int i = 0; i < 3; ++i) contexts.emplace_back(frame, i);
  const double scale = frame.to_frame_coordinates(f).norm();
  std::array<HomogeneousForm, 3> q{quadric_of(f, contexts[0]), quadric_of(f, contexts[1]),
                                   quadric_of(f, contexts[2])};
  for (int i = 0; i < 3; ++i) {
    const auto& qi = q[static_cast<std::size_t>(i)];
    if (qi.norm() <= tol.zero * scale) throw Error(ErrorKind::ZeroForm, "build_chain: q vanishes", i);
    if (is_square(qi, tol.zero)) throw Error(ErrorKind::QSquare, "build_chain: q is a square", i);
  }

  std::array<ThetaMap, 3> theta{build_theta(f, frame, 0, tol), build_theta(f, frame, 1, tol),
                                build_theta(f, frame, 2, tol)};
  ProjMap composite = compose(theta[2].theta, compose(theta[1].theta, theta[0].theta));
  FixedPoints fixed = fixed_points(composite, tol);

  ThetaChain chain{frame, std::move(contexts), std::move(q), std::move(theta), std::move(composite),
                   std::move(fixed), {}};
  for (const auto& p : chain.fixed.points) {
    Eigen::Vector2cd c = p.vector();
    for (const auto& t : chain.theta) {
      c = t.theta.apply(c);
      c /= c.norm();
    }
    chain.closure_residuals.push_back(linalg::projective_distance(c, p.vector()));
  }
  return chain;
}

}  // namespace waring7
