#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "waring7/binary_geom.hpp"
#include "waring7/form.hpp"
#include "waring7/tolerances.hpp"

namespace waring7 {

using PerpBasis = std::pair<HomogeneousForm, HomogeneousForm>;

/// Data of the map ψ: L_source -> L_target, F ↦ λ(F) c − F, for one cyclic
/// index i of a frame. With c = ∂_{x^{i''}} f:
///   source ring S_{i,•},  operator x^{i'},  source_q = ∂_{x^{i'}} c = q_i
///   target ring S_{i',•}, operator x^{i},   target_q = ∂_{x^{i}} c  = q_{i'}
/// Binary forms are in the coordinates of the respective BinaryContext.
class PsiContext {
 public:
  /// Throws ZeroForm (with the quadric's index) when a quadric vanishes and
  /// Precondition when ∂_{x^i x^{i'}} c is not numerically zero.
  PsiContext(HomogeneousForm cubic, const Frame& frame, int index, const Tolerances& tol = {});

  static PsiContext from_quartic(const HomogeneousForm& f, const Frame& frame, int index,
                                 const Tolerances& tol = {});

  int index() const noexcept { return index_; }
  const HomogeneousForm& cubic() const noexcept { return cubic_; }
  const BinaryContext& source() const noexcept { return source_; }
  const BinaryContext& target() const noexcept { return target_; }
  const HomogeneousForm& source_q() const noexcept { return source_q_; }
  const HomogeneousForm& target_q() const noexcept { return target_q_; }
  /// x^{i'} in source coordinates (B1).
  const HomogeneousForm& source_x() const noexcept { return source_x_; }
  /// x^{i} in target coordinates (B2).
  const HomogeneousForm& target_x() const noexcept { return target_x_; }
  /// v³ for ⟨v⟩ = ⟨x^i, x^{i'}⟩^⊥, i.e. v = v_{i''} (ternary).
  const HomogeneousForm& vcube() const noexcept { return vcube_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

 private:
  HomogeneousForm cubic_;
  BinaryContext source_;
  BinaryContext target_;
  HomogeneousForm source_q_;
  HomogeneousForm target_q_;
  HomogeneousForm source_x_;
  HomogeneousForm target_x_;
  HomogeneousForm vcube_;
  int index_;
  Tolerances tol_;
};

/// λ with ∂_x F = λ q. Throws NotInL if ∂_x F is not a multiple of q.
Scalar lambda_functional(const HomogeneousForm& f, const HomogeneousForm& q, const HomogeneousForm& x,
                         double verify_tol = Tolerances{}.verify);

/// ψ(F) = λ(F) c − F for F in L_source (binary source coordinates); the result
/// is returned in binary target coordinates. Throws NotInL.
HomogeneousForm psi_apply(const PsiContext& ctx, const HomogeneousForm& f);

/// Same map, result as a ternary cubic.
HomogeneousForm psi_apply_ternary(const PsiContext& ctx, const HomogeneousForm& f);

/// One θ_i together with the pieces it is composed of.
struct ThetaMap {
  int index = 0;
  PerpBasis source_perp;  // basis of ⟨q_i⟩^⊥
  PerpBasis target_perp;  // basis of ⟨q_{i'}⟩^⊥
  Eigen::Matrix<Scalar, 4, 2> source_l;
  Eigen::Matrix<Scalar, 4, 2> target_l;
  ProjMap omega_source;  // ⟨q_i⟩^⊥ -> L_source
  ProjMap omega_target;  // ⟨q_{i'}⟩^⊥ -> L_target
  ProjMap psi;           // L_source -> L_target
  ProjMap theta;         // ⟨q_i⟩^⊥ -> ⟨q_{i'}⟩^⊥
};

/// Matrix of ψ in the orthonormal bases of L_source and L_target.
ProjMap psi_matrix(const PsiContext& ctx, const Eigen::Matrix<Scalar, 4, 2>& source_l,
                   const Eigen::Matrix<Scalar, 4, 2>& target_l);

/// θ_i = ω_{i'}^{-1} ∘ ℙψ ∘ ω_i. Throws QSquare (index set) when q_i or
/// q_{i'} is a square, plus the errors of omega_map.
ThetaMap build_theta(const HomogeneousForm& f, const Frame& frame, int index,
                     const Tolerances& tol = {});

enum class FixedPointClass { Parabolic, Diagonalizable };

struct FixedPoints {
  std::vector<ProjPoint> points;
  FixedPointClass kind = FixedPointClass::Diagonalizable;
  double discriminant = 0.0;  // |tr² − 4 det| / ‖M‖_F²
};

/// Eigenvectors of a 2x2 matrix seen as a projective map. Throws IdentityMap
/// when every point is fixed.
FixedPoints fixed_points(const ProjMap& m, const Tolerances& tol = {});

struct ThetaChain {
  Frame frame;
  std::vector<BinaryContext> contexts;  // index i -> S_{i,•}
  std::array<HomogeneousForm, 3> q;     // binary, in contexts[i]
  std::array<ThetaMap, 3> theta;        // theta[i]: ⟨q_i⟩^⊥ -> ⟨q_{i'}⟩^⊥
  ProjMap composite;                    // θ_2 ∘ θ_1 ∘ θ_0 on ⟨q_0⟩^⊥
  FixedPoints fixed;
  std::vector<double> closure_residuals;  // one per fixed point

  /// h^0, h^1 = θ_0 h^0, h^2 = θ_1 h^1 as binary dual quadratics.
  std::array<HomogeneousForm, 3> orbit(const ProjPoint& h0) const;
};

/// The binary quadric q_i = ∂_{x^{i'} x^{i''}} f in ring i. The kernel test is
/// relative to max(‖f‖ in frame coordinates, scale).
HomogeneousForm quadric_of(const HomogeneousForm& f, const BinaryContext& ctx, double scale = 0.0);

/// Builds θ_0, θ_1, θ_2, the composite and its fixed points. Requires
/// ∂_{x^0 x^1 x^2} f ≈ 0.
ThetaChain build_chain(const HomogeneousForm& f, const Frame& frame, const Tolerances& tol = {});

std::string_view to_string(FixedPointClass kind);

}  // namespace waring7
