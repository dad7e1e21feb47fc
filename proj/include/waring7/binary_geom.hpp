#pragma once

#include <array>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "waring7/form.hpp"
#include "waring7/tolerances.hpp"

namespace waring7 {

/// Cyclic successor 0 -> 1 -> 2 -> 0.
constexpr int next_index(int i) noexcept { return (i + 1) % 3; }

class ProjPoint;

/// Three independent dual linear forms x^0, x^1, x^2 on ternary forms, with
/// the primal directions v_0, v_1, v_2 satisfying x^j(v_i) = δ_ij.
class Frame {
 public:
  const HomogeneousForm& dual(int i) const { return x_.at(static_cast<std::size_t>(i)); }
  const HomogeneousForm& direction(int i) const { return v_.at(static_cast<std::size_t>(i)); }

  /// Rows are the coefficient vectors of x^0, x^1, x^2.
  Eigen::Matrix3cd dual_matrix() const;
  /// x^0 x^1 x^2 as a dual cubic.
  HomogeneousForm triple_product() const;

  /// f rewritten in the coordinates z_j dual to x^j (y = X^T z), where x^j
  /// acts as ∂/∂z_j.
  HomogeneousForm to_frame_coordinates(const HomogeneousForm& f) const;

  /// Largest coefficient of a monomial divisible by z_0 z_1 z_2 in frame
  /// coordinates, relative to `scale` (‖f‖ in frame coordinates if scale <= 0).
  /// Zero exactly when ∂_{x^0 x^1 x^2} f = 0.
  double triple_defect(const HomogeneousForm& f, double scale = 0.0) const;

 private:
  friend Frame make_frame(const HomogeneousForm&, const HomogeneousForm&, const HomogeneousForm&,
                          double);
  Frame(std::array<HomogeneousForm, 3> x, std::array<HomogeneousForm, 3> v)
      : x_(std::move(x)), v_(std::move(v)) {}

  std::array<HomogeneousForm, 3> x_;
  std::array<HomogeneousForm, 3> v_;
};

/// Throws DegenerateFrame when |det| / Π‖x^i‖ is below zero_tol.
Frame make_frame(const HomogeneousForm& x0, const HomogeneousForm& x1, const HomogeneousForm& x2,
                 double zero_tol = Tolerances{}.zero);
Frame make_frame(const Eigen::Matrix3cd& rows, double zero_tol = Tolerances{}.zero);
Frame standard_frame();

/// The binary ring S_{i,•} = ker ∂_{x^i} with primal basis (v_{i'}, v_{i''})
/// and dual basis (x^{i'}, x^{i''}) mod x^i. Binary forms use variables
/// b1 = v_{i'}, b2 = v_{i''} (dual B1 = x^{i'}, B2 = x^{i''}).
class BinaryContext {
 public:
  BinaryContext(Frame frame, int index);

  int index() const noexcept { return index_; }
  const Frame& frame() const noexcept { return frame_; }
  const HomogeneousForm& kernel_operator() const { return frame_.dual(index_); }
  /// k = 0 -> v_{i'}, k = 1 -> v_{i''}.
  const HomogeneousForm& primal_basis(int k) const;
  const HomogeneousForm& dual_basis(int k) const;

  /// Binary coordinates of a ternary primal form annihilated by x^i.
  /// Throws NotInKernel otherwise; the test is relative to max(‖f‖, scale)
  /// with ‖f‖ taken in frame coordinates.
  HomogeneousForm restrict_to_binary(const HomogeneousForm& f, double zero_tol = Tolerances{}.zero,
                                     double scale = 0.0) const;
  /// Ternary form from binary coordinates (primal or dual).
  HomogeneousForm embed_from_binary(const HomogeneousForm& b) const;

  /// The primal linear form s·v_{i'} + t·v_{i''} for the point [s : t].
  HomogeneousForm direction(const ProjPoint& p) const;

  /// Induced pairing matrix between the primal and dual bases (identity).
  Eigen::Matrix2cd pairing_matrix() const;

 private:
  Frame frame_;
  int index_;
};

/// Point of a projective line, scaled so its largest coordinate is exactly 1.
class ProjPoint {
 public:
  ProjPoint(Scalar a, Scalar b, double zero_tol = Tolerances{}.zero);
  explicit ProjPoint(const Eigen::Vector2cd& v, double zero_tol = Tolerances{}.zero)
      : ProjPoint(v(0), v(1), zero_tol) {}

  Scalar operator[](int k) const { return coords_.at(static_cast<std::size_t>(k)); }
  Eigen::Vector2cd vector() const { return {coords_[0], coords_[1]}; }

 private:
  std::array<Scalar, 2> coords_;
};

double projective_distance(const ProjPoint& a, const ProjPoint& b);

/// Isomorphism of projective lines as a Frobenius-normalized 2x2 matrix.
/// The basis descriptors name what the coordinates refer to.
struct ProjMap {
  Eigen::Matrix2cd matrix;
  std::string domain;
  std::string codomain;

  static ProjMap make(const Eigen::Matrix2cd& m, std::string domain, std::string codomain,
                      double zero_tol = Tolerances{}.zero);

  Eigen::Vector2cd apply(const Eigen::Vector2cd& p) const { return matrix * p; }
  ProjPoint apply(const ProjPoint& p) const { return ProjPoint(matrix * p.vector()); }
  ProjMap inverse() const;
};

/// this ∘ inner; requires inner.codomain == this->domain.
ProjMap compose(const ProjMap& outer, const ProjMap& inner);

/// Throws ZeroForm on a vanishing q. q must be a primal binary quadratic.
bool is_square(const HomogeneousForm& q, double tol = Tolerances{}.zero);

/// Normalized discriminant |b² − 4ac| / max(|a|,|b|,|c|)².
double relative_discriminant(const HomogeneousForm& q);

/// Basis of ⟨q⟩^⊥ among dual binary quadratics.
std::pair<HomogeneousForm, HomogeneousForm> quadric_perp(const HomogeneousForm& q);

/// Orthonormal basis (columns, binary cubic coordinates) of
/// L = S_3 ∩ ∂_x^{-1}⟨q⟩.
Eigen::Matrix<Scalar, 4, 2> omega_domain_basis(const HomogeneousForm& q, const HomogeneousForm& x);

/// The cubic F ∈ L with ∂_h F = 0, unique up to scale when q is not a square;
/// scaled so its largest coefficient is 1. Throws OmegaDegenerate when the
/// solution space is not one-dimensional.
HomogeneousForm omega_point(const HomogeneousForm& q, const HomogeneousForm& x,
                            const HomogeneousForm& h, double zero_tol = Tolerances{}.zero);

/// Matrix of ω: ℙ⟨q⟩^⊥ -> ℙL in the given bases, fitted on h_a, h_b, h_a + h_b.
ProjMap omega_map(const HomogeneousForm& q, const HomogeneousForm& x,
                  const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                  const Eigen::Matrix<Scalar, 4, 2>& l_basis, const std::string& label = "",
                  double zero_tol = Tolerances{}.zero);

/// Coordinates of h in the basis (h_a, h_b).
Eigen::Vector2cd perp_coords(const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                             const HomogeneousForm& h);
HomogeneousForm perp_element(const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                             const Eigen::Vector2cd& coords);

struct RootPair {
  ProjPoint first;
  ProjPoint second;
  bool repeated = false;
  double discriminant = 0.0;  // normalized, as in relative_discriminant
};

/// Zeros [s:t] of A s² + B st + C t², where h = A B1² + B B1B2 + C B2².
RootPair roots_of_dual_quadratic(const HomogeneousForm& h, double zero_tol = Tolerances{}.zero);

/// (α, β) with q = α u² + β w².
std::pair<Scalar, Scalar> sum_of_squares_coeffs(const HomogeneousForm& q, const HomogeneousForm& u,
                                                const HomogeneousForm& w, const Tolerances& tol = {});

}  // namespace waring7
