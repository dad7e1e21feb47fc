#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "waring7/tolerances.hpp"

namespace waring7 {

using Scalar = std::complex<double>;

/// Primal forms live in S_d (polynomials in y_0..y_{n-1}); dual forms live in
/// S^d (polynomials in X_0..X_{n-1}) and act on primal ones by differentiation.
enum class Side { Primal, Dual };

/// Exponent vector; the trailing entry is unused (0) for binary forms.
using Exponent = std::array<int, 3>;

/// Number of monomials of the given degree in nvars variables.
std::size_t monomial_count(int nvars, int degree);

/// Monomials in graded-lex order, exponent of the first variable most
/// significant: y0^2, y0y1, y0y2, y1^2, y1y2, y2^2 for (3, 2).
std::vector<Exponent> monomials(int nvars, int degree);

/// Position of an exponent vector in the order above.
std::size_t monomial_index(int nvars, const Exponent& e);

double factorial(int n);

/// Dense homogeneous polynomial in 2 or 3 variables with complex coefficients.
class HomogeneousForm {
 public:
  HomogeneousForm(Side side, int nvars, int degree);
  HomogeneousForm(Side side, int nvars, int degree, std::vector<Scalar> coeffs);

  static HomogeneousForm monomial(Side side, int nvars, const Exponent& e, Scalar value = 1.0);
  /// Degree-one form with the given coordinates; nvars is coords.size().
  static HomogeneousForm linear(Side side, std::span<const Scalar> coords);
  static HomogeneousForm linear(Side side, std::initializer_list<Scalar> coords);

  Side side() const noexcept { return side_; }
  int nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  Scalar operator[](std::size_t i) const { return coeffs_[i]; }
  Scalar coeff(const Exponent& e) const;

  /// Max coefficient modulus.
  double norm() const;
  bool is_zero(double tol = 0.0) const { return norm() <= tol; }

  Eigen::VectorXcd to_vector() const;
  static HomogeneousForm from_vector(Side side, int nvars, int degree, const Eigen::VectorXcd& v);

  HomogeneousForm& operator+=(const HomogeneousForm& other);
  HomogeneousForm& operator-=(const HomogeneousForm& other);
  HomogeneousForm& operator*=(Scalar s);

  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
  friend HomogeneousForm operator*(HomogeneousForm a, Scalar s) { return a *= s; }
  friend HomogeneousForm operator*(Scalar s, HomogeneousForm a) { return a *= s; }
  friend HomogeneousForm operator-(HomogeneousForm a) { return a *= -1.0; }

  bool same_space(const HomogeneousForm& other) const noexcept {
    return side_ == other.side_ && nvars_ == other.nvars_ && degree_ == other.degree_;
  }

 private:
  Side side_;
  int nvars_;
  int degree_;
  std::vector<Scalar> coeffs_;
};

/// Coefficients (c_0, ..., c_{n-1}) of a degree-one form.
std::vector<Scalar> linear_coords(const HomogeneousForm& v);

/// ‖a − b‖ / ‖reference‖ in max-coefficient-modulus norm (0 when both vanish).
double relative_difference(const HomogeneousForm& a, const HomogeneousForm& b,
                           const HomogeneousForm& reference);

/// ∂_x f: constant-coefficient differentiation of a primal form by a dual one.
HomogeneousForm apolar_apply(const HomogeneousForm& x, const HomogeneousForm& f);

/// Matrix of f ↦ ∂_x f on primal forms of degree d (columns indexed by the
/// degree-d monomials).
Eigen::MatrixXcd apolar_matrix(const HomogeneousForm& x, int d);

/// v^d for a primal linear form v.
HomogeneousForm power_of_linear(const HomogeneousForm& v, int d);

/// Product of two forms on the same side.
HomogeneousForm multiply(const HomogeneousForm& a, const HomogeneousForm& b);
HomogeneousForm dual_multiply(const HomogeneousForm& x, const HomogeneousForm& y);

/// x(v) = ∂_x(v^d)/d!, which is the plain polynomial evaluation of x at the
/// coordinates of v.
Scalar evaluate_dual(const HomogeneousForm& x, const HomogeneousForm& v);

/// Replace variable k of f by images[k] (linear forms in a common set of new
/// variables). The side tag of f is kept.
HomogeneousForm substitute_linear(const HomogeneousForm& f,
                                  std::span<const HomogeneousForm> images);

struct DecompositionTerm {
  Scalar coefficient;
  HomogeneousForm direction;  // primal, degree 1
};

/// Σ λ_j v_j^d together with the residual measured against its target.
struct Decomposition {
  int degree = 0;
  std::vector<DecompositionTerm> terms;
  double target_residual = 0.0;
};

/// Σ λ_j v_j^d.
HomogeneousForm expand(std::span<const DecompositionTerm> terms, int d);

/// The x-antiderivative of Σ λ_j v_j^d relative to the given terms:
///   F = Σ d! λ_j / ((d+δ)! x(v_j)) v_j^{d+δ},  so that ∂_x F = Σ λ_j v_j^d.
/// Throws AntiderivativeUndefined if x(v_j) vanishes for some term, measured
/// relative to ‖x‖·‖v_j‖^δ.
std::vector<DecompositionTerm> antiderivative_terms(std::span<const DecompositionTerm> terms, int d,
                                                    const HomogeneousForm& x,
                                                    double zero_tol = Tolerances{}.zero);
HomogeneousForm antiderivative(std::span<const DecompositionTerm> terms, int d,
                               const HomogeneousForm& x, double zero_tol = Tolerances{}.zero);

/// Matrix of S^2 -> S_2, x ↦ ∂_x f, for a ternary quartic f. Column a holds
/// ∂_{X^a} f in the graded-lex basis, so entry (b, a) = f_{a+b} (a+b)!/b!.
/// Scaling row b by b! gives the symmetric Hankel-type matrix; rank is
/// unaffected.
Eigen::Matrix<Scalar, 6, 6> catalecticant_matrix(const HomogeneousForm& f);

/// Numerical rank by singular values relative to the largest.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-9);

}  // namespace waring7
