#pragma once

#include <Eigen/Dense>

namespace waring7::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Nullspace {
  Matrix basis;                    // orthonormal columns
  Eigen::VectorXd singular_values; // of the input, descending
};

/// Orthonormal basis of {z : A z = 0}. A singular value counts as zero when it
/// is at most rel_tol times the largest one.
Nullspace nullspace(const Matrix& a, double rel_tol);

/// Orthonormal basis of the vectors w with w^T v = 0 (bilinear, not Hermitian).
/// Its columns give linear functionals vanishing on v.
Matrix annihilator(const Vector& v);

struct LeastSquares {
  Vector solution;
  double relative_residual = 0.0;  // ‖A x − b‖ / ‖b‖ (Euclidean)
};

LeastSquares least_squares(const Matrix& a, const Vector& b);

/// Sine of the angle between the lines spanned by a and b; 0 means the same
/// projective point, 1 orthogonal.
double projective_distance(const Vector& a, const Vector& b);

}  // namespace waring7::linalg
