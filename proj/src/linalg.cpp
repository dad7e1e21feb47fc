#include "waring7/linalg.hpp"

#include <algorithm>

namespace waring7::linalg {

Nullspace nullspace(const Matrix& a, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * top) ++rank;
  const Eigen::Index cols = a.cols();
  return {svd.matrixV().rightCols(cols - rank), s};
}

Matrix annihilator(const Vector& v) {
  // w^T v = 0  <=>  conj(w)^H v = 0, so take the Hermitian complement of v and conjugate.
  Matrix row = v.adjoint();
  Eigen::JacobiSVD<Matrix> svd(row, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(v.size() - 1).conjugate();
}

LeastSquares least_squares(const Matrix& a, const Vector& b) {
  Vector x = a.colPivHouseholderQr().solve(b);
  const double bn = b.norm();
  const double r = (a * x - b).norm();
  return {x, bn > 0 ? r / bn : r};
}

double projective_distance(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  // component of b/|b| orthogonal to a: stays accurate for nearly parallel inputs
  const Vector ua = a / na;
  const Vector ub = b / nb;
  return std::min(1.0, (ub - ua * ua.dot(ub)).norm());
}

}  // namespace waring7::linalg
