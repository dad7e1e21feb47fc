#include "waring7/binary_geom.hpp"

#include <algorithm>
#include <cmath>

#include "waring7/errors.hpp"
#include "waring7/linalg.hpp"

namespace waring7 {

namespace {

void require_binary(const HomogeneousForm& f, Side side, int degree, const char* what) {
  require(f.side() == side && f.nvars() == 2 && f.degree() == degree, what);
}

HomogeneousForm ternary_linear(Side side, const Eigen::Vector3cd& c) {
  return HomogeneousForm::linear(side, {c(0), c(1), c(2)});
}

// Apolarity pairing of a dual binary quadratic with a primal one.
Scalar quadric_pairing(const HomogeneousForm& h, const HomogeneousForm& q) {
  return 2.0 * h[0] * q[0] + h[1] * q[1] + 2.0 * h[2] * q[2];
}

}  // namespace

Eigen::Matrix3cd Frame::dual_matrix() const {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m(i, k) = x_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  return m;
}

HomogeneousForm Frame::triple_product() const {
  return dual_multiply(dual_multiply(x_[0], x_[1]), x_[2]);
}

HomogeneousForm Frame::to_frame_coordinates(const HomogeneousForm& f) const {
  require(f.side() == Side::Primal && f.nvars() == 3, "to_frame_coordinates: expected a ternary primal form");
  const Eigen::Matrix3cd x = dual_matrix();
  const std::array<HomogeneousForm, 3> images{ternary_linear(Side::Primal, x.col(0)),
                                              ternary_linear(Side::Primal, x.col(1)),
                                              ternary_linear(Side::Primal, x.col(2))};
  return substitute_linear(f, images);
}

double Frame::triple_defect(const HomogeneousForm& f, double scale) const {
  const HomogeneousForm g = to_frame_coordinates(f);
  if (scale <= 0.0) scale = g.norm();
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  const auto es = monomials(3, g.degree());
  for (std::size_t j = 0; j < es.size(); ++j)
    if (es[j][0] > 0 && es[j][1] > 0 && es[j][2] > 0) defect = std::max(defect, std::abs(g[j]));
  return defect / scale;
}

Frame make_frame(const HomogeneousForm& x0, const HomogeneousForm& x1, const HomogeneousForm& x2,
                 double zero_tol) {
  for (const auto* x : {&x0, &x1, &x2}) {
    require(x->side() == Side::Dual && x->nvars() == 3 && x->degree() == 1,
            "make_frame: expected ternary dual linear forms");
  }
  Eigen::Matrix3cd m;
  const std::array<const HomogeneousForm*, 3> xs{&x0, &x1, &x2};
  double scale = 1.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) m(i, k) = (*xs[static_cast<std::size_t>(i)])[static_cast<std::size_t>(k)];
    scale *= m.row(i).norm();
  }
  const double det = std::abs(m.determinant());
  if (!(scale > 0.0) || !(det > zero_tol * scale)) {
    throw Error(ErrorKind::DegenerateFrame, "make_frame: dual forms are linearly dependent");
  }
  // x^j(v_i) = δ_ij  <=>  V = X^{-1} with v_i the i-th column
  const Eigen::Matrix3cd inv = m.inverse();
  return Frame({x0, x1, x2}, {ternary_linear(Side::Primal, inv.col(0)),
                              ternary_linear(Side::Primal, inv.col(1)),
                              ternary_linear(Side::Primal, inv.col(2))});
}

Frame make_frame(const Eigen::Matrix3cd& rows, double zero_tol) {
  return make_frame(ternary_linear(Side::Dual, rows.row(0).transpose()),
                    ternary_linear(Side::Dual, rows.row(1).transpose()),
                    ternary_linear(Side::Dual, rows.row(2).transpose()), zero_tol);
}

Frame standard_frame() { return make_frame(Eigen::Matrix3cd::Identity()); }

BinaryContext::BinaryContext(Frame frame, int index) : frame_(std::move(frame)), index_(index) {
  require(index >= 0 && index < 3, "BinaryContext: index must be 0, 1 or 2");
}

const HomogeneousForm& BinaryContext::primal_basis(int k) const {
  require(k == 0 || k == 1, "BinaryContext: basis index must be 0 or 1");
  return frame_.direction(k == 0 ? next_index(index_) : next_index(next_index(index_)));
}

const HomogeneousForm& BinaryContext::dual_basis(int k) const {
  require(k == 0 || k == 1, "BinaryContext: basis index must be 0 or 1");
  return frame_.dual(k == 0 ? next_index(index_) : next_index(next_index(index_)));
}

HomogeneousForm BinaryContext::restrict_to_binary(const HomogeneousForm& f, double zero_tol,
                                                  double scale) const {
  require(f.side() == Side::Primal && f.nvars() == 3, "restrict_to_binary: expected a ternary primal form");
  const HomogeneousForm g = frame_.to_frame_coordinates(f);

  const int i1 = next_index(index_);
  const int i2 = next_index(i1);
  double off_kernel = 0.0;
  std::vector<Scalar> coeffs(monomial_count(2, f.degree()));
  const auto es = monomials(3, f.degree());
  for (std::size_t j = 0; j < es.size(); ++j) {
    if (es[j][static_cast<std::size_t>(index_)] > 0) {
      off_kernel = std::max(off_kernel, std::abs(g[j]));
      continue;
    }
    const Exponent be{es[j][static_cast<std::size_t>(i1)], es[j][static_cast<std::size_t>(i2)], 0};
    coeffs[monomial_index(2, be)] = g[j];
  }
  if (off_kernel > zero_tol * std::max(g.norm(), scale)) {
    throw Error(ErrorKind::NotInKernel, "restrict_to_binary: form is not annihilated by x^" +
                                            std::to_string(index_));
  }
  return HomogeneousForm(Side::Primal, 2, f.degree(), std::move(coeffs));
}

HomogeneousForm BinaryContext::embed_from_binary(const HomogeneousForm& b) const {
  require(b.nvars() == 2, "embed_from_binary: expected a binary form");
  const bool primal = b.side() == Side::Primal;
  const std::array<HomogeneousForm, 2> images{primal ? primal_basis(0) : dual_basis(0),
                                              primal ? primal_basis(1) : dual_basis(1)};
  return substitute_linear(b, images);
}

HomogeneousForm BinaryContext::direction(const ProjPoint& p) const {
  return primal_basis(0) * p[0] + primal_basis(1) * p[1];
}

Eigen::Matrix2cd BinaryContext::pairing_matrix() const {
  Eigen::Matrix2cd m;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) m(k, l) = apolar_apply(dual_basis(k), primal_basis(l))[0];
  return m;
}

ProjPoint::ProjPoint(Scalar a, Scalar b, double zero_tol) {
  for (const auto& c : {a, b}) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::ZeroForm, "ProjPoint: non-finite coordinate");
  }
  const Scalar pivot = std::abs(b) > std::abs(a) ? b : a;
  if (!(std::abs(pivot) > zero_tol)) throw Error(ErrorKind::ZeroForm, "ProjPoint: zero vector");
  coords_ = {a / pivot, b / pivot};
  // exact 1 at the pivot, so renormalizing is a no-op
  if (std::abs(b) > std::abs(a)) coords_[1] = 1.0; else coords_[0] = 1.0;
}

double projective_distance(const ProjPoint& a, const ProjPoint& b) {
  return linalg::projective_distance(a.vector(), b.vector());
}

ProjMap ProjMap::make(const Eigen::Matrix2cd& m, std::string domain, std::string codomain,
                      double zero_tol) {
  const double n = m.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::FrameFitFailed, "ProjMap: zero matrix");
  Eigen::Matrix2cd normalized = m / n;
  if (!(std::abs(normalized.determinant()) > zero_tol)) {
    throw Error(ErrorKind::FrameFitFailed, "ProjMap: singular matrix");
  }
  return {normalized, std::move(domain), std::move(codomain)};
}

ProjMap ProjMap::inverse() const {
  return make(matrix.inverse(), codomain, domain, 0.0);
}

ProjMap compose(const ProjMap& outer, const ProjMap& inner) {
  require(inner.codomain.empty() || outer.domain.empty() || inner.codomain == outer.domain,
          "compose: basis mismatch between " + inner.codomain + " and " + outer.domain);
  return ProjMap::make(outer.matrix * inner.matrix, inner.domain, outer.codomain, 0.0);
}

double relative_discriminant(const HomogeneousForm& q) {
  require(q.nvars() == 2 && q.degree() == 2, "relative_discriminant: expected a binary quadratic");
  const double scale = q.norm();
  if (scale == 0.0) throw Error(ErrorKind::ZeroForm, "relative_discriminant: zero quadratic");
  const Scalar disc = q[1] * q[1] - 4.0 * q[0] * q[2];
  return std::abs(disc) / (scale * scale);
}

bool is_square(const HomogeneousForm& q, double tol) {
  require_binary(q, Side::Primal, 2, "is_square: expected a primal binary quadratic");
  return relative_discriminant(q) <= tol;
}

std::pair<HomogeneousForm, HomogeneousForm> quadric_perp(const HomogeneousForm& q) {
  require_binary(q, Side::Primal, 2, "quadric_perp: expected a primal binary quadratic");
  if (q.is_zero()) throw Error(ErrorKind::ZeroForm, "quadric_perp: zero quadratic");
  // Pairing row r = (2a, b, 2c). Eliminate the largest entry so the basis
  // depends continuously on q: e_j − (r_j / r_k) e_k for j ≠ k.
  const std::array<Scalar, 3> r{2.0 * q[0], q[1], 2.0 * q[2]};
  std::size_t k = 0;
  for (std::size_t j = 1; j < 3; ++j)
    if (std::abs(r[j]) > std::abs(r[k])) k = j;
  std::array<HomogeneousForm, 2> basis{HomogeneousForm(Side::Dual, 2, 2), HomogeneousForm(Side::Dual, 2, 2)};
  std::size_t slot = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == k) continue;
    std::vector<Scalar> c(3);
    c[j] = 1.0;
    c[k] = -r[j] / r[k];
    basis[slot++] = HomogeneousForm(Side::Dual, 2, 2, std::move(c));
  }
  return {basis[0], basis[1]};
}

Eigen::Matrix<Scalar, 4, 2> omega_domain_basis(const HomogeneousForm& q, const HomogeneousForm& x) {
  require_binary(q, Side::Primal, 2, "omega_domain_basis: expected a primal binary quadratic");
  require_binary(x, Side::Dual, 1, "omega_domain_basis: expected a dual binary linear form");
  if (q.is_zero() || x.is_zero()) throw Error(ErrorKind::ZeroForm, "omega_domain_basis: zero input");
  const linalg::Matrix conditions = linalg::annihilator(q.to_vector()).transpose() * apolar_matrix(x, 3);
  const auto ns = linalg::nullspace(conditions, 1e-12);
  if (ns.basis.cols() != 2) throw Error(ErrorKind::OmegaDegenerate, "omega_domain_basis: L is not two-dimensional");
  return ns.basis;
}

HomogeneousForm omega_point(const HomogeneousForm& q, const HomogeneousForm& x,
                            const HomogeneousForm& h, double zero_tol) {
  require_binary(q, Side::Primal, 2, "omega_point: expected a primal binary quadratic");
  require_binary(x, Side::Dual, 1, "omega_point: expected a dual binary linear form");
  require_binary(h, Side::Dual, 2, "omega_point: expected a dual binary quadratic");
  if (q.is_zero()) throw Error(ErrorKind::ZeroForm, "omega_point: zero quadratic");
  require(!x.is_zero() && !h.is_zero(), "omega_point: x and h must be nonzero");
  require(std::abs(quadric_pairing(h, q)) <= zero_tol * h.norm() * q.norm(),
          "omega_point: h is not in the orthogonal complement of q");
  if (is_square(q, zero_tol)) throw Error(ErrorKind::OmegaDegenerate, "omega_point: q is a square");

  linalg::Matrix dh = apolar_matrix(h, 3);
  linalg::Matrix dq = linalg::annihilator(q.to_vector()).transpose() * apolar_matrix(x, 3);
  linalg::Matrix system(4, 4);
  system.topRows(2) = dh / dh.norm();
  system.bottomRows(2) = dq / dq.norm();

  Eigen::JacobiSVD<linalg::Matrix> svd(system, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s(3) <= zero_tol * s(0)) || !(s(2) > zero_tol * s(0))) {
    throw Error(ErrorKind::OmegaDegenerate, "omega_point: solution space is not one-dimensional");
  }
  linalg::Vector f = svd.matrixV().col(3);
  Eigen::Index pivot = 0;
  f.cwiseAbs().maxCoeff(&pivot);
  f /= f(pivot);
  return HomogeneousForm::from_vector(Side::Primal, 2, 3, f);
}

Eigen::Vector2cd perp_coords(const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                             const HomogeneousForm& h) {
  linalg::Matrix basis(3, 2);
  basis << perp.first.to_vector(), perp.second.to_vector();
  return linalg::least_squares(basis, h.to_vector()).solution;
}

HomogeneousForm perp_element(const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                             const Eigen::Vector2cd& coords) {
  return perp.first * coords(0) + perp.second * coords(1);
}

ProjMap omega_map(const HomogeneousForm& q, const HomogeneousForm& x,
                  const std::pair<HomogeneousForm, HomogeneousForm>& perp,
                  const Eigen::Matrix<Scalar, 4, 2>& l_basis, const std::string& label,
                  double zero_tol) {
  const std::array<HomogeneousForm, 3> probes{perp.first, perp.second, perp.first + perp.second};
  std::array<Eigen::Vector2cd, 3> images;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const linalg::Vector f = omega_point(q, x, probes[k], zero_tol).to_vector();
    const linalg::Vector c = l_basis.adjoint() * f;
    if ((l_basis * c - f).norm() > Tolerances{}.verify * f.norm()) {
      throw Error(ErrorKind::OmegaDegenerate, "omega_map: image does not lie in L");
    }
    images[k] = c / c.norm();
  }
  Eigen::Matrix2cd p;
  p << images[0], images[1];
  if (!(std::abs(p.determinant()) > zero_tol)) {
    throw Error(ErrorKind::FrameFitFailed, "omega_map: images of the basis coincide");
  }
  const Eigen::Vector2cd scales = p.partialPivLu().solve(images[2]);
  if (!(std::abs(scales(0)) > zero_tol) || !(std::abs(scales(1)) > zero_tol)) {
    throw Error(ErrorKind::FrameFitFailed, "omega_map: images are not in general position");
  }
  Eigen::Matrix2cd m;
  m << images[0] * scales(0), images[1] * scales(1);
  return ProjMap::make(m, "perp(" + label + ")", "L(" + label + ")", zero_tol);
}

RootPair roots_of_dual_quadratic(const HomogeneousForm& h, double zero_tol) {
  require_binary(h, Side::Dual, 2, "roots_of_dual_quadratic: expected a dual binary quadratic");
  const double scale = h.norm();
  if (scale == 0.0) throw Error(ErrorKind::ZeroForm, "roots_of_dual_quadratic: zero form");
  const Scalar a = h[0] / scale;
  const Scalar b = h[1] / scale;
  const Scalar c = h[2] / scale;
  const Scalar disc = b * b - 4.0 * a * c;
  Scalar sd = std::sqrt(disc);
  if ((std::conj(b) * sd).real() < 0.0) sd = -sd;
  const Scalar t = -0.5 * (b + sd);  // |t| is bounded below by |b|/2, avoids cancellation

  // [t : a] and [c : t] are the roots s/t = t/a and s/t = c/t written
  // homogeneously; when t vanishes (b = 0 and ac = 0) one of them is [0 : 0]
  // and the other is the double root.
  Eigen::Vector2cd r1{t, a};
  Eigen::Vector2cd r2{c, t};
  if (r1.norm() == 0.0) r1 = r2;
  if (r2.norm() == 0.0) r2 = r1;
  const double rel_disc = std::abs(disc);
  RootPair out{ProjPoint(r1 / r1.norm(), 0.0), ProjPoint(r2 / r2.norm(), 0.0), rel_disc <= zero_tol,
               rel_disc};
  if (out.repeated) out.second = out.first;
  return out;
}

std::pair<Scalar, Scalar> sum_of_squares_coeffs(const HomogeneousForm& q, const HomogeneousForm& u,
                                                const HomogeneousForm& w, const Tolerances& tol) {
  require_binary(q, Side::Primal, 2, "sum_of_squares_coeffs: expected a primal binary quadratic");
  require_binary(u, Side::Primal, 1, "sum_of_squares_coeffs: u must be a primal binary linear form");
  require_binary(w, Side::Primal, 1, "sum_of_squares_coeffs: w must be a primal binary linear form");
  if (linalg::projective_distance(u.to_vector(), w.to_vector()) <= tol.zero) {
    throw Error(ErrorKind::CollinearDirections, "sum_of_squares_coeffs: u and w span the same point");
  }
  linalg::Matrix a(3, 2);
  a << power_of_linear(u, 2).to_vector(), power_of_linear(w, 2).to_vector();
  const auto ls = linalg::least_squares(a, q.to_vector());
  if (ls.relative_residual > tol.verify) {
    throw Error(ErrorKind::InconsistentSystem,
                "sum_of_squares_coeffs: q is not in the span of u^2 and w^2");
  }
  return {ls.solution(0), ls.solution(1)};
}

}  // namespace waring7
