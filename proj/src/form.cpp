#include "waring7/form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "waring7/errors.hpp"

namespace waring7 {

namespace {

void check_shape(int nvars, int degree) {
  require(nvars == 2 || nvars == 3, "nvars must be 2 or 3, got " + std::to_string(nvars));
  require(degree >= 0, "degree must be nonnegative");
}

Scalar ipow(Scalar base, int e) {
  Scalar r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool divides(const Exponent& a, const Exponent& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition: return "PRECONDITION";
    case ErrorKind::AntiderivativeUndefined: return "ANTIDERIVATIVE_UNDEFINED";
    case ErrorKind::DegenerateFrame: return "DEGENERATE_FRAME";
    case ErrorKind::NotInKernel: return "NOT_IN_KERNEL";
    case ErrorKind::ZeroForm: return "ZERO_FORM";
    case ErrorKind::OmegaDegenerate: return "OMEGA_DEGENERATE";
    case ErrorKind::FrameFitFailed: return "FRAME_FIT_FAILED";
    case ErrorKind::CollinearDirections: return "COLLINEAR_DIRECTIONS";
    case ErrorKind::InconsistentSystem: return "INCONSISTENT_SYSTEM";
    case ErrorKind::NotInL: return "NOT_IN_L";
    case ErrorKind::QSquare: return "Q_SQUARE";
    case ErrorKind::IdentityMap: return "IDENTITY_MAP";
    case ErrorKind::TangentConic: return "TANGENT_CONIC";
    case ErrorKind::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

std::size_t monomial_count(int nvars, int degree) {
  check_shape(nvars, degree);
  const auto d = static_cast<std::size_t>(degree);
  return nvars == 2 ? d + 1 : (d + 1) * (d + 2) / 2;
}

std::vector<Exponent> monomials(int nvars, int degree) {
  check_shape(nvars, degree);
  std::vector<Exponent> out;
  out.reserve(monomial_count(nvars, degree));
  for (int a = degree; a >= 0; --a) {
    if (nvars == 2) {
      out.push_back({a, degree - a, 0});
      continue;
    }
    for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  }
  return out;
}

std::size_t monomial_index(int nvars, const Exponent& e) {
  const int d = e[0] + e[1] + e[2];
  if (nvars == 2) return static_cast<std::size_t>(d - e[0]);
  // monomials with a larger first exponent come first: Σ_{a' > a} (d - a' + 1)
  const int k = d - e[0];
  const auto before = static_cast<std::size_t>(k * (k + 1) / 2);
  return before + static_cast<std::size_t>(k - e[1]);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

HomogeneousForm::HomogeneousForm(Side side, int nvars, int degree)
    : side_(side), nvars_(nvars), degree_(degree), coeffs_(monomial_count(nvars, degree)) {}

HomogeneousForm::HomogeneousForm(Side side, int nvars, int degree, std::vector<Scalar> coeffs)
    : side_(side), nvars_(nvars), degree_(degree), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == monomial_count(nvars, degree),
          "coefficient count " + std::to_string(coeffs_.size()) + " does not match degree " +
              std::to_string(degree) + " in " + std::to_string(nvars) + " variables");
  for (const auto& c : coeffs_)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "non-finite coefficient");
}

HomogeneousForm HomogeneousForm::monomial(Side side, int nvars, const Exponent& e, Scalar value) {
  require(e[0] >= 0 && e[1] >= 0 && e[2] >= 0, "negative exponent");
  require(nvars == 3 || e[2] == 0, "binary monomial uses a third variable");
  HomogeneousForm f(side, nvars, e[0] + e[1] + e[2]);
  f.coeffs_[monomial_index(nvars, e)] = value;
  return f;
}

HomogeneousForm HomogeneousForm::linear(Side side, std::span<const Scalar> coords) {
  const int n = static_cast<int>(coords.size());
  std::vector<Scalar> c(coords.begin(), coords.end());
  return HomogeneousForm(side, n, 1, std::move(c));
}

HomogeneousForm HomogeneousForm::linear(Side side, std::initializer_list<Scalar> coords) {
  return linear(side, std::span<const Scalar>(coords.begin(), coords.size()));
}

Scalar HomogeneousForm::coeff(const Exponent& e) const {
  require(e[0] + e[1] + e[2] == degree_, "exponent degree mismatch");
  return coeffs_[monomial_index(nvars_, e)];
}

double HomogeneousForm::norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Eigen::VectorXcd HomogeneousForm::to_vector() const {
  return Eigen::Map<const Eigen::VectorXcd>(coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size()));
}

HomogeneousForm HomogeneousForm::from_vector(Side side, int nvars, int degree,
                                             const Eigen::VectorXcd& v) {
  return HomogeneousForm(side, nvars, degree, std::vector<Scalar>(v.data(), v.data() + v.size()));
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& other) {
  require(same_space(other), "adding forms from different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& other) {
  require(same_space(other), "subtracting forms from different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

HomogeneousForm& HomogeneousForm::operator*=(Scalar s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

std::vector<Scalar> linear_coords(const HomogeneousForm& v) {
  require(v.degree() == 1, "expected a linear form");
  return {v.coeffs().begin(), v.coeffs().end()};
}

double relative_difference(const HomogeneousForm& a, const HomogeneousForm& b,
                           const HomogeneousForm& reference) {
  const double diff = (a - b).norm();
  const double scale = reference.norm();
  if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / scale;
}

HomogeneousForm apolar_apply(const HomogeneousForm& x, const HomogeneousForm& f) {
  require(x.side() == Side::Dual, "apolar_apply: operator must be a dual form");
  require(f.side() == Side::Primal, "apolar_apply: operand must be a primal form");
  require(x.nvars() == f.nvars(), "apolar_apply: nvars mismatch");
  require(x.degree() <= f.degree(), "apolar_apply: operator degree exceeds operand degree");

  const int n = f.nvars();
  HomogeneousForm out(Side::Primal, n, f.degree() - x.degree());
  std::vector<Scalar> acc(out.size());
  const auto xs = monomials(n, x.degree());
  const auto fs = monomials(n, f.degree());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (x[i] == Scalar{}) continue;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (f[j] == Scalar{} || !divides(xs[i], fs[j])) continue;
      Exponent rest{};
      double weight = 1.0;
      for (int k = 0; k < 3; ++k) {
        rest[k] = fs[j][k] - xs[i][k];
        weight *= factorial(fs[j][k]) / factorial(rest[k]);
      }
      acc[monomial_index(n, rest)] += x[i] * f[j] * weight;
    }
  }
  return HomogeneousForm(Side::Primal, n, out.degree(), std::move(acc));
}

Eigen::MatrixXcd apolar_matrix(const HomogeneousForm& x, int d) {
  require(x.side() == Side::Dual, "apolar_matrix: operator must be dual");
  require(x.degree() <= d, "apolar_matrix: operator degree exceeds operand degree");
  const int n = x.nvars();
  const auto es = monomials(n, d);
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(monomial_count(n, d - x.degree())),
                     static_cast<Eigen::Index>(es.size()));
  for (std::size_t j = 0; j < es.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) =
        apolar_apply(x, HomogeneousForm::monomial(Side::Primal, n, es[j])).to_vector();
  return m;
}

HomogeneousForm multiply(const HomogeneousForm& a, const HomogeneousForm& b) {
  require(a.side() == b.side(), "multiply: side mismatch");
  require(a.nvars() == b.nvars(), "multiply: nvars mismatch");
  const int n = a.nvars();
  const auto as = monomials(n, a.degree());
  const auto bs = monomials(n, b.degree());
  std::vector<Scalar> acc(monomial_count(n, a.degree() + b.degree()));
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (a[i] == Scalar{}) continue;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const Exponent e{as[i][0] + bs[j][0], as[i][1] + bs[j][1], as[i][2] + bs[j][2]};
      acc[monomial_index(n, e)] += a[i] * b[j];
    }
  }
  return HomogeneousForm(a.side(), n, a.degree() + b.degree(), std::move(acc));
}

HomogeneousForm dual_multiply(const HomogeneousForm& x, const HomogeneousForm& y) {
  require(x.side() == Side::Dual && y.side() == Side::Dual, "dual_multiply: both factors must be dual");
  return multiply(x, y);
}

HomogeneousForm power_of_linear(const HomogeneousForm& v, int d) {
  require(v.degree() == 1, "power_of_linear: expected a linear form");
  require(d >= 0, "power_of_linear: negative exponent");
  const int n = v.nvars();
  const auto c = linear_coords(v);
  const auto es = monomials(n, d);
  std::vector<Scalar> out(es.size());
  const double dfact = factorial(d);
  for (std::size_t i = 0; i < es.size(); ++i) {
    Scalar term = dfact;
    for (int k = 0; k < n; ++k) term *= ipow(c[k], es[i][k]) / factorial(es[i][k]);
    out[i] = term;
  }
  return HomogeneousForm(v.side(), n, d, std::move(out));
}

Scalar evaluate_dual(const HomogeneousForm& x, const HomogeneousForm& v) {
  require(x.side() == Side::Dual, "evaluate_dual: first argument must be dual");
  require(v.side() == Side::Primal && v.degree() == 1, "evaluate_dual: second argument must be a primal linear form");
  require(x.nvars() == v.nvars(), "evaluate_dual: nvars mismatch");
  const auto c = linear_coords(v);
  const auto es = monomials(x.nvars(), x.degree());
  Scalar sum{};
  for (std::size_t i = 0; i < es.size(); ++i) {
    Scalar term = x[i];
    for (int k = 0; k < x.nvars(); ++k) term *= ipow(c[k], es[i][k]);
    sum += term;
  }
  return sum;
}

HomogeneousForm substitute_linear(const HomogeneousForm& f, std::span<const HomogeneousForm> images) {
  require(static_cast<int>(images.size()) == f.nvars(), "substitute_linear: one image per variable");
  const int m = images.front().nvars();
  for (const auto& img : images) {
    require(img.degree() == 1 && img.nvars() == m, "substitute_linear: images must be linear in a common ring");
  }
  // powers[k][p] = images[k]^p, with the side of f
  std::vector<std::vector<HomogeneousForm>> powers(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    HomogeneousForm base(f.side(), m, 1, linear_coords(images[k]));
    powers[k].push_back(HomogeneousForm::monomial(f.side(), m, {0, 0, 0}));
    for (int p = 1; p <= f.degree(); ++p) powers[k].push_back(multiply(powers[k].back(), base));
  }
  HomogeneousForm out(f.side(), m, f.degree());
  const auto es = monomials(f.nvars(), f.degree());
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (f[i] == Scalar{}) continue;
    HomogeneousForm term = powers[0][es[i][0]];
    for (std::size_t k = 1; k < images.size(); ++k) term = multiply(term, powers[k][es[i][k]]);
    out += term * f[i];
  }
  return out;
}

HomogeneousForm expand(std::span<const DecompositionTerm> terms, int d) {
  require(!terms.empty(), "expand: empty term list");
  HomogeneousForm out(Side::Primal, terms.front().direction.nvars(), d);
  for (const auto& t : terms) out += power_of_linear(t.direction, d) * t.coefficient;
  return out;
}

std::vector<DecompositionTerm> antiderivative_terms(std::span<const DecompositionTerm> terms, int d,
                                                    const HomogeneousForm& x, double zero_tol) {
  require(!terms.empty(), "antiderivative: empty term list");
  require(x.side() == Side::Dual, "antiderivative: operator must be dual");
  require(d >= 0, "antiderivative: negative degree");
  const int delta = x.degree();
  const double ratio = factorial(d) / factorial(d + delta);
  std::vector<DecompositionTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const Scalar xv = evaluate_dual(x, t.direction);
    const double scale = x.norm() * std::pow(t.direction.norm(), static_cast<double>(delta));
    if (!(std::abs(xv) > zero_tol * scale)) {
      throw Error(ErrorKind::AntiderivativeUndefined,
                  "antiderivative undefined: the operator vanishes on a term direction");
    }
    out.push_back({t.coefficient * ratio / xv, t.direction});
  }
  return out;
}

HomogeneousForm antiderivative(std::span<const DecompositionTerm> terms, int d,
                               const HomogeneousForm& x, double zero_tol) {
  const auto lifted = antiderivative_terms(terms, d, x, zero_tol);
  return expand(lifted, d + x.degree());
}

Eigen::Matrix<Scalar, 6, 6> catalecticant_matrix(const HomogeneousForm& f) {
  require(f.side() == Side::Primal && f.nvars() == 3 && f.degree() == 4,
          "catalecticant_matrix: expected a primal ternary quartic");
  Eigen::Matrix<Scalar, 6, 6> m;
  const auto quad = monomials(3, 2);
  for (std::size_t a = 0; a < quad.size(); ++a) {
    const auto col = apolar_apply(HomogeneousForm::monomial(Side::Dual, 3, quad[a]), f);
    for (std::size_t b = 0; b < quad.size(); ++b) m(static_cast<int>(b), static_cast<int>(a)) = col[b];
  }
  return m;
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace waring7
