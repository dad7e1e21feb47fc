#pragma once

#include "oracle.hpp"
#include "waring7/binary_geom.hpp"
#include "waring7/form.hpp"

namespace fixtures {

inline Eigen::Matrix3cd random_rows(oracle::Rng& rng) {
  Eigen::Matrix3cd m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rng.complex();
  return m;
}

inline waring7::Frame random_frame(oracle::Rng& rng) { return waring7::make_frame(random_rows(rng)); }

/// Random quartic annihilated by x^0 x^1 x^2: random coefficients in frame
/// coordinates with the z0 z1 z2-divisible monomials left out.
inline waring7::HomogeneousForm harmonic_quartic(oracle::Rng& rng, const waring7::Frame& frame) {
  using namespace waring7;
  std::vector<Scalar> c;
  for (const auto& e : monomials(3, 4)) c.push_back(e[0] > 0 && e[1] > 0 && e[2] > 0 ? Scalar(0.0) : rng.complex());
  const HomogeneousForm z(Side::Primal, 3, 4, std::move(c));
  return substitute_linear(z, std::vector<HomogeneousForm>{frame.direction(0), frame.direction(1), frame.direction(2)});
}

struct Terms {
  std::vector<oracle::C> lambda;
  std::vector<std::vector<oracle::C>> v;
  std::vector<waring7::DecompositionTerm> terms;
};

inline Terms random_terms(oracle::Rng& rng, int r) {
  Terms t;
  for (int j = 0; j < r; ++j) {
    t.lambda.push_back(rng.complex());
    t.v.push_back(rng.vec(3));
    t.terms.push_back({t.lambda.back(), waring7::HomogeneousForm::linear(waring7::Side::Primal, t.v.back())});
  }
  return t;
}

/// Σ λ_j v_j^4 built by the sparse oracle, converted to a dense form.
inline waring7::HomogeneousForm oracle_quartic(const Terms& t) {
  using namespace waring7;
  const auto p = oracle::sum_of_powers(t.lambda, t.v, 4);
  std::vector<Scalar> c;
  for (const auto& e : monomials(3, 4)) {
    const auto it = p.find(e);
    c.push_back(it == p.end() ? Scalar(0.0) : it->second);
  }
  return HomogeneousForm(Side::Primal, 3, 4, std::move(c));
}

}  // namespace fixtures
