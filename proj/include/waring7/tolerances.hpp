#pragma once

namespace waring7 {

/// Numerical thresholds shared by the whole pipeline. All of them are
/// relative: inputs are normalized by their max coefficient modulus first.
struct Tolerances {
  double zero = 1e-9;       // "is this numerically zero"
  double verify = 1e-8;     // accepted reconstruction residual
  double parabolic = 1e-7;  // normalized discriminant below which a 2x2 map has one fixed point
  double distinct = 1e-7;   // minimum projective distance between the six roots
};

}  // namespace waring7
