#pragma once

#include <array>

namespace quadsuite {

/// A point of the (q, p) phase plane in dimensionless quadrature units.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Orthonormal frame e1 = (cos t, sin t), e2 = (-sin t, cos t) of the phase plane.
///
/// A point decomposes as (q, p) = q_t e1 + p_t e2 with
///   q_t =  q cos t + p sin t,
///   p_t = -q sin t + p cos t.
/// The set of points with fixed q_t is the line l(t, q_t) through q_t e1 along e2.
class RotatedFrame {
 public:
  explicit RotatedFrame(double theta);

  double theta() const { return theta_; }
  std::array<double, 2> e1() const { return {c_, s_}; }
  std::array<double, 2> e2() const { return {-s_, c_}; }

  /// (q, p) -> (q_t, p_t).
  PhasePoint to_rotated(PhasePoint pt) const {
    return {pt.q * c_ + pt.p * s_, -pt.q * s_ + pt.p * c_};
  }
  /// (q_t, p_t) -> (q, p).
  PhasePoint to_cartesian(PhasePoint rotated) const {
    return {rotated.q * c_ - rotated.p * s_, rotated.q * s_ + rotated.p * c_};
  }

 private:
  double theta_;
  double c_;
  double s_;
};

}  // namespace quadsuite
