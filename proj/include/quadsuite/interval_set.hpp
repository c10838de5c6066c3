#pragma once

#include <limits>
#include <string_view>
#include <vector>

namespace quadsuite {

struct Interval {
  double lo;
  double hi;
};

/// Finite union of disjoint real intervals, kept sorted ascending.
///
/// Endpoints may be infinite, so half-lines and the whole real line are
/// ordinary members. Adjacent intervals may touch (they share a null set).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet real_line();
  static IntervalSet single(double lo, double hi);
  static IntervalSet at_least(double lo);
  static IntervalSet at_most(double hi);

  /// Parses "lo:hi" with optional "inf" / "-inf" endpoints.
  static IntervalSet parse(std::string_view text);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool is_bounded() const;
  bool is_real_line() const;

  /// Lebesgue measure; +inf for unbounded sets.
  double lebesgue() const;
  bool contains(double x) const;

  IntervalSet shifted(double offset) const;
  IntervalSet clipped(double lo, double hi) const;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace quadsuite
