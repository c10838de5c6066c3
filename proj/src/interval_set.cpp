#include "quadsuite/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadsuite/errors.hpp"

namespace quadsuite {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_endpoint(std::string_view token) {
  std::string s(token);
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("interval: trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError("interval: cannot parse endpoint '" + s + "'");
  }
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi)) {
      throw ValidationError("interval set: each interval needs lo < hi");
    }
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t k = 1; k < intervals_.size(); ++k) {
    if (intervals_[k].lo < intervals_[k - 1].hi) {
      throw ValidationError("interval set: intervals overlap");
    }
  }
}

IntervalSet IntervalSet::real_line() { return IntervalSet({{-kInf, kInf}}); }
IntervalSet IntervalSet::single(double lo, double hi) { return IntervalSet({{lo, hi}}); }
IntervalSet IntervalSet::at_least(double lo) { return IntervalSet({{lo, kInf}}); }
IntervalSet IntervalSet::at_most(double hi) { return IntervalSet({{-kInf, hi}}); }

IntervalSet IntervalSet::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("interval: expected lo:hi, got '" + std::string(text) + "'");
  }
  return single(parse_endpoint(text.substr(0, colon)), parse_endpoint(text.substr(colon + 1)));
}

bool IntervalSet::is_bounded() const {
  return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& iv) {
    return std::isfinite(iv.lo) && std::isfinite(iv.hi);
  });
}

bool IntervalSet::is_real_line() const {
  return intervals_.size() == 1 && intervals_[0].lo == -kInf && intervals_[0].hi == kInf;
}

double IntervalSet::lebesgue() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

IntervalSet IntervalSet::shifted(double offset) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.push_back({iv.lo + offset, iv.hi + offset});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::clipped(double lo, double hi) const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    double a = std::max(iv.lo, lo);
    double b = std::min(iv.hi, hi);
    if (a < b) out.push_back({a, b});
  }
  return IntervalSet(std::move(out));
}

}  // namespace quadsuite
