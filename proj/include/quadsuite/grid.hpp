#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "quadsuite/errors.hpp"

namespace quadsuite {

/// Uniform grid min, min + step, ..., max (max is snapped to the last node).
struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  Axis() = default;
  Axis(double min_, double max_, double step_);

  /// Parses "min:max:step".
  static Axis parse(std::string_view text);

  std::size_t size() const;
  double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
  std::vector<double> nodes() const;
};

/// Samples of a real or complex function on a 1D or 2D uniform grid.
/// 2D values are stored row-major in the first axis: index = i * ny + j.
template <class T>
class BasicGridFunction {
 public:
  BasicGridFunction(Axis x, std::vector<T> values) : axes_{x}, values_(std::move(values)) {
    check();
  }
  BasicGridFunction(Axis x, Axis y, std::vector<T> values)
      : axes_{x, y}, values_(std::move(values)) {
    check();
  }

  std::size_t rank() const { return axes_.size(); }
  const Axis& axis(std::size_t k) const { return axes_.at(k); }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  const T& operator()(std::size_t i) const { return values_[i]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return values_[i * axes_[1].size() + j];
  }

 private:
  void check() const {
    std::size_t expected = 1;
    for (const auto& a : axes_) expected *= a.size();
    if (expected != values_.size()) {
      throw ValidationError("grid function: value count does not match axes");
    }
  }

  std::vector<Axis> axes_;
  std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;

}  // namespace quadsuite
