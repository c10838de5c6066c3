#include "quadsuite/grid.hpp"

#include <cmath>
#include <string>

#include "quadsuite/frame.hpp"

namespace quadsuite {

Axis::Axis(double min_, double max_, double step_) : min(min_), max(max_), step(step_) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("grid: step must be > 0");
  if (!std::isfinite(min) || !std::isfinite(max) || max < min) {
    throw ValidationError("grid: need finite min <= max");
  }
  // Snap max onto the lattice so that at(size() - 1) == max up to rounding.
  max = at(size() - 1);
}

Axis Axis::parse(std::string_view text) {
  std::string s(text);
  auto c1 = s.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ValidationError("grid: expected min:max:step, got '" + s + "'");
  try {
    return Axis(std::stod(s.substr(0, c1)), std::stod(s.substr(c1 + 1, c2 - c1 - 1)),
                std::stod(s.substr(c2 + 1)));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("grid: cannot parse '" + s + "'");
  }
}

std::size_t Axis::size() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> Axis::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
  return out;
}

RotatedFrame::RotatedFrame(double theta)
    : theta_(std::fmod(theta, 2.0 * M_PI)), c_(std::cos(theta)), s_(std::sin(theta)) {
  if (theta_ < 0.0) theta_ += 2.0 * M_PI;
}

}  // namespace quadsuite
