#pragma once

#include <cstddef>
#include <vector>

namespace softchar::fitting {

/// Sampled (abscissa, ordinate) series. Abscissae must be strictly monotone,
/// increasing or decreasing; at least two points.
struct Curve {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  void validate() const;  // throws DataError when the invariants fail
  bool increasing() const { return x.back() > x.front(); }
  double min_x() const;
  double max_x() const;
};

Curve make_curve(std::vector<double> x, std::vector<double> y);

}  // namespace softchar::fitting
