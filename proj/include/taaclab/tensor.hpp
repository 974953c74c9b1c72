#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace taaclab {

// Dense row-major f64 matrix. Vectors are 1xN or Nx1, scalars 1x1.
// All training math runs in 64-bit floats so that gradient checks stay tight.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c, double fill = 0.0) : rows(r), cols(c), v(size_t(r) * c, fill) {
    if (r < 0 || c < 0) throw std::invalid_argument("Tensor: negative extent");
  }
  static Tensor scalar(double x) {
    Tensor t(1, 1);
    t.v[0] = x;
    return t;
  }
  static Tensor row(std::span<const double> xs) {
    Tensor t(1, int(xs.size()));
    std::copy(xs.begin(), xs.end(), t.v.begin());
    return t;
  }

  size_t size() const { return v.size(); }
  double& at(int r, int c) { return v[size_t(r) * cols + c]; }
  double at(int r, int c) const { return v[size_t(r) * cols + c]; }
  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }

  bool all_finite() const {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }
};

inline std::string shape_str(const Tensor& t) {
  return "(" + std::to_string(t.rows) + "x" + std::to_string(t.cols) + ")";
}

}  // namespace taaclab
