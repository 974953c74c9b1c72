#pragma once

#include <cstdint>
#include <vector>

#include "taaclab/tensor.hpp"

namespace taaclab {

// Adam with bias correction; beta1=0.9, beta2=0.999, eps=1e-7.
class AdamState {
 public:
  AdamState() = default;
  explicit AdamState(const std::vector<Tensor*>& params, double lr) : lr_(lr) {
    for (const Tensor* p : params) {
      m_.emplace_back(p->rows, p->cols);
      v_.emplace_back(p->rows, p->cols);
    }
  }

  // One update in-place. Returns false (and leaves params, moments and the
  // step counter untouched) if any gradient is non-finite.
  bool step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads);

  int64_t steps() const { return t_; }
  double lr() const { return lr_; }
  void set_lr(double lr) { lr_ = lr; }

  std::vector<Tensor>& moments1() { return m_; }
  std::vector<Tensor>& moments2() { return v_; }
  void set_steps(int64_t t) { t_ = t; }

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-7;

 private:
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  int64_t t_ = 0;
  double lr_ = 1e-4;
};

}  // namespace taaclab
