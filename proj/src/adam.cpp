#include "taaclab/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace taaclab {

bool AdamState::step(const std::vector<Tensor*>& params,
                     const std::vector<const Tensor*>& grads) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("adam: parameter/gradient count mismatch");
  for (size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(m_[i]) || !grads[i]->same_shape(m_[i]))
      throw std::invalid_argument("adam: shape mismatch at tensor " + std::to_string(i));
    if (!grads[i]->all_finite()) return false;
  }
  t_ += 1;
  double bc1 = 1.0 - std::pow(kBeta1, double(t_));
  double bc2 = 1.0 - std::pow(kBeta2, double(t_));
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = *grads[i];
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (size_t k = 0; k < p.size(); ++k) {
      m.v[k] = kBeta1 * m.v[k] + (1.0 - kBeta1) * g.v[k];
      v.v[k] = kBeta2 * v.v[k] + (1.0 - kBeta2) * g.v[k] * g.v[k];
      double mhat = m.v[k] / bc1;
      double vhat = v.v[k] / bc2;
      p.v[k] -= lr_ * mhat / (std::sqrt(vhat) + kEps);
    }
  }
  return true;
}

}  // namespace taaclab
