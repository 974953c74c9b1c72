#include "taaclab/grad_check.hpp"

#include <cmath>
#include <stdexcept>

namespace taaclab {

double finite_diff_check(const std::function<double()>& loss,
                         const std::vector<Tensor*>& params,
                         const std::vector<const Tensor*>& analytic_grads, double h) {
  if (params.size() != analytic_grads.size())
    throw std::invalid_argument("finite_diff_check: grad count mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = *analytic_grads[i];
    for (size_t k = 0; k < p.size(); ++k) {
      double saved = p.v[k];
      p.v[k] = saved + h;
      double up = loss();
      p.v[k] = saved - h;
      double down = loss();
      p.v[k] = saved;
      double numeric = (up - down) / (2.0 * h);
      double err = std::abs(g.v[k] - numeric) / std::max(1.0, std::abs(numeric));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace taaclab
