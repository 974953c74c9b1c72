#pragma once

#include <functional>
#include <vector>

#include "taaclab/tensor.hpp"

namespace taaclab {

// Central-difference gradient audit. `loss` must be deterministic in the
// parameter tensors (inputs, noise and any detached factors held fixed by the
// caller). Returns max over coordinates of
//   |analytic - numeric| / max(1, |numeric|).
double finite_diff_check(const std::function<double()>& loss,
                         const std::vector<Tensor*>& params,
                         const std::vector<const Tensor*>& analytic_grads, double h = 1e-6);

}  // namespace taaclab
