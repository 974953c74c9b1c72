#pragma once

#include <vector>

#include "taaclab/rng.hpp"
#include "taaclab/tape.hpp"
#include "taaclab/tensor.hpp"

namespace taaclab {

// Fully connected network with rectified-linear hidden activations and a
// linear output layer. Weights are (in x out), biases (1 x out).
struct MlpParams {
  struct Layer {
    Tensor w;
    Tensor b;
  };
  std::vector<Layer> layers;

  int input_dim() const { return layers.empty() ? 0 : layers.front().w.rows; }
  int output_dim() const { return layers.empty() ? 0 : layers.back().w.cols; }

  std::vector<Tensor*> tensors() {
    std::vector<Tensor*> out;
    for (auto& l : layers) {
      out.push_back(&l.w);
      out.push_back(&l.b);
    }
    return out;
  }
  std::vector<const Tensor*> tensors() const {
    std::vector<const Tensor*> out;
    for (auto& l : layers) {
      out.push_back(&l.w);
      out.push_back(&l.b);
    }
    return out;
  }
};

// Hidden weights uniform in +-sqrt(6/(fan_in+fan_out)), biases zero.
MlpParams make_mlp(int input, const std::vector<int>& hidden, int output, Rng& rng);

// Forward pass recorded on the tape. Returns the output node; fills
// `param_nodes` (one leaf per weight/bias, in MlpParams::tensors order) so the
// caller can read gradients back after backward().
NodeId mlp_forward(const MlpParams& params, NodeId input, Tape& tape,
                   std::vector<NodeId>* param_nodes = nullptr);

// Straight-line evaluation without a tape; used wherever values must stay off
// any gradient path (target networks, rollouts).
Tensor mlp_eval(const MlpParams& params, const Tensor& input);

// Checks preconditions shared by both paths; throws with the offending layer
// index on dimension mismatch.
void check_mlp_shapes(const MlpParams& params, int input_cols);

}  // namespace taaclab
