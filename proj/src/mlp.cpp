#include "taaclab/mlp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace taaclab {

MlpParams make_mlp(int input, const std::vector<int>& hidden, int output, Rng& rng) {
  MlpParams p;
  int in = input;
  std::vector<int> outs = hidden;
  outs.push_back(output);
  for (int out : outs) {
    MlpParams::Layer l;
    l.w = Tensor(in, out);
    double bound = std::sqrt(6.0 / double(in + out));
    for (auto& x : l.w.v) x = rng.uniform(-bound, bound);
    l.b = Tensor(1, out);
    p.layers.push_back(std::move(l));
    in = out;
  }
  return p;
}

void check_mlp_shapes(const MlpParams& params, int input_cols) {
  if (params.layers.empty()) throw std::invalid_argument("mlp: no layers");
  int in = input_cols;
  for (size_t i = 0; i < params.layers.size(); ++i) {
    const auto& l = params.layers[i];
    if (l.w.rows != in)
      throw std::invalid_argument("mlp: dimension mismatch at layer " + std::to_string(i) +
                                  ": expected input " + std::to_string(l.w.rows) + ", got " +
                                  std::to_string(in));
    if (l.b.rows != 1 || l.b.cols != l.w.cols)
      throw std::invalid_argument("mlp: bias shape mismatch at layer " + std::to_string(i));
    in = l.w.cols;
  }
}

NodeId mlp_forward(const MlpParams& params, NodeId input, Tape& tape,
                   std::vector<NodeId>* param_nodes) {
  check_mlp_shapes(params, tape.val(input).cols);
  NodeId h = input;
  for (size_t i = 0; i < params.layers.size(); ++i) {
    const auto& l = params.layers[i];
    NodeId w = tape.leaf(l.w, true);
    NodeId b = tape.leaf(l.b, true);
    if (param_nodes) {
      param_nodes->push_back(w);
      param_nodes->push_back(b);
    }
    h = tape.add(tape.matmul(h, w), b);
    if (i + 1 < params.layers.size()) h = tape.relu(h);
  }
  return h;
}

Tensor mlp_eval(const MlpParams& params, const Tensor& input) {
  check_mlp_shapes(params, input.cols);
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Mat h = Eigen::Map<const Mat>(input.v.data(), input.rows, input.cols);
  for (size_t i = 0; i < params.layers.size(); ++i) {
    const auto& l = params.layers[i];
    Eigen::Map<const Mat> w(l.w.v.data(), l.w.rows, l.w.cols);
    Eigen::Map<const Eigen::RowVectorXd> b(l.b.v.data(), l.b.cols);
    Mat z = h * w;
    z.rowwise() += b;
    if (i + 1 < params.layers.size()) z = z.cwiseMax(0.0);
    h = std::move(z);
  }
  Tensor out(int(h.rows()), int(h.cols()));
  Eigen::Map<Mat>(out.v.data(), out.rows, out.cols) = h;
  return out;
}

}  // namespace taaclab
