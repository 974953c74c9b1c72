#include "taaclab/tape.hpp"

#include <Eigen/Dense>

namespace taaclab {

namespace {
using MatMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                              Eigen::RowMajor>>;
using MatMapMut =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
}  // namespace

void Tape::matmul_into(const Tensor& A, const Tensor& B, Tensor& C, bool ta, bool tb,
                       double beta) {
  MatMap a(A.v.data(), A.rows, A.cols);
  MatMap b(B.v.data(), B.rows, B.cols);
  MatMapMut c(C.v.data(), C.rows, C.cols);
  if (beta == 0.0) c.setZero();
  if (!ta && !tb)
    c.noalias() += a * b;
  else if (ta && !tb)
    c.noalias() += a.transpose() * b;
  else if (!ta && tb)
    c.noalias() += a * b.transpose();
  else
    c.noalias() += a.transpose() * b.transpose();
}

void Tape::backward(NodeId output) {
  if (output < 0 || output >= NodeId(nodes_.size()))
    throw std::invalid_argument("backward: unknown node");
  if (nodes_[output].value.size() != 1)
    throw std::invalid_argument("backward: output must be a scalar node");

  // reset slots, seed the output
  for (auto& n : nodes_) n.grad = Tensor();
  nodes_[output].grad = Tensor::scalar(1.0);

  auto ensure = [&](NodeId id) {
    Node& n = nodes_[id];
    if (n.grad.size() == 0) n.grad = Tensor(n.value.rows, n.value.cols);
  };

  for (NodeId id = output; id >= 0; --id) {
    Node& n = nodes_[id];
    if (n.grad.size() == 0) continue;  // not reachable from the output
    const Tensor& g = n.grad;
    switch (n.op) {
      case Op::kLeaf:
      case Op::kConstant:
        break;
      case Op::kMatmul: {
        ensure(n.a);
        ensure(n.b);
        // dA += g * B^T ; dB += A^T * g
        matmul_into(g, nodes_[n.b].value, nodes_[n.a].grad, false, true, 1.0);
        matmul_into(nodes_[n.a].value, g, nodes_[n.b].grad, true, false, 1.0);
        break;
      }
      case Op::kAdd: {
        ensure(n.a);
        ensure(n.b);
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        for (size_t i = 0; i < g.size(); ++i) ga.v[i] += g.v[i];
        const Tensor& B = nodes_[n.b].value;
        if (B.same_shape(n.value)) {
          for (size_t i = 0; i < g.size(); ++i) gb.v[i] += g.v[i];
        } else if (B.cols == n.value.cols) {  // row broadcast
          for (int r = 0; r < g.rows; ++r)
            for (int c = 0; c < g.cols; ++c) gb.at(0, c) += g.at(r, c);
        } else {  // scalar broadcast
          for (double x : g.v) gb.v[0] += x;
        }
        break;
      }
      case Op::kMul: {
        ensure(n.a);
        ensure(n.b);
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        const Tensor& A = nodes_[n.a].value;
        const Tensor& B = nodes_[n.b].value;
        if (B.same_shape(A)) {
          for (size_t i = 0; i < g.size(); ++i) {
            ga.v[i] += g.v[i] * B.v[i];
            gb.v[i] += g.v[i] * A.v[i];
          }
        } else if (B.rows == 1 && B.cols == 1) {
          for (size_t i = 0; i < g.size(); ++i) {
            ga.v[i] += g.v[i] * B.v[0];
            gb.v[0] += g.v[i] * A.v[i];
          }
        } else {  // column broadcast (m,1)
          for (int r = 0; r < g.rows; ++r)
            for (int c = 0; c < g.cols; ++c) {
              ga.at(r, c) += g.at(r, c) * B.at(r, 0);
              gb.at(r, 0) += g.at(r, c) * A.at(r, c);
            }
        }
        break;
      }
      case Op::kScale: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.size(); ++i) ga.v[i] += g.v[i] * n.p0;
        break;
      }
      case Op::kTanh: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.size(); ++i) ga.v[i] += g.v[i] * (1.0 - n.value.v[i] * n.value.v[i]);
        break;
      }
      case Op::kSoftplus: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& A = nodes_[n.a].value;
        for (size_t i = 0; i < g.size(); ++i) {
          double s = 1.0 / (1.0 + std::exp(-A.v[i]));  // sigmoid
          ga.v[i] += g.v[i] * s;
        }
        break;
      }
      case Op::kExp: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        for (size_t i = 0; i < g.size(); ++i) ga.v[i] += g.v[i] * n.value.v[i];
        break;
      }
      case Op::kLog: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& A = nodes_[n.a].value;
        for (size_t i = 0; i < g.size(); ++i) ga.v[i] += g.v[i] / A.v[i];
        break;
      }
      case Op::kSum: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        for (auto& x : ga.v) x += g.v[0];
        break;
      }
      case Op::kRowSum: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        for (int r = 0; r < ga.rows; ++r)
          for (int c = 0; c < ga.cols; ++c) ga.at(r, c) += g.at(r, 0);
        break;
      }
      case Op::kClamp: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& A = nodes_[n.a].value;
        for (size_t i = 0; i < g.size(); ++i)
          if (A.v[i] > n.p0 && A.v[i] < n.p1) ga.v[i] += g.v[i];
        break;
      }
      case Op::kConcatCols: {
        ensure(n.a);
        ensure(n.b);
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        for (int r = 0; r < g.rows; ++r) {
          for (int c = 0; c < ga.cols; ++c) ga.at(r, c) += g.at(r, c);
          for (int c = 0; c < gb.cols; ++c) gb.at(r, c) += g.at(r, ga.cols + c);
        }
        break;
      }
      case Op::kSliceCols: {
        ensure(n.a);
        Tensor& ga = nodes_[n.a].grad;
        int c0 = int(n.p0);
        for (int r = 0; r < g.rows; ++r)
          for (int c = 0; c < g.cols; ++c) ga.at(r, c0 + c) += g.at(r, c);
        break;
      }
    }
  }
}

}  // namespace taaclab
