#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "taaclab/tensor.hpp"

namespace taaclab {

using NodeId = int32_t;

// Reverse-mode gradient tape over dense f64 tensors.
//
// The primitive set is closed: matmul, add, elementwise-mul, tanh, softplus,
// exp, log, sum, clamp, plus the structural ops (concat/slice of columns)
// needed to wire policy and critic networks together. Values are computed
// eagerly on record; backward() runs exactly once per node in reverse
// topological order.
class Tape {
 public:
  enum class Op {
    kLeaf,       // parameter or input, may require grad
    kConstant,   // detached value
    kMatmul,     // (m,k)x(k,n)
    kAdd,        // same shape, or rhs broadcast as row (1,n) or scalar (1,1)
    kMul,        // elementwise, or rhs scalar (1,1)
    kScale,      // alpha * x + beta, scalars baked into the node
    kTanh,
    kSoftplus,
    kExp,
    kLog,
    kSum,        // full reduce -> (1,1)
    kRowSum,     // (m,n) -> (m,1)
    kClamp,      // clip to [lo, hi]; zero gradient outside the open interval
    kConcatCols, // [a | b]
    kSliceCols,  // columns [c0, c1)
  };

  struct Node {
    Op op;
    NodeId a = -1;
    NodeId b = -1;
    double p0 = 0.0;  // op parameters (scale/shift, clamp bounds, slice start)
    double p1 = 0.0;
    bool requires_grad = false;
    Tensor value;
    Tensor grad;  // allocated on demand during backward
  };

  NodeId leaf(Tensor value, bool requires_grad) {
    Node n;
    n.op = requires_grad ? Op::kLeaf : Op::kConstant;
    n.requires_grad = requires_grad;
    n.value = std::move(value);
    return push(std::move(n));
  }
  NodeId constant(Tensor value) { return leaf(std::move(value), false); }
  NodeId constant(double x) { return constant(Tensor::scalar(x)); }

  NodeId matmul(NodeId a, NodeId b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    if (A.cols != B.rows)
      throw std::invalid_argument("matmul: inner extents differ " + shape_str(A) + " vs " +
                                  shape_str(B));
    Node n = binary(Op::kMatmul, a, b, Tensor(A.rows, B.cols));
    matmul_into(A, B, n.value, false, false, 0.0);
    return push(std::move(n));
  }

  NodeId add(NodeId a, NodeId b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    Node n = binary(Op::kAdd, a, b, Tensor(A.rows, A.cols));
    if (A.same_shape(B)) {
      for (size_t i = 0; i < A.size(); ++i) n.value.v[i] = A.v[i] + B.v[i];
    } else if (B.rows == 1 && B.cols == A.cols) {
      for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) n.value.at(r, c) = A.at(r, c) + B.at(0, c);
    } else if (B.rows == 1 && B.cols == 1) {
      for (size_t i = 0; i < A.size(); ++i) n.value.v[i] = A.v[i] + B.v[0];
    } else {
      throw std::invalid_argument("add: incompatible shapes " + shape_str(A) + " vs " +
                                  shape_str(B));
    }
    return push(std::move(n));
  }

  NodeId sub(NodeId a, NodeId b) { return add(a, scale(b, -1.0)); }

  NodeId mul(NodeId a, NodeId b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    Node n = binary(Op::kMul, a, b, Tensor(A.rows, A.cols));
    if (A.same_shape(B)) {
      for (size_t i = 0; i < A.size(); ++i) n.value.v[i] = A.v[i] * B.v[i];
    } else if (B.rows == 1 && B.cols == 1) {
      for (size_t i = 0; i < A.size(); ++i) n.value.v[i] = A.v[i] * B.v[0];
    } else if (B.rows == A.rows && B.cols == 1) {
      for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) n.value.at(r, c) = A.at(r, c) * B.at(r, 0);
    } else {
      throw std::invalid_argument("mul: incompatible shapes " + shape_str(A) + " vs " +
                                  shape_str(B));
    }
    return push(std::move(n));
  }

  // alpha * x + beta
  NodeId affine(NodeId a, double alpha, double beta) {
    Node n = unary(Op::kScale, a);
    n.p0 = alpha;
    n.p1 = beta;
    for (auto& x : n.value.v) x = alpha * x + beta;
    return push(std::move(n));
  }
  NodeId scale(NodeId a, double alpha) { return affine(a, alpha, 0.0); }
  NodeId add_scalar(NodeId a, double beta) { return affine(a, 1.0, beta); }

  NodeId tanh(NodeId a) {
    Node n = unary(Op::kTanh, a);
    for (auto& x : n.value.v) x = std::tanh(x);
    return push(std::move(n));
  }

  NodeId softplus(NodeId a) {
    Node n = unary(Op::kSoftplus, a);
    for (auto& x : n.value.v) x = stable_softplus(x);
    return push(std::move(n));
  }

  NodeId exp(NodeId a) {
    Node n = unary(Op::kExp, a);
    for (auto& x : n.value.v) x = std::exp(x);
    return push(std::move(n));
  }

  NodeId log(NodeId a) {
    Node n = unary(Op::kLog, a);
    for (auto& x : n.value.v) x = std::log(x);
    return push(std::move(n));
  }

  NodeId sum(NodeId a) {
    Node n;
    n.op = Op::kSum;
    n.a = a;
    n.value = Tensor(1, 1);
    double s = 0.0;
    for (double x : val(a).v) s += x;
    n.value.v[0] = s;
    return push(std::move(n));
  }

  NodeId mean(NodeId a) { return scale(sum(a), 1.0 / double(val(a).size())); }

  NodeId row_sum(NodeId a) {
    const Tensor& A = val(a);
    Node n;
    n.op = Op::kRowSum;
    n.a = a;
    n.value = Tensor(A.rows, 1);
    for (int r = 0; r < A.rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < A.cols; ++c) s += A.at(r, c);
      n.value.at(r, 0) = s;
    }
    return push(std::move(n));
  }

  NodeId clamp(NodeId a, double lo, double hi) {
    Node n = unary(Op::kClamp, a);
    n.p0 = lo;
    n.p1 = hi;
    for (auto& x : n.value.v) x = std::min(std::max(x, lo), hi);
    return push(std::move(n));
  }

  NodeId relu(NodeId a) { return clamp(a, 0.0, std::numeric_limits<double>::infinity()); }

  NodeId square(NodeId a) { return mul(a, a); }

  NodeId concat_cols(NodeId a, NodeId b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    if (A.rows != B.rows)
      throw std::invalid_argument("concat_cols: row extents differ");
    Node n = binary(Op::kConcatCols, a, b, Tensor(A.rows, A.cols + B.cols));
    for (int r = 0; r < A.rows; ++r) {
      for (int c = 0; c < A.cols; ++c) n.value.at(r, c) = A.at(r, c);
      for (int c = 0; c < B.cols; ++c) n.value.at(r, A.cols + c) = B.at(r, c);
    }
    return push(std::move(n));
  }

  NodeId slice_cols(NodeId a, int c0, int c1) {
    const Tensor& A = val(a);
    if (c0 < 0 || c1 > A.cols || c0 >= c1)
      throw std::invalid_argument("slice_cols: bad column range");
    Node n;
    n.op = Op::kSliceCols;
    n.a = a;
    n.p0 = c0;
    n.p1 = c1;
    n.value = Tensor(A.rows, c1 - c0);
    for (int r = 0; r < A.rows; ++r)
      for (int c = c0; c < c1; ++c) n.value.at(r, c - c0) = A.at(r, c);
    return push(std::move(n));
  }

  const Tensor& val(NodeId id) const { return nodes_[id].value; }
  const Tensor& grad(NodeId id) const { return nodes_[id].grad; }
  bool requires_grad(NodeId id) const { return nodes_[id].requires_grad; }
  size_t size() const { return nodes_.size(); }

  // Fills gradient slots for every node reachable from the scalar output.
  // Non-parameter leaves receive gradients as well (dQ/da needs them).
  void backward(NodeId output);

 private:
  Node unary(Op op, NodeId a) {
    Node n;
    n.op = op;
    n.a = a;
    n.value = val(a);
    return n;
  }
  Node binary(Op op, NodeId a, NodeId b, Tensor out) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.value = std::move(out);
    return n;
  }
  NodeId push(Node n) {
    if (n.a >= 0 && n.a >= NodeId(nodes_.size()))
      throw std::logic_error("tape: parent recorded after consumer");
    nodes_.push_back(std::move(n));
    return NodeId(nodes_.size() - 1);
  }

  static double stable_softplus(double x) {
    // max(x,0) + log1p(exp(-|x|)) avoids overflow on both tails
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
  }

  // C = op(A) * op(B) (+ beta*C), backed by Eigen maps; see tape.cpp.
  static void matmul_into(const Tensor& A, const Tensor& B, Tensor& C, bool ta, bool tb,
                          double beta);

  std::vector<Node> nodes_;
};

}  // namespace taaclab
