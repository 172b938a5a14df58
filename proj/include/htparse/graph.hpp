#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "htparse/param_store.hpp"
#include "htparse/tensor.hpp"

namespace htparse {

using NodeId = std::uint32_t;

enum class OpKind : std::uint8_t {
  Constant,
  Param,
  Affine,   // W x + b
  Tanh,
  Sigmoid,
  Add,      // elementwise
  Sub,      // elementwise
  Mul,      // elementwise (Hadamard)
  Concat,
  Slice,    // [offset, offset+len) of the flat data
  Pick,     // single element -> scalar
  Sum,      // sum of scalar inputs
  Max,      // max of scalar inputs (subgradient to the argmax)
};

struct ExprNode {
  OpKind kind;
  bool needs_grad = false;
  std::uint32_t a = 0;  // slice offset / pick index / param id / max argmax
  std::uint32_t b = 0;  // slice length
  std::vector<NodeId> inputs;
  Tensor value;
  Tensor grad;  // lazily allocated during backward
};

// Append-only computation graph over a parameter store.  Forward values are
// computed eagerly at construction; nodes are immutable once created, so
// LSTM states holding node ids stay valid across any later appends
// (persistence needed for branching reuse during parsing).
class Graph {
 public:
  explicit Graph(ParamStore& params, bool grads_enabled = true)
      : params_(&params), grads_enabled_(grads_enabled) {}

  NodeId constant(Tensor t);
  NodeId scalar(double v) { return constant(Tensor::scalar(v)); }
  NodeId param(ParamId id);

  NodeId affine(NodeId w, NodeId x, NodeId b);
  NodeId tanh(NodeId x);
  NodeId sigmoid(NodeId x);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  NodeId concat(std::span<const NodeId> xs);
  NodeId slice(NodeId x, std::size_t offset, std::size_t len);
  NodeId pick(NodeId x, std::size_t index);
  NodeId sum(std::span<const NodeId> xs);
  NodeId max(std::span<const NodeId> xs);

  const Tensor& value(NodeId n) const { return nodes_[n].value; }
  double scalar_value(NodeId n) const;
  std::size_t size() const { return nodes_.size(); }

  // Backpropagate d(loss)/d(param) into the store's grad accumulators.
  // loss must be scalar-shaped.
  void backward(NodeId loss);

  // Truncation for inference: everything appended after mark() is dropped
  // by rewind().  Used to keep parse-time memory bounded.
  std::size_t mark() const { return nodes_.size(); }
  void rewind(std::size_t mark);

 private:
  NodeId push(ExprNode n);
  Tensor& grad_ref(NodeId n);

  std::vector<ExprNode> nodes_;
  std::unordered_map<ParamId, NodeId> param_nodes_;
  ParamStore* params_;
  bool grads_enabled_;
};

}  // namespace htparse
