#include "htparse/graph.hpp"

#include <algorithm>
#include <cmath>

#include "htparse/kernels.hpp"

namespace htparse {

namespace {
const char* op_name(OpKind k) {
  switch (k) {
    case OpKind::Constant: return "constant";
    case OpKind::Param: return "param";
    case OpKind::Affine: return "affine";
    case OpKind::Tanh: return "tanh";
    case OpKind::Sigmoid: return "sigmoid";
    case OpKind::Add: return "add";
    case OpKind::Sub: return "sub";
    case OpKind::Mul: return "mul";
    case OpKind::Concat: return "concat";
    case OpKind::Slice: return "slice";
    case OpKind::Pick: return "pick";
    case OpKind::Sum: return "sum";
    case OpKind::Max: return "max";
  }
  return "?";
}

[[noreturn]] void shape_fail(OpKind k, const Tensor& a, const Tensor& b) {
  throw DimError(std::string("shape mismatch in ") + op_name(k) + ": " +
                 a.shape_str() + " vs " + b.shape_str());
}
}  // namespace

NodeId Graph::push(ExprNode n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::constant(Tensor t) {
  ExprNode n;
  n.kind = OpKind::Constant;
  n.value = std::move(t);
  return push(std::move(n));
}

NodeId Graph::param(ParamId id) {
  auto it = param_nodes_.find(id);
  if (it != param_nodes_.end()) return it->second;
  ExprNode n;
  n.kind = OpKind::Param;
  n.a = id;
  n.needs_grad = grads_enabled_ && params_->param(id).trainable;
  n.value = params_->param(id).value;  // copy; store is frozen during a graph
  NodeId nid = push(std::move(n));
  param_nodes_[id] = nid;
  return nid;
}

NodeId Graph::affine(NodeId w, NodeId x, NodeId b) {
  const Tensor& wv = nodes_[w].value;
  const Tensor& xv = nodes_[x].value;
  const Tensor& bv = nodes_[b].value;
  if (wv.rank() != 2 || wv.cols() != xv.numel()) shape_fail(OpKind::Affine, wv, xv);
  if (bv.numel() != wv.rows()) shape_fail(OpKind::Affine, wv, bv);
  ExprNode n;
  n.kind = OpKind::Affine;
  n.inputs = {w, x, b};
  n.needs_grad = grads_enabled_ && (nodes_[w].needs_grad || nodes_[x].needs_grad ||
                                    nodes_[b].needs_grad);
  n.value = bv;
  n.value.shape = {wv.rows()};
  kernels::ops().matvec_acc(n.value.data.data(), wv.data.data(), xv.data.data(),
                            wv.rows(), wv.cols());
  return push(std::move(n));
}

NodeId Graph::tanh(NodeId x) {
  ExprNode n;
  n.kind = OpKind::Tanh;
  n.inputs = {x};
  n.needs_grad = grads_enabled_ && nodes_[x].needs_grad;
  n.value = nodes_[x].value;
  for (double& v : n.value.data) v = std::tanh(v);
  return push(std::move(n));
}

NodeId Graph::sigmoid(NodeId x) {
  ExprNode n;
  n.kind = OpKind::Sigmoid;
  n.inputs = {x};
  n.needs_grad = grads_enabled_ && nodes_[x].needs_grad;
  n.value = nodes_[x].value;
  for (double& v : n.value.data) v = 1.0 / (1.0 + std::exp(-v));
  return push(std::move(n));
}

NodeId Graph::add(NodeId a, NodeId b) {
  const Tensor& av = nodes_[a].value;
  const Tensor& bv = nodes_[b].value;
  if (av.numel() != bv.numel()) shape_fail(OpKind::Add, av, bv);
  ExprNode n;
  n.kind = OpKind::Add;
  n.inputs = {a, b};
  n.needs_grad = grads_enabled_ && (nodes_[a].needs_grad || nodes_[b].needs_grad);
  n.value = av;
  for (std::size_t i = 0; i < bv.numel(); ++i) n.value.data[i] += bv.data[i];
  return push(std::move(n));
}

NodeId Graph::sub(NodeId a, NodeId b) {
  const Tensor& av = nodes_[a].value;
  const Tensor& bv = nodes_[b].value;
  if (av.numel() != bv.numel()) shape_fail(OpKind::Sub, av, bv);
  ExprNode n;
  n.kind = OpKind::Sub;
  n.inputs = {a, b};
  n.needs_grad = grads_enabled_ && (nodes_[a].needs_grad || nodes_[b].needs_grad);
  n.value = av;
  for (std::size_t i = 0; i < bv.numel(); ++i) n.value.data[i] -= bv.data[i];
  return push(std::move(n));
}

NodeId Graph::mul(NodeId a, NodeId b) {
  const Tensor& av = nodes_[a].value;
  const Tensor& bv = nodes_[b].value;
  if (av.numel() != bv.numel()) shape_fail(OpKind::Mul, av, bv);
  ExprNode n;
  n.kind = OpKind::Mul;
  n.inputs = {a, b};
  n.needs_grad = grads_enabled_ && (nodes_[a].needs_grad || nodes_[b].needs_grad);
  n.value = Tensor::zeros(av.shape);
  kernels::ops().vmul_acc(n.value.data.data(), av.data.data(), bv.data.data(),
                          av.numel());
  return push(std::move(n));
}

NodeId Graph::concat(std::span<const NodeId> xs) {
  if (xs.empty()) throw DimError("concat of zero inputs");
  ExprNode n;
  n.kind = OpKind::Concat;
  std::size_t total = 0;
  for (NodeId x : xs) {
    total += nodes_[x].value.numel();
    n.needs_grad = n.needs_grad || nodes_[x].needs_grad;
    n.inputs.push_back(x);
  }
  n.needs_grad = n.needs_grad && grads_enabled_;
  n.value = Tensor::zeros({total});
  std::size_t off = 0;
  for (NodeId x : xs) {
    const Tensor& v = nodes_[x].value;
    std::copy(v.data.begin(), v.data.end(), n.value.data.begin() + off);
    off += v.numel();
  }
  return push(std::move(n));
}

NodeId Graph::slice(NodeId x, std::size_t offset, std::size_t len) {
  const Tensor& xv = nodes_[x].value;
  if (offset + len > xv.numel())
    throw DimError("slice [" + std::to_string(offset) + "," +
                   std::to_string(offset + len) + ") out of range for " +
                   xv.shape_str());
  ExprNode n;
  n.kind = OpKind::Slice;
  n.inputs = {x};
  n.a = static_cast<std::uint32_t>(offset);
  n.b = static_cast<std::uint32_t>(len);
  n.needs_grad = grads_enabled_ && nodes_[x].needs_grad;
  n.value = Tensor::zeros({len});
  std::copy(xv.data.begin() + offset, xv.data.begin() + offset + len,
            n.value.data.begin());
  return push(std::move(n));
}

NodeId Graph::pick(NodeId x, std::size_t index) {
  const Tensor& xv = nodes_[x].value;
  if (index >= xv.numel())
    throw DimError("pick index " + std::to_string(index) + " out of range for " +
                   xv.shape_str());
  ExprNode n;
  n.kind = OpKind::Pick;
  n.inputs = {x};
  n.a = static_cast<std::uint32_t>(index);
  n.needs_grad = grads_enabled_ && nodes_[x].needs_grad;
  n.value = Tensor::scalar(xv.data[index]);
  return push(std::move(n));
}

NodeId Graph::sum(std::span<const NodeId> xs) {
  if (xs.empty()) throw DimError("sum of zero inputs");
  ExprNode n;
  n.kind = OpKind::Sum;
  double acc = 0.0;
  for (NodeId x : xs) {
    if (nodes_[x].value.numel() != 1) shape_fail(OpKind::Sum, nodes_[x].value, Tensor::scalar(0));
    acc += nodes_[x].value.data[0];
    n.needs_grad = n.needs_grad || nodes_[x].needs_grad;
    n.inputs.push_back(x);
  }
  n.needs_grad = n.needs_grad && grads_enabled_;
  n.value = Tensor::scalar(acc);
  return push(std::move(n));
}

NodeId Graph::max(std::span<const NodeId> xs) {
  if (xs.empty()) throw DimError("max of zero inputs");
  ExprNode n;
  n.kind = OpKind::Max;
  double best = -1e300;
  std::uint32_t arg = 0;
  for (std::uint32_t i = 0; i < xs.size(); ++i) {
    const Tensor& v = nodes_[xs[i]].value;
    if (v.numel() != 1) shape_fail(OpKind::Max, v, Tensor::scalar(0));
    if (i == 0 || v.data[0] > best) {
      best = v.data[0];
      arg = i;
    }
    n.needs_grad = n.needs_grad || nodes_[xs[i]].needs_grad;
    n.inputs.push_back(xs[i]);
  }
  n.needs_grad = n.needs_grad && grads_enabled_;
  n.a = arg;
  n.value = Tensor::scalar(best);
  return push(std::move(n));
}

double Graph::scalar_value(NodeId n) const {
  if (nodes_[n].value.numel() != 1)
    throw DimError("scalar_value on tensor " + nodes_[n].value.shape_str());
  return nodes_[n].value.data[0];
}

Tensor& Graph::grad_ref(NodeId n) {
  Tensor& g = nodes_[n].grad;
  if (g.data.empty()) g = Tensor::zeros(nodes_[n].value.shape);
  return g;
}

void Graph::backward(NodeId loss) {
  if (nodes_[loss].value.numel() != 1)
    throw DimError("backward requires a scalar loss, got " +
                   nodes_[loss].value.shape_str());
  if (!nodes_[loss].needs_grad) return;
  // node-level adjoints are per-pass scratch; only store grads accumulate
  for (ExprNode& n : nodes_)
    if (!n.grad.data.empty()) n.grad.fill(0.0);
  grad_ref(loss).data[0] = 1.0;

  const auto& K = kernels::ops();
  for (std::uint32_t idx = loss + 1; idx-- > 0;) {
    ExprNode& n = nodes_[idx];
    if (!n.needs_grad || n.grad.data.empty()) continue;
    const Tensor& g = n.grad;
    switch (n.kind) {
      case OpKind::Constant:
        break;
      case OpKind::Param: {
        Parameter& p = params_->param(static_cast<ParamId>(n.a));
        K.axpy(p.grad.data.data(), 1.0, g.data.data(), g.numel());
        break;
      }
      case OpKind::Affine: {
        ExprNode& w = nodes_[n.inputs[0]];
        ExprNode& x = nodes_[n.inputs[1]];
        ExprNode& b = nodes_[n.inputs[2]];
        if (w.needs_grad)
          K.ger_acc(grad_ref(n.inputs[0]).data.data(), g.data.data(),
                    x.value.data.data(), w.value.rows(), w.value.cols());
        if (x.needs_grad)
          K.matvec_t_acc(grad_ref(n.inputs[1]).data.data(), w.value.data.data(),
                         g.data.data(), w.value.rows(), w.value.cols());
        if (b.needs_grad)
          K.axpy(grad_ref(n.inputs[2]).data.data(), 1.0, g.data.data(), g.numel());
        break;
      }
      case OpKind::Tanh: {
        if (!nodes_[n.inputs[0]].needs_grad) break;
        Tensor& xg = grad_ref(n.inputs[0]);
        for (std::size_t i = 0; i < g.numel(); ++i)
          xg.data[i] += g.data[i] * (1.0 - n.value.data[i] * n.value.data[i]);
        break;
      }
      case OpKind::Sigmoid: {
        if (!nodes_[n.inputs[0]].needs_grad) break;
        Tensor& xg = grad_ref(n.inputs[0]);
        for (std::size_t i = 0; i < g.numel(); ++i)
          xg.data[i] += g.data[i] * n.value.data[i] * (1.0 - n.value.data[i]);
        break;
      }
      case OpKind::Add: {
        for (int k = 0; k < 2; ++k)
          if (nodes_[n.inputs[k]].needs_grad)
            K.axpy(grad_ref(n.inputs[k]).data.data(), 1.0, g.data.data(), g.numel());
        break;
      }
      case OpKind::Sub: {
        if (nodes_[n.inputs[0]].needs_grad)
          K.axpy(grad_ref(n.inputs[0]).data.data(), 1.0, g.data.data(), g.numel());
        if (nodes_[n.inputs[1]].needs_grad)
          K.axpy(grad_ref(n.inputs[1]).data.data(), -1.0, g.data.data(), g.numel());
        break;
      }
      case OpKind::Mul: {
        if (nodes_[n.inputs[0]].needs_grad)
          K.vmul_acc(grad_ref(n.inputs[0]).data.data(), g.data.data(),
                     nodes_[n.inputs[1]].value.data.data(), g.numel());
        if (nodes_[n.inputs[1]].needs_grad)
          K.vmul_acc(grad_ref(n.inputs[1]).data.data(), g.data.data(),
                     nodes_[n.inputs[0]].value.data.data(), g.numel());
        break;
      }
      case OpKind::Concat: {
        std::size_t off = 0;
        for (NodeId in : n.inputs) {
          std::size_t len = nodes_[in].value.numel();
          if (nodes_[in].needs_grad)
            K.axpy(grad_ref(in).data.data(), 1.0, g.data.data() + off, len);
          off += len;
        }
        break;
      }
      case OpKind::Slice: {
        if (!nodes_[n.inputs[0]].needs_grad) break;
        Tensor& xg = grad_ref(n.inputs[0]);
        K.axpy(xg.data.data() + n.a, 1.0, g.data.data(), n.b);
        break;
      }
      case OpKind::Pick: {
        if (!nodes_[n.inputs[0]].needs_grad) break;
        grad_ref(n.inputs[0]).data[n.a] += g.data[0];
        break;
      }
      case OpKind::Sum: {
        for (NodeId in : n.inputs)
          if (nodes_[in].needs_grad) grad_ref(in).data[0] += g.data[0];
        break;
      }
      case OpKind::Max: {
        NodeId in = n.inputs[n.a];
        if (nodes_[in].needs_grad) grad_ref(in).data[0] += g.data[0];
        break;
      }
    }
  }
}

void Graph::rewind(std::size_t mark) {
  if (mark >= nodes_.size()) return;
  nodes_.resize(mark);
  for (auto it = param_nodes_.begin(); it != param_nodes_.end();) {
    if (it->second >= mark)
      it = param_nodes_.erase(it);
    else
      ++it;
  }
}

}  // namespace htparse
