#include "htparse/lstm.hpp"

namespace htparse {

LstmSpec LstmSpec::create(ParamStore& store, const std::string& name,
                          std::size_t input_dim, std::size_t hidden_dim,
                          std::size_t num_layers) {
  LstmSpec spec;
  spec.input_dim = input_dim;
  spec.hidden_dim = hidden_dim;
  std::size_t in = input_dim;
  for (std::size_t k = 0; k < num_layers; ++k) {
    Layer layer;
    const std::string prefix = name + ".l" + std::to_string(k);
    layer.w = store.add_matrix(prefix + ".W", 4 * hidden_dim, in + hidden_dim);
    layer.b = store.add_vector(prefix + ".b", 4 * hidden_dim);
    // forget-gate bias starts at 1
    Tensor& b = store.param(layer.b).value;
    for (std::size_t i = hidden_dim; i < 2 * hidden_dim; ++i) b.data[i] = 1.0;
    spec.layers.push_back(layer);
    in = hidden_dim;
  }
  return spec;
}

LstmState lstm_initial(Graph& g, const LstmSpec& spec) {
  LstmState s;
  s.spec = &spec;
  for (std::size_t k = 0; k < spec.layers.size(); ++k) {
    s.hidden.push_back(g.constant(Tensor::zeros({spec.hidden_dim})));
    s.cell.push_back(g.constant(Tensor::zeros({spec.hidden_dim})));
  }
  return s;
}

LstmState lstm_advance(Graph& g, const LstmState& state, NodeId x) {
  const LstmSpec& spec = *state.spec;
  if (g.value(x).numel() != spec.input_dim)
    throw DimError("lstm input dim " + std::to_string(g.value(x).numel()) +
                   " != spec input dim " + std::to_string(spec.input_dim));
  const std::size_t H = spec.hidden_dim;
  LstmState next;
  next.spec = state.spec;
  NodeId input = x;
  for (std::size_t k = 0; k < spec.layers.size(); ++k) {
    const NodeId xs[2] = {input, state.hidden[k]};
    NodeId z = g.affine(g.param(spec.layers[k].w), g.concat(xs),
                        g.param(spec.layers[k].b));
    NodeId gi = g.sigmoid(g.slice(z, 0, H));
    NodeId gf = g.sigmoid(g.slice(z, H, H));
    NodeId go = g.sigmoid(g.slice(z, 2 * H, H));
    NodeId gc = g.tanh(g.slice(z, 3 * H, H));
    NodeId c = g.add(g.mul(gf, state.cell[k]), g.mul(gi, gc));
    NodeId h = g.mul(go, g.tanh(c));
    next.cell.push_back(c);
    next.hidden.push_back(h);
    input = h;
  }
  return next;
}

}  // namespace htparse
