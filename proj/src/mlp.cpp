#include "htparse/mlp.hpp"

namespace htparse {

MlpSpec MlpSpec::create(ParamStore& store, const std::string& name,
                        std::size_t input_dim, std::size_t hidden_dim,
                        std::size_t output_dim) {
  MlpSpec spec;
  spec.input_dim = input_dim;
  spec.hidden_dim = hidden_dim;
  spec.output_dim = output_dim;
  spec.w1 = store.add_matrix(name + ".W1", hidden_dim, input_dim);
  spec.b1 = store.add_vector(name + ".b1", hidden_dim);
  spec.w2 = store.add_matrix(name + ".W2", output_dim, hidden_dim);
  spec.b2 = store.add_vector(name + ".b2", output_dim);
  return spec;
}

NodeId mlp_apply(Graph& g, const MlpSpec& spec, NodeId x) {
  if (g.value(x).numel() != spec.input_dim)
    throw DimError("mlp input dim " + std::to_string(g.value(x).numel()) +
                   " != spec input dim " + std::to_string(spec.input_dim));
  NodeId h = g.tanh(g.affine(g.param(spec.w1), x, g.param(spec.b1)));
  return g.affine(g.param(spec.w2), h, g.param(spec.b2));
}

}  // namespace htparse
