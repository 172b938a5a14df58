#pragma once

#include <string>

#include "htparse/graph.hpp"

namespace htparse {

// One-hidden-layer perceptron with tanh activation and a linear output
// layer; scores stay unbounded.
struct MlpSpec {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::size_t output_dim = 0;
  ParamId w1, b1, w2, b2;

  static MlpSpec create(ParamStore& store, const std::string& name,
                        std::size_t input_dim, std::size_t hidden_dim,
                        std::size_t output_dim);
};

NodeId mlp_apply(Graph& g, const MlpSpec& spec, NodeId x);

}  // namespace htparse
