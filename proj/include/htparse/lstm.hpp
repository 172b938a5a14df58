#pragma once

#include <string>
#include <vector>

#include "htparse/graph.hpp"

namespace htparse {

// Multi-layer LSTM.  Each layer holds one packed weight matrix over the
// concatenated (input, hidden) vector producing the four gate pre-activations
// in i|f|o|g order, plus a bias whose forget block is initialised to 1.
struct LstmSpec {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  struct Layer {
    ParamId w;  // (4H) x (in + H)
    ParamId b;  // 4H
  };
  std::vector<Layer> layers;

  static LstmSpec create(ParamStore& store, const std::string& name,
                         std::size_t input_dim, std::size_t hidden_dim,
                         std::size_t num_layers);
};

// Immutable snapshot of per-layer (hidden, cell) nodes.  advance() returns a
// fresh state; branching several continuations off one state is safe.
struct LstmState {
  const LstmSpec* spec = nullptr;
  std::vector<NodeId> hidden;
  std::vector<NodeId> cell;

  NodeId output() const { return hidden.back(); }
};

LstmState lstm_initial(Graph& g, const LstmSpec& spec);
LstmState lstm_advance(Graph& g, const LstmState& state, NodeId x);

}  // namespace htparse
