#include "htparse/config.hpp"

namespace htparse {

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(word_dim, "word-dim");
  positive(rel_dim, "rel-dim");
  positive(proj_dim, "proj-dim");
  positive(tree_hidden, "tree-hidden");
  positive(tree_layers, "tree-layers");
  positive(mlp_hidden, "mlp-hidden");
  positive(window, "window");
  if (use_pos) positive(pos_dim, "pos-dim");
  if (use_bilstm) {
    positive(bilstm_hidden, "bilstm-hidden");
    positive(bilstm_layers, "bilstm-layers");
  }
  // The head vector and the reduced modifier encodings feed the same tree
  // LSTMs, so their dims must line up.
  if (use_bilstm && proj_dim != 2 * bilstm_hidden)
    throw ConfigError("proj-dim must equal 2*bilstm-hidden when the BiLSTM is on");
}

std::map<std::string, std::string> ModelConfig::to_kv() const {
  return {
      {"word_dim", std::to_string(word_dim)},
      {"pos_dim", std::to_string(pos_dim)},
      {"rel_dim", std::to_string(rel_dim)},
      {"proj_dim", std::to_string(proj_dim)},
      {"tree_hidden", std::to_string(tree_hidden)},
      {"tree_layers", std::to_string(tree_layers)},
      {"bilstm_hidden", std::to_string(bilstm_hidden)},
      {"bilstm_layers", std::to_string(bilstm_layers)},
      {"mlp_hidden", std::to_string(mlp_hidden)},
      {"window", std::to_string(window)},
      {"use_pos", use_pos ? "1" : "0"},
      {"use_bilstm", use_bilstm ? "1" : "0"},
      {"use_tree", use_tree ? "1" : "0"},
  };
}

ModelConfig ModelConfig::from_kv(const std::map<std::string, std::string>& kv) {
  ModelConfig c;
  auto get = [&kv](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(std::string("missing config key ") + key);
    return it->second;
  };
  c.word_dim = std::stoul(get("word_dim"));
  c.pos_dim = std::stoul(get("pos_dim"));
  c.rel_dim = std::stoul(get("rel_dim"));
  c.proj_dim = std::stoul(get("proj_dim"));
  c.tree_hidden = std::stoul(get("tree_hidden"));
  c.tree_layers = std::stoul(get("tree_layers"));
  c.bilstm_hidden = std::stoul(get("bilstm_hidden"));
  c.bilstm_layers = std::stoul(get("bilstm_layers"));
  c.mlp_hidden = std::stoul(get("mlp_hidden"));
  c.window = std::stoul(get("window"));
  c.use_pos = get("use_pos") == "1";
  c.use_bilstm = get("use_bilstm") == "1";
  c.use_tree = get("use_tree") == "1";
  c.validate();
  return c;
}

}  // namespace htparse
