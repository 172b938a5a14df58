#include "htparse/model.hpp"

#include <cstring>
#include <fstream>
#include <map>

namespace htparse {

namespace {
constexpr char kMagic[8] = {'H', 'T', 'P', 'M', 'O', 'D', 'E', 'L'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_str(std::ostream& out, const std::string& s) {
  write_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw IoError("truncated model file");
  return v;
}
std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw IoError("truncated model file");
  return v;
}
std::string read_str(std::istream& in) {
  std::uint32_t len = read_u32(in);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw IoError("truncated model file");
  return s;
}
}  // namespace

Model Model::create(const ModelConfig& config, Vocab vocab, std::uint64_t seed) {
  config.validate();
  Model m(config, std::move(vocab), seed);
  m.register_params();
  return m;
}

void Model::register_params() {
  const ModelConfig& c = config;
  const std::size_t d_v = c.word_vec_dim();
  const std::size_t L = vocab.num_labels();

  word_emb = store.add_embedding("embed.word", vocab.num_words(), c.word_dim);
  // one extra row for POS tags unseen in training
  pos_emb = store.add_embedding("embed.pos", vocab.num_pos() + 1, c.pos_dim);
  rel_emb = store.add_embedding("embed.rel", L, c.rel_dim);

  const std::size_t lex_dim = c.word_dim + (c.use_pos ? c.pos_dim : 0);
  proj_w = store.add_matrix("wordproj.W", c.proj_dim, lex_dim);
  proj_b = store.add_vector("wordproj.b", c.proj_dim);

  if (c.use_bilstm) {
    bilstm_fwd = LstmSpec::create(store, "bilstm.fwd", c.proj_dim, c.bilstm_hidden,
                                  c.bilstm_layers);
    bilstm_bwd = LstmSpec::create(store, "bilstm.bwd", c.proj_dim, c.bilstm_hidden,
                                  c.bilstm_layers);
  }
  if (c.use_tree) {
    tree_left = LstmSpec::create(store, "tree.left", d_v, c.tree_hidden, c.tree_layers);
    tree_right = LstmSpec::create(store, "tree.right", d_v, c.tree_hidden, c.tree_layers);
    reduce_w = store.add_matrix("reduce.W", d_v, 2 * c.tree_hidden + c.rel_dim);
    reduce_b = store.add_vector("reduce.b", d_v);
  }

  pad_item = store.add_embedding("scorer.pad", 1, c.item_dim());
  mlp_u = MlpSpec::create(store, "scorer.U", c.window_dim(), c.mlp_hidden, 2);
  mlp_l = MlpSpec::create(store, "scorer.L", c.window_dim(), c.mlp_hidden, 2 * L);
}

void Model::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kMagic, sizeof kMagic);
  write_u32(out, kVersion);

  std::map<std::string, std::string> kv = config.to_kv();
  kv["vocab"] = vocab.encode();
  kv["num_words"] = std::to_string(vocab.num_words());
  kv["num_pos"] = std::to_string(vocab.num_pos());
  kv["num_labels"] = std::to_string(vocab.num_labels());
  write_u32(out, static_cast<std::uint32_t>(kv.size()));
  for (const auto& [k, v] : kv) {
    write_str(out, k);
    write_str(out, v);
  }

  write_u32(out, static_cast<std::uint32_t>(store.size()));
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Parameter& p = store.param(static_cast<ParamId>(i));
    write_str(out, p.name);
    write_u32(out, static_cast<std::uint32_t>(p.value.rank()));
    for (std::size_t d : p.value.shape) write_u64(out, d);
    out.write(reinterpret_cast<const char*>(p.value.data.data()),
              static_cast<std::streamsize>(p.value.data.size() * sizeof(double)));
  }
  if (!out) throw IoError("write failed: " + path);
}

Model Model::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw FormatError("not a model file: " + path);
  const std::uint32_t version = read_u32(in);
  if (version != kVersion)
    throw VersionError("unsupported model version " + std::to_string(version));

  std::map<std::string, std::string> kv;
  const std::uint32_t nkv = read_u32(in);
  for (std::uint32_t i = 0; i < nkv; ++i) {
    std::string k = read_str(in);
    kv[k] = read_str(in);
  }
  if (!kv.count("vocab")) throw FormatError("model file lacks vocabulary block");
  ModelConfig config = ModelConfig::from_kv(kv);
  Vocab vocab = Vocab::decode(kv.at("vocab"));

  Model m = Model::create(config, std::move(vocab), /*seed=*/0);
  const std::uint32_t ntensors = read_u32(in);
  if (ntensors != m.store.size())
    throw FormatError("model file has " + std::to_string(ntensors) +
                      " tensors, expected " + std::to_string(m.store.size()));
  for (std::uint32_t i = 0; i < ntensors; ++i) {
    const std::string name = read_str(in);
    if (!m.store.has(name)) throw FormatError("unexpected tensor " + name);
    Parameter& p = m.store.param(m.store.id_of(name));
    const std::uint32_t rank = read_u32(in);
    std::vector<std::size_t> shape;
    for (std::uint32_t d = 0; d < rank; ++d)
      shape.push_back(static_cast<std::size_t>(read_u64(in)));
    if (shape != p.value.shape)
      throw DimError("tensor " + name + " has stored shape inconsistent with config");
    in.read(reinterpret_cast<char*>(p.value.data.data()),
            static_cast<std::streamsize>(p.value.data.size() * sizeof(double)));
    if (!in) throw IoError("truncated model file");
  }
  return m;
}

}  // namespace htparse
