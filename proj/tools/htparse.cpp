// htparse: train / parse / eval / sample front end.
//
// Exit codes: 0 ok, 2 unreadable or malformed input, 3 invalid
// configuration (including model/flag dimension disagreement), 4 eval
// alignment failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "../vendor/CLI11.hpp"
#include "htparse/eval.hpp"
#include "htparse/kernels.hpp"
#include "htparse/trainer.hpp"
#include "htparse/treebank_gen.hpp"

namespace {

using namespace htparse;

bool quiet_logs() {
  const char* v = std::getenv("HTPARSE_LOG");
  return v && (std::string(v) == "quiet" || std::string(v) == "0");
}

struct TrainArgs {
  std::string train_path, dev_path, model_path, embeddings_path;
  ModelConfig mcfg;
  TrainConfig tcfg;
  int pos_column = 4;
};

int cmd_train(const TrainArgs& a) {
  std::vector<Sentence> train = read_conll_file(a.train_path, a.pos_column);
  std::vector<Sentence> dev;
  if (!a.dev_path.empty()) dev = read_conll_file(a.dev_path, a.pos_column);
  a.mcfg.validate();

  const bool quiet = quiet_logs();
  EpochLogger log = [&](const EpochStats& s) {
    if (quiet) return;
    std::cout << "epoch=" << s.epoch << " mean_loss=" << s.mean_loss
              << " errors=" << s.losses << " updates=" << s.updates
              << " skipped_nonproj=" << s.skipped_nonproj;
    if (s.dev_uas) std::cout << " dev_uas=" << *s.dev_uas;
    if (s.dev_las) std::cout << " dev_las=" << *s.dev_las;
    std::cout << " seconds=" << s.seconds << "\n";
  };

  std::function<void(Model&)> init;
  if (!a.embeddings_path.empty()) {
    init = [&](Model& m) {
      auto rows = load_pretrained_embeddings(a.embeddings_path, m.vocab,
                                             m.config.word_dim);
      Tensor& emb = m.store.param(m.word_emb).value;
      for (const auto& [id, vec] : rows)
        std::copy(vec.begin(), vec.end(),
                  emb.data.begin() +
                      static_cast<std::ptrdiff_t>(id * m.config.word_dim));
      if (!quiet)
        std::cout << "loaded_embeddings=" << rows.size() << "\n";
    };
  }

  Model model = train_model(a.mcfg, a.tcfg, train,
                            dev.empty() ? nullptr : &dev, log, init);
  model.save(a.model_path);
  if (!quiet) std::cout << "model=" << a.model_path << "\n";
  return 0;
}

struct ParseArgs {
  std::string model_path, input_path, output_path, gold_out_path;
  int pos_column = 4;
  ModelConfig flags;
  bool check_dims = false;
};

int cmd_parse(const ParseArgs& a) {
  Model model = Model::load(a.model_path);
  if (a.check_dims) {
    const ModelConfig& e = model.config;
    const ModelConfig& f = a.flags;
    if (e.word_dim != f.word_dim || e.pos_dim != f.pos_dim ||
        e.rel_dim != f.rel_dim || e.proj_dim != f.proj_dim ||
        e.tree_hidden != f.tree_hidden || e.tree_layers != f.tree_layers ||
        e.bilstm_hidden != f.bilstm_hidden ||
        e.bilstm_layers != f.bilstm_layers || e.mlp_hidden != f.mlp_hidden ||
        e.window != f.window || e.use_pos != f.use_pos ||
        e.use_bilstm != f.use_bilstm || e.use_tree != f.use_tree)
      throw ConfigError("model dimensions disagree with command-line flags");
  }
  std::vector<Sentence> input = read_conll_file(a.input_path, a.pos_column);

  std::vector<Sentence> out;
  out.reserve(input.size());
  bool any_gold = false;
  for (const Sentence& s : input) {
    any_gold = any_gold || s.gold_arcs.has_value();
    out.push_back(parse_to_sentence(model, s));
  }
  write_conll_file(a.output_path, out);

  if (any_gold) {
    const std::string side =
        a.gold_out_path.empty() ? a.output_path + ".gold" : a.gold_out_path;
    write_conll_file(side, input);
  }
  return 0;
}

struct EvalArgs {
  std::string gold_path, pred_path;
  int pos_column = 4;
  bool no_punct = false;
};

int cmd_eval(const EvalArgs& a) {
  std::vector<Sentence> gold = read_conll_file(a.gold_path, a.pos_column);
  std::vector<Sentence> pred = read_conll_file(a.pred_path, a.pos_column);
  PunctPolicy punct;
  if (a.no_punct) punct.exclude_pos.clear();
  EvalReport r = evaluate(gold, pred, punct);
  std::cout << "uas=" << r.uas << "\n"
            << "las=" << r.las << "\n"
            << "counted=" << r.counted << "\n"
            << "excluded=" << r.excluded << "\n";
  return 0;
}

struct SampleArgs {
  std::string out_dir = ".";
  std::uint64_t seed = 7;
  std::size_t size = 500;
  std::size_t dev_size = 100;
};

int cmd_sample(const SampleArgs& a) {
  std::vector<Sentence> all = generate_treebank(a.seed, a.size + a.dev_size);
  std::vector<Sentence> train(all.begin(),
                              all.begin() + static_cast<std::ptrdiff_t>(a.size));
  std::vector<Sentence> dev(all.begin() + static_cast<std::ptrdiff_t>(a.size),
                            all.end());
  const std::string train_path = a.out_dir + "/train.conll";
  write_conll_file(train_path, train);
  if (!quiet_logs())
    std::cout << "train=" << train_path << " sentences=" << train.size() << "\n";
  if (a.dev_size > 0) {
    const std::string dev_path = a.out_dir + "/dev.conll";
    write_conll_file(dev_path, dev);
    if (!quiet_logs())
      std::cout << "dev=" << dev_path << " sentences=" << dev.size() << "\n";
  }
  return 0;
}

void add_model_flags(CLI::App* cmd, ModelConfig& m) {
  cmd->add_option("--word-dim", m.word_dim);
  cmd->add_option("--pos-dim", m.pos_dim);
  cmd->add_option("--rel-dim", m.rel_dim);
  cmd->add_option("--proj-dim", m.proj_dim);
  cmd->add_option("--tree-hidden", m.tree_hidden);
  cmd->add_option("--tree-layers", m.tree_layers);
  cmd->add_option("--bilstm-hidden", m.bilstm_hidden);
  cmd->add_option("--bilstm-layers", m.bilstm_layers);
  cmd->add_option("--mlp-hidden", m.mlp_hidden);
  cmd->add_option("--window", m.window);
  cmd->add_flag("--use-pos,!--no-pos", m.use_pos);
  cmd->add_flag("--use-bilstm,!--no-bilstm", m.use_bilstm);
  cmd->add_flag("--use-tree,!--no-tree", m.use_tree);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"easy-first dependency parser with hierarchical tree-LSTM "
               "features"};
  app.require_subcommand(1);

  TrainArgs ta;
  CLI::App* train = app.add_subcommand("train", "train a model");
  train->add_option("--train", ta.train_path)->required();
  train->add_option("--dev", ta.dev_path);
  train->add_option("--model", ta.model_path)->required();
  train->add_option("--external-embeddings", ta.embeddings_path);
  train->add_option("--pos-column", ta.pos_column)->check(CLI::IsMember({4, 5}));
  add_model_flags(train, ta.mcfg);
  train->add_option("--epochs", ta.tcfg.epochs);
  train->add_option("--seed", ta.tcfg.seed);
  train->add_option("--p-aug", ta.tcfg.p_aug);
  train->add_option("--margin", ta.tcfg.margin);
  train->add_option("--dropout-alpha", ta.tcfg.dropout_alpha);
  train->add_option("--batch-errors", ta.tcfg.batch_errors);
  train->add_flag("--explore,!--no-explore", ta.tcfg.explore);
  train->add_flag("--dynamic-oracle,!--no-dynamic-oracle", ta.tcfg.dynamic_oracle);
  train->add_flag("--flip-margin-branch", ta.tcfg.flip_margin_branch);

  ParseArgs pa;
  CLI::App* parse = app.add_subcommand("parse", "parse a CoNLL file");
  parse->add_option("--model", pa.model_path)->required();
  parse->add_option("--input", pa.input_path)->required();
  parse->add_option("--output", pa.output_path)->required();
  parse->add_option("--gold-out", pa.gold_out_path);
  parse->add_option("--pos-column", pa.pos_column)->check(CLI::IsMember({4, 5}));
  CLI::App* parse_dims = parse;  // dim flags double as a consistency check
  add_model_flags(parse_dims, pa.flags);

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against gold");
  eval->add_option("--gold", ea.gold_path)->required();
  eval->add_option("--pred", ea.pred_path)->required();
  eval->add_option("--pos-column", ea.pos_column)->check(CLI::IsMember({4, 5}));
  eval->add_flag("--no-punct-filter", ea.no_punct);

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "generate a synthetic treebank");
  sample->add_option("--out-dir", sa.out_dir);
  sample->add_option("--seed", sa.seed);
  sample->add_option("--size", sa.size);
  sample->add_option("--dev-size", sa.dev_size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*train) {
      // a dim flag on parse marks intent to cross-check; on train it just
      // configures the model, so nothing extra here
      return cmd_train(ta);
    }
    if (*parse) {
      for (const auto* opt :
           {"--word-dim", "--pos-dim", "--rel-dim", "--proj-dim",
            "--tree-hidden", "--tree-layers", "--bilstm-hidden",
            "--bilstm-layers", "--mlp-hidden", "--window", "--use-pos",
            "--no-pos", "--use-bilstm", "--no-bilstm", "--use-tree",
            "--no-tree"})
        if (parse->count(opt) > 0) pa.check_dims = true;
      return cmd_parse(pa);
    }
    if (*eval) return cmd_eval(ea);
    if (*sample) return cmd_sample(sa);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const VersionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *eval ? 4 : 2;
  }
  return 0;
}
