#include "htparse/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace htparse {

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

Vocab Vocab::build(const std::vector<Sentence>& training) {
  if (training.empty()) throw ParseError("empty training corpus");
  Vocab v;
  v.words_ = {"<unk>", "<pad>"};
  v.counts_ = {0, 0};
  std::unordered_map<std::string, int> root_votes;
  for (const Sentence& s : training) {
    if (!s.gold_arcs) throw ParseError("training sentence without gold arcs");
    for (const Token& t : s.tokens) {
      const std::string w = lowercase(t.form);
      auto it = v.word_index_.find(w);
      if (it == v.word_index_.end()) {
        v.word_index_[w] = static_cast<int>(v.words_.size());
        v.words_.push_back(w);
        v.counts_.push_back(1);
      } else {
        ++v.counts_[it->second];
      }
      if (!v.pos_index_.count(t.pos)) {
        v.pos_index_[t.pos] = static_cast<int>(v.pos_.size());
        v.pos_.push_back(t.pos);
      }
    }
    for (const Arc& a : *s.gold_arcs) {
      if (!v.label_index_.count(a.label)) {
        v.label_index_[a.label] = static_cast<int>(v.labels_.size());
        v.labels_.push_back(a.label);
      }
      if (a.head == 0) ++root_votes[a.label];
    }
  }
  int best = 0;
  for (const auto& [label, n] : root_votes) {
    int id = v.label_index_[label];
    if (n > best || (n == best && id < v.root_label_)) {
      best = n;
      v.root_label_ = id;
    }
  }
  return v;
}

int Vocab::word_id(const std::string& form) const {
  auto it = word_index_.find(lowercase(form));
  return it == word_index_.end() ? kUnkWord : it->second;
}

int Vocab::pos_id(const std::string& pos) const {
  auto it = pos_index_.find(pos);
  return it == pos_index_.end() ? -1 : it->second;
}

int Vocab::label_id(const std::string& label) const {
  auto it = label_index_.find(label);
  return it == label_index_.end() ? -1 : it->second;
}

std::uint64_t Vocab::word_count(int word_id) const {
  return counts_.at(static_cast<std::size_t>(word_id));
}

void Vocab::reindex() {
  word_index_.clear();
  pos_index_.clear();
  label_index_.clear();
  for (std::size_t i = 0; i < words_.size(); ++i)
    word_index_.emplace(words_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < pos_.size(); ++i)
    pos_index_.emplace(pos_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    label_index_.emplace(labels_[i], static_cast<int>(i));
}

std::string Vocab::encode() const {
  std::ostringstream out;
  out << words_.size() << ' ' << pos_.size() << ' ' << labels_.size() << ' '
      << root_label_ << '\n';
  for (std::size_t i = 0; i < words_.size(); ++i)
    out << words_[i] << '\n' << counts_[i] << '\n';
  for (const std::string& p : pos_) out << p << '\n';
  for (const std::string& l : labels_) out << l << '\n';
  return out.str();
}

Vocab Vocab::decode(const std::string& blob) {
  std::istringstream in(blob);
  std::size_t nw, np, nl;
  int root;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("truncated vocab block");
  if (std::sscanf(line.c_str(), "%zu %zu %zu %d", &nw, &np, &nl, &root) != 4)
    throw FormatError("malformed vocab header");
  Vocab v;
  v.root_label_ = root;
  auto next = [&in]() {
    std::string s;
    if (!std::getline(in, s)) throw FormatError("truncated vocab block");
    return s;
  };
  for (std::size_t i = 0; i < nw; ++i) {
    v.words_.push_back(next());
    v.counts_.push_back(std::stoull(next()));
  }
  for (std::size_t i = 0; i < np; ++i) v.pos_.push_back(next());
  for (std::size_t i = 0; i < nl; ++i) v.labels_.push_back(next());
  v.reindex();
  return v;
}

bool Vocab::operator==(const Vocab& o) const {
  return words_ == o.words_ && counts_ == o.counts_ && pos_ == o.pos_ &&
         labels_ == o.labels_ && root_label_ == o.root_label_;
}

int DropoutPolicy::apply(int word_id, const Vocab& vocab,
                         std::mt19937_64& rng) const {
  if (!enabled || word_id == Vocab::kUnkWord || word_id == Vocab::kPadWord)
    return word_id;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < replace_prob(vocab.word_count(word_id))) return Vocab::kUnkWord;
  return word_id;
}

std::vector<std::pair<int, std::vector<double>>> load_pretrained_embeddings(
    const std::string& path, const Vocab& vocab, std::size_t expected_dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::pair<int, std::vector<double>>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    std::vector<double> vec;
    double x;
    while (row >> x) vec.push_back(x);
    if (vec.size() != expected_dim)
      throw DimError("embedding row " + std::to_string(line_no) + " has " +
                     std::to_string(vec.size()) + " values, expected " +
                     std::to_string(expected_dim));
    const int id = vocab.word_id(word);
    if (id != Vocab::kUnkWord || lowercase(word) == "<unk>")
      out.emplace_back(id, std::move(vec));
  }
  return out;
}

}  // namespace htparse
