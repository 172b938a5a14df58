#include "htparse/conll.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace htparse {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t' || ch == ' ') {
      if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) fields.push_back(std::move(cur));
  return fields;
}

bool plain_integer(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Row {
  int id;
  std::string form, pos, head, deprel;
  int line_no;
};

Sentence finish_block(std::vector<Row>& rows) {
  Sentence s;
  const int n = static_cast<int>(rows.size());
  bool has_arcs = true;
  for (const Row& r : rows) {
    s.tokens.push_back({r.id, r.form, r.pos});
    if (r.head == "_") has_arcs = false;
  }
  if (has_arcs) {
    std::vector<Arc> arcs;
    for (const Row& r : rows) {
      if (!plain_integer(r.head))
        throw ParseError("line " + std::to_string(r.line_no) +
                         ": non-integer HEAD '" + r.head + "'");
      int h = std::atoi(r.head.c_str());
      if (h < 0 || h > n)
        throw ParseError("line " + std::to_string(r.line_no) + ": HEAD " +
                         std::to_string(h) + " out of range for sentence of " +
                         std::to_string(n) + " tokens");
      arcs.push_back({h, r.id, r.deprel});
    }
    s.gold_arcs = std::move(arcs);
    check_tree(s);
  }
  rows.clear();
  return s;
}

}  // namespace

std::vector<Sentence> read_conll(std::istream& in, int pos_column) {
  if (pos_column != 4 && pos_column != 5)
    throw ConfigError("pos_column must be 4 or 5");
  std::vector<Sentence> sentences;
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!rows.empty()) sentences.push_back(finish_block(rows));
      continue;
    }
    if (line[0] == '#') continue;
    auto fields = split_fields(line);
    if (fields.size() < 8)
      throw ParseError("line " + std::to_string(line_no) + ": expected >= 8 columns, got " +
                       std::to_string(fields.size()));
    if (!plain_integer(fields[0])) continue;  // multiword range / empty node
    Row r;
    r.id = std::atoi(fields[0].c_str());
    if (r.id != static_cast<int>(rows.size()) + 1)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate or out-of-order ID " +
                       fields[0]);
    r.form = fields[1];
    r.pos = fields[pos_column == 4 ? 3 : 4];
    r.head = fields[6];
    r.deprel = fields[7];
    r.line_no = line_no;
    rows.push_back(std::move(r));
  }
  if (!rows.empty()) sentences.push_back(finish_block(rows));
  return sentences;
}

std::vector<Sentence> read_conll_file(const std::string& path, int pos_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_conll(in, pos_column);
}

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::string& placeholder_label) {
  for (const Sentence& s : sentences) {
    std::vector<int> heads(s.size() + 1, -1);
    std::vector<std::string> labels(s.size() + 1, placeholder_label);
    if (s.gold_arcs) {
      for (const Arc& a : *s.gold_arcs) {
        heads[a.modifier] = a.head;
        labels[a.modifier] = a.label.empty() ? placeholder_label : a.label;
      }
    }
    for (const Token& t : s.tokens) {
      out << t.index << '\t' << t.form << '\t' << '_' << '\t' << t.pos << '\t'
          << t.pos << '\t' << '_' << '\t';
      if (heads[t.index] >= 0)
        out << heads[t.index] << '\t' << labels[t.index];
      else
        out << '_' << '\t' << '_';
      out << '\n';
    }
    out << '\n';
  }
}

void write_conll_file(const std::string& path, const std::vector<Sentence>& sentences,
                      const std::string& placeholder_label) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_conll(out, sentences, placeholder_label);
  if (!out) throw IoError("write failed: " + path);
}

void check_tree(const Sentence& s) {
  if (!s.gold_arcs) throw ParseError("sentence has no arcs");
  const int n = static_cast<int>(s.size());
  if (static_cast<int>(s.gold_arcs->size()) != n)
    throw ParseError("expected " + std::to_string(n) + " arcs, got " +
                     std::to_string(s.gold_arcs->size()));
  std::vector<int> head(n + 1, -1);
  int roots = 0;
  for (const Arc& a : *s.gold_arcs) {
    if (a.modifier < 1 || a.modifier > n || a.head < 0 || a.head > n ||
        a.head == a.modifier)
      throw ParseError("invalid arc (" + std::to_string(a.head) + "," +
                       std::to_string(a.modifier) + ")");
    if (head[a.modifier] != -1)
      throw ParseError("duplicate modifier " + std::to_string(a.modifier));
    head[a.modifier] = a.head;
    if (a.head == 0) ++roots;
  }
  if (roots != 1) throw ParseError("tree must have exactly one root arc");
  // acyclicity: walk up from every node
  for (int m = 1; m <= n; ++m) {
    int steps = 0, cur = m;
    while (cur != 0) {
      cur = head[cur];
      if (++steps > n) throw ParseError("cycle through word " + std::to_string(m));
    }
  }
}

std::vector<int> head_array(const Sentence& s) {
  std::vector<int> head(s.size() + 1, -1);
  for (const Arc& a : *s.gold_arcs) head[a.modifier] = a.head;
  return head;
}

std::vector<std::string> label_array(const Sentence& s) {
  std::vector<std::string> labels(s.size() + 1);
  for (const Arc& a : *s.gold_arcs) labels[a.modifier] = a.label;
  return labels;
}

bool is_projective(const Sentence& s) {
  const auto head = head_array(s);
  const int n = static_cast<int>(s.size());
  for (int m = 1; m <= n; ++m) {
    const int h = head[m];
    const int lo = std::min(h, m), hi = std::max(h, m);
    for (int w = lo + 1; w < hi; ++w) {
      if (head[w] < lo || head[w] > hi) return false;
    }
  }
  return true;
}

}  // namespace htparse
