#include "unilearn/label_tree.hpp"

#include <cctype>

#include "unilearn/error.hpp"

namespace unilearn {

std::size_t LabelTree::leaf_count() const {
  if (token) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::size_t LabelTree::internal_count() const {
  if (token) return 0;
  std::size_t n = 1;
  for (const auto& c : children) n += c.internal_count();
  return n;
}

namespace {

class BracketReader {
 public:
  BracketReader(std::string_view text, std::size_t& pos) : text_(text), pos_(pos) {}

  LabelTree read_tree() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected '('");
    if (text_[pos_] != '(') fail("expected '('");
    return read_node();
  }

 private:
  LabelTree read_node() {
    ++pos_;  // '('
    skip_space();
    std::string label = read_atom();
    if (label.empty()) fail("expected node label");
    LabelTree node = LabelTree::node(std::move(label), {});
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("unbalanced brackets: missing ')'");
      char ch = text_[pos_];
      if (ch == ')') {
        ++pos_;
        break;
      }
      if (ch == '(') {
        node.children.push_back(read_node());
      } else {
        node.children.push_back(LabelTree::leaf(read_atom()));
      }
    }
    if (node.children.empty()) fail("empty constituent '" + node.label + "'");
    return node;
  }

  std::string read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError(message, line, column);
  }

  std::string_view text_;
  std::size_t& pos_;
};

void write(const LabelTree& t, std::string& out) {
  if (t.token) {
    out += t.label;
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    write(c, out);
  }
  out += ')';
}

void collect(const LabelTree& t, std::vector<std::string>& out) {
  if (t.token) return;
  out.push_back(t.label);
  for (const auto& c : t.children) collect(c, out);
}

}  // namespace

LabelTree parse_bracketed_at(std::string_view text, std::size_t& pos) {
  return BracketReader(text, pos).read_tree();
}

LabelTree parse_bracketed(std::string_view text) {
  std::size_t pos = 0;
  LabelTree t = parse_bracketed_at(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw FormatError("trailing text after tree", 1, pos + 1);
  return t;
}

std::string to_bracketed(const LabelTree& tree) {
  std::string out;
  write(tree, out);
  return out;
}

std::vector<std::string> preorder_labels(const LabelTree& tree) {
  std::vector<std::string> out;
  collect(tree, out);
  return out;
}

}  // namespace unilearn
