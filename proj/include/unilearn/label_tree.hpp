#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace unilearn {

// Labelled tree in bracketed notation: (S (NP Sam) (VP (V laughs))).
// Token leaves carry the word as their label and have no children.
struct LabelTree {
  std::string label;
  std::vector<LabelTree> children;
  bool token = false;

  static LabelTree leaf(std::string word) { return {std::move(word), {}, true}; }
  static LabelTree node(std::string label, std::vector<LabelTree> children) {
    return {std::move(label), std::move(children), false};
  }

  std::size_t leaf_count() const;
  std::size_t internal_count() const;

  friend bool operator==(const LabelTree&, const LabelTree&) = default;
};

// Parses one tree; throws FormatError on unbalanced brackets or junk.
LabelTree parse_bracketed(std::string_view text);
// Parses one tree starting at pos, advancing past it. line/column in
// errors are computed from text.
LabelTree parse_bracketed_at(std::string_view text, std::size_t& pos);

std::string to_bracketed(const LabelTree& tree);

// Labels of non-token nodes in preorder.
std::vector<std::string> preorder_labels(const LabelTree& tree);

}  // namespace unilearn
