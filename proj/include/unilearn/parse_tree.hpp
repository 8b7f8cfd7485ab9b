#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "unilearn/category.hpp"
#include "unilearn/grammar.hpp"
#include "unilearn/label_tree.hpp"

namespace unilearn {

enum class Provenance {
  lexical,  // preterminal over one token
  grammar,  // built by a rule of the grammar being parsed with
  super,    // built by a super rule
};

struct ParseTree;
using ParseTreePtr = std::shared_ptr<const ParseTree>;

// Parser output. Internal nodes record the rule used and its categories
// after unification with the daughters ([lhs, d1, d2]); for super-rule
// nodes that instantiation is the candidate rule the learner inspects.
struct ParseTree {
  Category category;
  RulePtr rule;
  std::vector<Category> instantiation;
  Provenance provenance = Provenance::lexical;
  std::vector<ParseTreePtr> children;
  std::size_t token_index = 0;
  Symbol tag;

  bool is_lexical() const noexcept { return provenance == Provenance::lexical; }
  std::size_t leaf_count() const;
  std::size_t super_count() const;
};

// Labels via label_of; token leaves show words[token_index] when words
// are given, otherwise the tag.
LabelTree to_label_tree(const ParseTree& tree, std::span<const std::string> words = {});

// Every internal node's children unify with its rule's RHS and its
// instantiation agrees with those unifications.
bool validate(const ParseTree& tree);

// Lexical leaves carry tags[i] in order.
bool covers(const ParseTree& tree, std::span<const Symbol> tags);

// Distinct rules used at internal nodes, in preorder.
std::vector<RulePtr> rules_used(const ParseTree& tree);

}  // namespace unilearn
