#include "unilearn/parse_tree.hpp"

#include <algorithm>

namespace unilearn {

std::size_t ParseTree::leaf_count() const {
  if (is_lexical()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c->leaf_count();
  return n;
}

std::size_t ParseTree::super_count() const {
  std::size_t n = provenance == Provenance::super ? 1 : 0;
  for (const auto& c : children) n += c->super_count();
  return n;
}

LabelTree to_label_tree(const ParseTree& tree, std::span<const std::string> words) {
  LabelTree out = LabelTree::node(label_of(tree.category), {});
  if (tree.is_lexical()) {
    out.children.push_back(LabelTree::leaf(tree.token_index < words.size()
                                               ? words[tree.token_index]
                                               : to_string(tree.tag)));
    return out;
  }
  for (const auto& c : tree.children) out.children.push_back(to_label_tree(*c, words));
  return out;
}

bool validate(const ParseTree& tree) {
  if (tree.is_lexical()) return tree.children.empty();
  if (!tree.rule || tree.children.size() != tree.rule->rhs.size()) return false;
  if (tree.instantiation.size() != tree.children.size() + 1) return false;
  if (tree.instantiation[0] != tree.rule->lhs || tree.category != tree.rule->lhs) return false;
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    auto u = unify(tree.rule->rhs[i], tree.children[i]->category);
    if (!u || *u != tree.instantiation[i + 1]) return false;
    if (!validate(*tree.children[i])) return false;
  }
  return true;
}

namespace {

void collect_tags(const ParseTree& t, std::vector<Symbol>& out) {
  if (t.is_lexical()) {
    out.push_back(t.tag);
    return;
  }
  for (const auto& c : t.children) collect_tags(*c, out);
}

void collect_rules(const ParseTree& t, std::vector<RulePtr>& out) {
  if (t.is_lexical()) return;
  if (std::find(out.begin(), out.end(), t.rule) == out.end()) out.push_back(t.rule);
  for (const auto& c : t.children) collect_rules(*c, out);
}

}  // namespace

bool covers(const ParseTree& tree, std::span<const Symbol> tags) {
  std::vector<Symbol> seen;
  collect_tags(tree, seen);
  return std::equal(seen.begin(), seen.end(), tags.begin(), tags.end());
}

std::vector<RulePtr> rules_used(const ParseTree& tree) {
  std::vector<RulePtr> out;
  collect_rules(tree, out);
  return out;
}

}  // namespace unilearn
