#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/category.hpp"
#include "unilearn/semtype.hpp"

namespace unilearn {

enum class RuleOrigin { seed, learnt, super };

// LHS plus one or two RHS categories. head and functor are 0-based RHS
// positions; the file format writes them 1-based.
struct Rule {
  Category lhs;
  std::vector<Category> rhs;
  std::optional<std::size_t> head;
  std::optional<std::size_t> functor;
  RuleOrigin origin = RuleOrigin::seed;

  std::size_t arity() const noexcept { return rhs.size(); }
  // Throws std::invalid_argument on arity or index violations.
  void validate() const;
  // Rule identity: categories only, annotations and origin ignored.
  bool same_categories(const Rule& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
};

using RulePtr = std::shared_ptr<const Rule>;

struct SuperRules {
  Rule binary;  // [] -> [] []
  Rule unary;   // [] -> []
};

SuperRules super_rules();

enum class AddOutcome { added, duplicate };

// Ordered, duplicate-free rule set. Copies share rule storage.
class Grammar {
 public:
  explicit Grammar(std::string name = "G") : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::span<const RulePtr> rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  AddOutcome add(Rule rule);
  bool contains(const Rule& rule) const;
  // The grammar minus the rule with rule's categories, if present.
  Grammar without(const Rule& rule) const;

 private:
  using Key = std::vector<Category>;
  static Key key_of(const Rule& rule);

  std::string name_;
  std::vector<RulePtr> rules_;
  std::set<Key> index_;
};

// Value-style insertion: the returned grammar contains rule.
std::pair<Grammar, AddOutcome> add_rule(Grammar g, Rule rule);

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

// One rule per line: `LHS -> RHS1 [RHS2] {head=i, functor=j, origin=learnt}`,
// `#` comments. Duplicate rules are dropped with a warning.
Grammar load_grammar(std::string_view text, std::vector<Diagnostic>* warnings = nullptr);
std::string save_grammar(const Grammar& g);

Rule parse_rule(std::string_view line);
std::string to_string(const Rule& rule);

struct LexEntry {
  Symbol tag;
  Category category;
  std::optional<SemType> semtype;
};

// Tag -> category map; the tags are the grammar's terminals.
class Lexicon {
 public:
  // Throws std::invalid_argument when the tag already has an entry.
  void add(LexEntry entry);
  const LexEntry* find(Symbol tag) const;
  // Throws UnknownTagError naming the tag and token position.
  const LexEntry& at(Symbol tag, std::size_t position) const;
  std::set<Symbol> tags() const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<Symbol, LexEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<Symbol, LexEntry> entries_;
};

// `tag TAG Category [: semtype]` lines, `#` comments.
Lexicon load_lexicon(std::string_view text);
std::string save_lexicon(const Lexicon& lex);

// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace unilearn
