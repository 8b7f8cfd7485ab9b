#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/category.hpp"
#include "unilearn/grammar.hpp"
#include "unilearn/semtype.hpp"

namespace unilearn {

// instantiated(F), uninstantiated(F) or F=v.
struct FeatureCondition {
  enum class Kind { instantiated, uninstantiated, equals };
  Kind kind = Kind::instantiated;
  Symbol feature;
  Symbol value;

  bool matches(const Category& c) const;
};

// Linear precedence: a sister matching `first` may not follow a sister
// matching `second` within one local tree.
struct LPRule {
  FeatureCondition first;
  FeatureCondition second;
};

FeatureCondition parse_condition(std::string_view text);
LPRule parse_lp_rule(std::string_view text);  // "<cond> < <cond>"
std::string to_string(const FeatureCondition& c);
std::string to_string(const LPRule& r);

struct LPViolation {
  std::size_t rule = 0;     // index into the LP rule list
  std::size_t earlier = 0;  // daughter positions
  std::size_t later = 0;
};

std::optional<LPViolation> check_lp(std::span<const Category> daughters,
                                    std::span<const LPRule> rules);

// Category pattern -> semantic type. Lookup picks the most specific pattern
// that subsumes the category (earliest on ties); none means unmapped.
class SemTypeMap {
 public:
  void assign(Category pattern, SemType type);
  std::optional<SemType> lookup(const Category& c) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::pair<Category, SemType>> entries_;
};

struct SemVerdict {
  enum class Kind { ok, reject, abstain };
  Kind kind = Kind::abstain;
  std::optional<std::size_t> functor;
};

// Binary: the head daughter is tried as functor first, then the other.
// Unary: the daughter's type must equal the mother's.
SemVerdict check_semantics(const Rule& rule, const SemTypeMap& types);

// Copies each listed feature from the head daughter to an LHS lacking it;
// nullopt when the LHS already holds a different value.
std::optional<Rule> apply_hfc(const Rule& rule, std::size_t head,
                              std::span<const Symbol> features);

// Permitted mother bar levels for a head of a given cat and bar level.
class XbarTable {
 public:
  // 0 -> {1,2}, 1 -> {2}, 2 -> {2} for every category.
  static XbarTable standard();

  // cat == nullopt sets the entry for all categories.
  void set(std::optional<Symbol> cat, int bar, std::vector<int> mother_bars);
  std::vector<int> mother_bars(Symbol cat, int bar) const;

 private:
  std::map<int, std::vector<int>> any_;
  std::map<std::pair<Symbol, int>, std::vector<int>> specific_;
};

// One refinement per (candidate head, permitted bar level): the LHS takes
// the head's cat and a bar level from the table. A rule with head set only
// considers that daughter. Refinements conflicting with the LHS are dropped;
// an empty result means rejection.
std::vector<Rule> project_xbar(const Rule& rule, const XbarTable& table = XbarTable::standard());

struct ModelConfig {
  std::vector<LPRule> lp_rules;
  SemTypeMap semtypes;
  std::vector<Symbol> hfc_features;
  XbarTable xbar = XbarTable::standard();
  bool use_lp = true;
  bool use_semantics = true;
  bool use_hfc = true;

  // X-bar projection alone: the part of the model every learner applies.
  static ModelConfig xbar_only();

  // Adds the lexicon's per-tag types as exact-category patterns.
  void add_lexicon_types(const Lexicon& lexicon);

  // Throws std::invalid_argument if an LP or HFC feature is not in known.
  void validate_features(const std::set<Symbol>& known) const;
};

// Lines: `lp: <cond> < <cond>`, `semtype Label = <type>`, `hfc: f1, f2`,
// `xbar: CAT|* BAR -> BARS...`, `disable: lp|semantics|hfc`; `#` comments.
ModelConfig load_model_config(std::string_view text);

// Rejections per filter stage.
struct FilterTally {
  std::size_t xbar = 0;
  std::size_t hfc = 0;
  std::size_t lp = 0;
  std::size_t semantics = 0;
  std::size_t data = 0;

  FilterTally& operator+=(const FilterTally& o) {
    xbar += o.xbar;
    hfc += o.hfc;
    lp += o.lp;
    semantics += o.semantics;
    data += o.data;
    return *this;
  }
};

// X-bar refinement, then HFC, then LP, then semantics (abstentions pass).
// Survivors carry head and, when semantics decided one, functor indices.
std::vector<Rule> refine_candidate(const Rule& candidate, const ModelConfig& model,
                                   FilterTally* tally = nullptr);

std::vector<Rule> filter_instantiations(std::span<const Rule> candidates,
                                        const ModelConfig& model, FilterTally* tally = nullptr);

// Every feature name used in a grammar or lexicon.
std::set<Symbol> feature_names(const Grammar& g, const Lexicon& lex);

}  // namespace unilearn
