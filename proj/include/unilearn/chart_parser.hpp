#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "unilearn/category.hpp"
#include "unilearn/grammar.hpp"
#include "unilearn/parse_tree.hpp"

namespace unilearn {

// n (complete parses) and m (chart edges) resource bounds.
struct ParserBounds {
  std::size_t max_parses = 1;
  std::size_t max_edges = 3000;

  static ParserBounds unbounded() {
    return {std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::size_t>::max()};
  }
  // Throws std::invalid_argument unless both bounds are at least 1.
  void validate() const;
};

enum class HaltReason { exhausted, parse_bound, edge_bound };
std::string_view to_string(HaltReason reason);

struct ParseResult {
  std::vector<ParseTreePtr> trees;
  std::size_t edges = 0;
  HaltReason halted = HaltReason::exhausted;
};

// Bottom-up chart parser over unification rules. Spans are completed
// shortest first; within a span, binary combinations run split point by
// split point with grammar rules ahead of super rules, then unary closure
// runs FIFO. Edges are shared by (span, rule, dot, instantiation), so each
// edge may carry several derivations. Trees are read off lazily: fewer
// super-rule nodes first, then fewer preterminals directly under super-rule
// nodes, then derivation order, so the result order is deterministic. Reaching the parse bound stops the parser
// once the whole-input span is finished.
//
// A complete parse is a rule-built edge over the whole input whose
// category unifies with the start category.
class ChartParser {
 public:
  ChartParser(Grammar grammar, Lexicon lexicon, Category start = default_start());

  // Throws UnknownTagError for tags without a lexicon entry.
  ParseResult parse(std::span<const Symbol> tags, const ParserBounds& bounds) const;

  // As parse, with the binary super rule (and the unary one when
  // use_unary) added after the grammar's rules.
  ParseResult parse_completing(std::span<const Symbol> tags, const ParserBounds& bounds,
                               bool use_unary = false) const;

  const Grammar& grammar() const noexcept { return grammar_; }
  const Category& start() const noexcept { return start_; }

  static Category default_start();

 private:
  ParseResult run(std::span<const Symbol> tags, const ParserBounds& bounds, bool use_binary_super,
                  bool use_unary_super) const;

  Grammar grammar_;
  Lexicon lexicon_;
  Category start_;
  std::vector<RulePtr> rules_;  // grammar rules, then binary super, then unary super
  std::vector<std::size_t> binary_;
  std::vector<std::size_t> unary_;
  std::size_t binary_super_;
  std::size_t unary_super_;
};

}  // namespace unilearn
