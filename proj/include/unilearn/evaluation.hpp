#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/chart_parser.hpp"
#include "unilearn/corpus.hpp"
#include "unilearn/label_tree.hpp"

namespace unilearn {

// Label rewriting; unmapped labels stay as they are.
using LabelMap = std::map<std::string, std::string>;

// `from to` pairs, one per line, `#` comments.
LabelMap load_label_map(std::string_view text);
std::string save_label_map(const LabelMap& map);

// Relabels internal nodes; token leaves and structure are untouched.
LabelTree normalize(const LabelTree& tree, const LabelMap& map);

struct ClosenessDetail {
  std::vector<std::vector<std::string>> pieces;
  double score = 0.0;
};

// Greedy matching of walk lists: repeatedly take the longest contiguous
// run common to test and bench (leftmost in test, then in bench), record it
// and delete it from test only. Score is the mean piece length over the
// bench length; no pieces scores 0.
ClosenessDetail closeness_walks(std::vector<std::string> test,
                                std::span<const std::string> bench);

double closeness(const LabelTree& test, const LabelTree& bench, const LabelMap& map = {});

struct CoverageResult {
  std::size_t parsed = 0;
  std::size_t total = 0;
  double percent = 0.0;  // one decimal place
  std::vector<bool> per_sentence;
  std::vector<std::size_t> edges;
};

double round_percent(std::size_t part, std::size_t whole);

CoverageResult coverage(const ChartParser& parser, std::span<const TaggedSentence> sentences,
                        const ParserBounds& bounds);

struct PlausibilityResult {
  std::vector<double> best;  // per sentence
  double mean = 0.0;
};

// Best closeness among the first sample_k parses of each sentence,
// averaged. Throws std::runtime_error naming a sentence that does not parse.
PlausibilityResult plausibility(const ChartParser& parser,
                                std::span<const TaggedSentence> sentences,
                                std::span<const LabelTree> bench, const ParserBounds& bounds,
                                std::size_t sample_k = 10, const LabelMap& map = {});

}  // namespace unilearn
