#include "unilearn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_util.hpp"
#include "unilearn/error.hpp"

namespace unilearn {

LabelMap load_label_map(std::string_view text) {
  LabelMap map;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = detail::split_ws(detail::strip_comment(lines[i]));
    if (fields.empty()) continue;
    if (fields.size() != 2) throw FormatError("expected 'from to'", i + 1, 1);
    if (!map.emplace(std::string(fields[0]), std::string(fields[1])).second)
      throw FormatError("label '" + std::string(fields[0]) + "' mapped twice", i + 1, 1);
  }
  return map;
}

std::string save_label_map(const LabelMap& map) {
  std::string out;
  for (const auto& [from, to] : map) out += from + ' ' + to + '\n';
  return out;
}

LabelTree normalize(const LabelTree& tree, const LabelMap& map) {
  if (tree.token) return tree;
  LabelTree out = tree;
  if (auto it = map.find(tree.label); it != map.end()) out.label = it->second;
  for (auto& c : out.children) c = normalize(c, map);
  return out;
}

ClosenessDetail closeness_walks(std::vector<std::string> test,
                                std::span<const std::string> bench) {
  ClosenessDetail d;
  if (bench.empty()) return d;
  while (!test.empty()) {
    // runs[i][j]: length of the common run ending at test[i-1], bench[j-1].
    // Only the start in test matters for the result, since bench is never
    // edited; the bench tie-break is implicit in the scan order.
    std::vector<std::vector<std::size_t>> runs(test.size() + 1,
                                               std::vector<std::size_t>(bench.size() + 1, 0));
    for (std::size_t i = 1; i <= test.size(); ++i)
      for (std::size_t j = 1; j <= bench.size(); ++j)
        if (test[i - 1] == bench[j - 1]) runs[i][j] = runs[i - 1][j - 1] + 1;
    std::size_t best = 0, best_start = 0;
    for (std::size_t i = 1; i <= test.size(); ++i)
      for (std::size_t j = 1; j <= bench.size(); ++j) {
        std::size_t len = runs[i][j];
        if (len == 0) continue;
        std::size_t start = i - len;
        if (len > best || (len == best && start < best_start)) {
          best = len;
          best_start = start;
        }
      }
    if (best == 0) break;
    d.pieces.emplace_back(test.begin() + static_cast<std::ptrdiff_t>(best_start),
                          test.begin() + static_cast<std::ptrdiff_t>(best_start + best));
    test.erase(test.begin() + static_cast<std::ptrdiff_t>(best_start),
               test.begin() + static_cast<std::ptrdiff_t>(best_start + best));
  }
  if (d.pieces.empty()) return d;
  std::size_t total = 0;
  for (const auto& p : d.pieces) total += p.size();
  double mean = static_cast<double>(total) / static_cast<double>(d.pieces.size());
  d.score = mean / static_cast<double>(bench.size());
  return d;
}

double closeness(const LabelTree& test, const LabelTree& bench, const LabelMap& map) {
  auto lt = preorder_labels(normalize(test, map));
  auto lb = preorder_labels(normalize(bench, map));
  return closeness_walks(std::move(lt), lb).score;
}

double round_percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0.0;
  return std::round(1000.0 * static_cast<double>(part) / static_cast<double>(whole)) / 10.0;
}

CoverageResult coverage(const ChartParser& parser, std::span<const TaggedSentence> sentences,
                        const ParserBounds& bounds) {
  CoverageResult r;
  r.total = sentences.size();
  ParserBounds b = bounds;
  b.max_parses = 1;
  for (const auto& s : sentences) {
    auto res = parser.parse(s.tags, b);
    bool ok = !res.trees.empty();
    r.per_sentence.push_back(ok);
    r.edges.push_back(res.edges);
    if (ok) ++r.parsed;
  }
  r.percent = round_percent(r.parsed, r.total);
  return r;
}

PlausibilityResult plausibility(const ChartParser& parser,
                                std::span<const TaggedSentence> sentences,
                                std::span<const LabelTree> bench, const ParserBounds& bounds,
                                std::size_t sample_k, const LabelMap& map) {
  if (sentences.size() != bench.size())
    throw std::invalid_argument("plausibility needs one benchmark tree per sentence");
  if (sample_k == 0) throw std::invalid_argument("sample size must be at least 1");
  PlausibilityResult r;
  ParserBounds b = bounds;
  b.max_parses = sample_k;
  double sum = 0.0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto res = parser.parse(sentences[i].tags, b);
    if (res.trees.empty()) throw std::runtime_error("sentence '" + sentences[i].id + "' does not parse");
    double best = 0.0;
    for (const auto& t : res.trees)
      best = std::max(best, closeness(to_label_tree(*t, sentences[i].words), bench[i], map));
    r.best.push_back(best);
    sum += best;
  }
  if (!sentences.empty()) r.mean = sum / static_cast<double>(sentences.size());
  return r;
}

}  // namespace unilearn
