#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unilearn/grammar.hpp"
#include "unilearn/label_tree.hpp"

namespace unilearn {

// Ordered (mother, daughter) label pair.
using LabelPair = std::pair<std::string, std::string>;

// One pair per dominance edge from an internal node to a non-token child,
// in preorder.
std::vector<LabelPair> extract_mdps(const LabelTree& tree);

// Mother-daughter pair counts n and their total N. f(pair) = n/N for seen
// pairs; unseen pairs get the floor.
class MdpTable {
 public:
  static constexpr double kDefaultFloor = 1e-6;

  explicit MdpTable(double floor = kDefaultFloor);

  void add(const LabelPair& pair, std::uint64_t count = 1);
  // Cumulative: counts keep growing across calls.
  void train(std::span<const LabelTree> trees);
  void train(const LabelTree& tree);
  void merge(const MdpTable& other);

  std::uint64_t count(const LabelPair& pair) const;
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  const std::map<LabelPair, std::uint64_t>& counts() const noexcept { return counts_; }

  // The configured floor, lowered to the smallest observed f if needed so
  // that an unseen pair never outscores a seen one.
  double floor() const;
  // Throws std::invalid_argument unless 0 < epsilon <= 1.
  void set_floor(double epsilon);

  double f(const LabelPair& pair) const;

 private:
  std::map<LabelPair, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t min_count_ = 0;
  double floor_;
};

// score(X) = geometric mean over non-token daughters D of score(D) * f(X, D);
// a node with only token children scores 1.
double score_tree(const MdpTable& table, const LabelTree& tree);

// Candidate for the data-driven filter: a rule and its local tree in a
// completed parse (mother label over full daughter subtrees).
struct DataCandidate {
  Rule rule;
  LabelTree local;
};

// True iff every daughter subtree scores strictly above theta.
bool passes_threshold(const MdpTable& table, const LabelTree& local, double theta);

std::vector<Rule> threshold_filter(std::span<const DataCandidate> candidates,
                                   const MdpTable& table, double theta);

// `mother daughter count` lines followed by `TOTAL N`; `#` comments.
std::string save_table(const MdpTable& table);
// Throws FormatError when malformed or when TOTAL disagrees with the counts.
MdpTable load_table(std::string_view text, double floor = MdpTable::kDefaultFloor);

}  // namespace unilearn
