#include "unilearn/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_util.hpp"
#include "unilearn/error.hpp"

namespace unilearn {

namespace {

void collect_mdps(const LabelTree& t, std::vector<LabelPair>& out) {
  if (t.token) return;
  for (const auto& c : t.children)
    if (!c.token) out.emplace_back(t.label, c.label);
  for (const auto& c : t.children) collect_mdps(c, out);
}

}  // namespace

std::vector<LabelPair> extract_mdps(const LabelTree& tree) {
  std::vector<LabelPair> out;
  collect_mdps(tree, out);
  return out;
}

MdpTable::MdpTable(double floor) { set_floor(floor); }

void MdpTable::set_floor(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("MDP floor must lie in (0, 1]");
  floor_ = epsilon;
}

void MdpTable::add(const LabelPair& pair, std::uint64_t count) {
  if (count == 0) return;
  std::uint64_t& n = counts_[pair];
  n += count;
  total_ += count;
  min_count_ = 0;
  for (const auto& [key, c] : counts_)
    if (min_count_ == 0 || c < min_count_) min_count_ = c;
}

void MdpTable::train(const LabelTree& tree) {
  for (const auto& pair : extract_mdps(tree)) add(pair);
}

void MdpTable::train(std::span<const LabelTree> trees) {
  for (const auto& t : trees) train(t);
}

void MdpTable::merge(const MdpTable& other) {
  for (const auto& [pair, n] : other.counts_) add(pair, n);
}

std::uint64_t MdpTable::count(const LabelPair& pair) const {
  auto it = counts_.find(pair);
  return it == counts_.end() ? 0 : it->second;
}

double MdpTable::floor() const {
  if (total_ == 0) return floor_;
  return std::min(floor_, static_cast<double>(min_count_) / static_cast<double>(total_));
}

double MdpTable::f(const LabelPair& pair) const {
  std::uint64_t n = count(pair);
  if (n == 0) return floor();
  return static_cast<double>(n) / static_cast<double>(total_);
}

double score_tree(const MdpTable& table, const LabelTree& tree) {
  if (tree.token) return 1.0;
  double log_sum = 0.0;
  std::size_t k = 0;
  for (const auto& d : tree.children) {
    if (d.token) continue;
    log_sum += std::log(score_tree(table, d)) + std::log(table.f({tree.label, d.label}));
    ++k;
  }
  if (k == 0) return 1.0;
  return std::exp(log_sum / static_cast<double>(k));
}

bool passes_threshold(const MdpTable& table, const LabelTree& local, double theta) {
  return std::all_of(local.children.begin(), local.children.end(), [&](const LabelTree& d) {
    return score_tree(table, d) > theta;
  });
}

std::vector<Rule> threshold_filter(std::span<const DataCandidate> candidates,
                                   const MdpTable& table, double theta) {
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("threshold must lie in [0, 1]");
  std::vector<Rule> out;
  for (const auto& c : candidates)
    if (passes_threshold(table, c.local, theta)) out.push_back(c.rule);
  return out;
}

std::string save_table(const MdpTable& table) {
  std::string out;
  for (const auto& [pair, n] : table.counts())
    out += pair.first + " " + pair.second + " " + std::to_string(n) + "\n";
  out += "TOTAL " + std::to_string(table.total()) + "\n";
  return out;
}

MdpTable load_table(std::string_view text, double floor) {
  MdpTable table(floor);
  auto lines = detail::split_lines(text);
  bool have_total = false;
  std::uint64_t declared = 0;
  auto number = [](std::string_view s, std::size_t line) {
    std::uint64_t n = 0;
    if (s.empty()) throw FormatError("expected count", line, 1);
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw FormatError("bad count '" + std::string(s) + "'", line, 1);
      n = n * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return n;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = detail::split_ws(detail::strip_comment(lines[i]));
    if (fields.empty()) continue;
    if (have_total) throw FormatError("record after TOTAL", i + 1, 1);
    if (fields.size() == 2 && fields[0] == "TOTAL") {
      declared = number(fields[1], i + 1);
      have_total = true;
      continue;
    }
    if (fields.size() != 3) throw FormatError("expected 'mother daughter count'", i + 1, 1);
    std::uint64_t n = number(fields[2], i + 1);
    if (n == 0) throw FormatError("counts must be positive", i + 1, 1);
    table.add({std::string(fields[0]), std::string(fields[1])}, n);
  }
  if (!have_total) throw FormatError("missing TOTAL trailer");
  if (declared != table.total())
    throw FormatError("TOTAL " + std::to_string(declared) + " does not match counts (" +
                      std::to_string(table.total()) + ")");
  return table;
}

}  // namespace unilearn
