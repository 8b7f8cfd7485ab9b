#include "unilearn/chart_parser.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "unilearn/error.hpp"

namespace unilearn {

void ParserBounds::validate() const {
  if (max_parses < 1) throw std::invalid_argument("max_parses must be at least 1");
  if (max_edges < 1) throw std::invalid_argument("max_edges must be at least 1");
}

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::exhausted: return "exhausted";
    case HaltReason::parse_bound: return "parse_bound";
    case HaltReason::edge_bound: return "edge_bound";
  }
  return "unknown";
}

Category ChartParser::default_start() { return category_from_label("S"); }

ChartParser::ChartParser(Grammar grammar, Lexicon lexicon, Category start)
    : grammar_(std::move(grammar)), lexicon_(std::move(lexicon)), start_(std::move(start)) {
  for (const auto& r : grammar_.rules()) {
    (r->arity() == 2 ? binary_ : unary_).push_back(rules_.size());
    rules_.push_back(r);
  }
  SuperRules supers = super_rules();
  binary_super_ = rules_.size();
  rules_.push_back(std::make_shared<const Rule>(std::move(supers.binary)));
  unary_super_ = rules_.size();
  rules_.push_back(std::make_shared<const Rule>(std::move(supers.unary)));
}

namespace {

using EdgeId = std::uint32_t;
constexpr std::size_t kLexical = static_cast<std::size_t>(-1);

struct Edge {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t rule = kLexical;
  std::size_t dot = 0;
  std::vector<Category> inst;  // [lhs, d1, ...]; [category] for lexical edges
  // Lexical: none. Unary or active-from-passive: {passive}. Binary
  // completion: {active, passive}.
  std::vector<std::vector<EdgeId>> derivations;

  const Category& category() const { return inst.front(); }
};

struct EdgeKey {
  std::size_t start, end, rule, dot;
  std::vector<Category> inst;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    std::size_t h = k.start * 1000003u ^ k.end * 10007u ^ k.rule * 131u ^ k.dot;
    for (const auto& c : k.inst) h = h * 31 + c.hash();
    return h;
  }
};

std::size_t sat_add(std::size_t a, std::size_t b, std::size_t cap) {
  return a >= cap - std::min(b, cap) ? cap : a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(a * b, cap);
}

class Chart {
 public:
  Chart(const std::vector<RulePtr>& rules, const Category& start, std::size_t length,
        const ParserBounds& bounds)
      : rules_(rules),
        start_(start),
        n_(length),
        bounds_(bounds),
        passive_(length + 1, std::vector<std::vector<EdgeId>>(length + 1)),
        active_(length + 1, std::vector<std::vector<EdgeId>>(length + 1)) {}

  bool halted() const { return halted_.has_value(); }
  HaltReason reason() const {
    return halted_.value_or(enough_ ? HaltReason::parse_bound : HaltReason::exhausted);
  }
  std::size_t edge_count() const { return edges_.size(); }

  void add_lexical(std::size_t i, const Category& c) {
    add_edge({i, i + 1, kLexical, 0, {c}}, {});
  }

  void combine(std::size_t i, std::size_t k, std::size_t j, bool super_phase,
               std::size_t super_rule) {
    // Index loops: edges_ may reallocate while we add.
    const auto& left = active_[i][k];
    const auto& right = passive_[k][j];
    for (std::size_t a = 0; a < left.size() && !halted(); ++a) {
      EdgeId aid = left[a];
      bool is_super = edges_[aid].rule == super_rule;
      if (is_super != super_phase) continue;
      for (std::size_t p = 0; p < right.size() && !halted(); ++p) {
        EdgeId pid = right[p];
        const Edge& act = edges_[aid];
        auto u = unify(act.inst[act.dot + 1], edges_[pid].category());
        if (!u) continue;
        std::vector<Category> inst = act.inst;
        inst[act.dot + 1] = std::move(*u);
        add_edge({i, j, act.rule, act.dot + 1, std::move(inst)}, {aid, pid});
      }
    }
  }

  void unary_closure(std::size_t i, std::size_t j, const std::vector<std::size_t>& unary) {
    auto& cell = passive_[i][j];
    for (std::size_t q = 0; q < cell.size() && !halted(); ++q) {
      EdgeId pid = cell[q];
      for (std::size_t r : unary) {
        if (halted()) break;
        auto u = unify(rules_[r]->rhs[0], edges_[pid].category());
        if (!u) continue;
        add_edge({i, j, r, 1, {rules_[r]->lhs, std::move(*u)}}, {pid});
      }
    }
  }

  void predict(std::size_t i, std::size_t j, const std::vector<std::size_t>& binary) {
    const auto& cell = passive_[i][j];
    for (std::size_t q = 0; q < cell.size() && !halted(); ++q) {
      EdgeId pid = cell[q];
      for (std::size_t r : binary) {
        if (halted()) break;
        const Rule& rule = *rules_[r];
        auto u = unify(rule.rhs[0], edges_[pid].category());
        if (!u) continue;
        add_edge({i, j, r, 1, {rule.lhs, std::move(*u), rule.rhs[1]}}, {pid});
      }
    }
  }

  std::vector<ParseTreePtr> trees(std::size_t limit) {
    std::vector<ParseTreePtr> out;
    memo_.clear();
    std::vector<EdgeId> roots = roots_;
    std::stable_sort(roots.begin(), roots.end(),
                     [&](EdgeId a, EdgeId b) { return cost(a) < cost(b); });
    for (EdgeId root : roots) {
      for (const auto& t : trees_of(root, limit)) {
        if (out.size() >= limit) return out;
        out.push_back(t);
      }
    }
    return out;
  }

  std::vector<Symbol> tags;

 private:
  bool is_passive(const Edge& e) const {
    return e.rule == kLexical || e.dot == rules_[e.rule]->arity();
  }

  void add_edge(EdgeKey key, std::vector<EdgeId> derivation) {
    auto it = index_.find(key);
    if (it != index_.end()) {
      EdgeId id = it->second;
      if (derivation.size() == 1 && is_passive(edges_[id]) && reaches(derivation[0], id)) return;
      edges_[id].derivations.push_back(std::move(derivation));
      if (is_root_[id]) check_parse_bound();
      return;
    }
    if (edges_.size() >= bounds_.max_edges) {
      halted_ = enough_ ? HaltReason::parse_bound : HaltReason::edge_bound;
      return;
    }
    EdgeId id = static_cast<EdgeId>(edges_.size());
    Edge e{key.start, key.end, key.rule, key.dot, key.inst, {}};
    if (!derivation.empty()) e.derivations.push_back(std::move(derivation));
    bool passive = is_passive(e);
    bool root = passive && e.rule != kLexical && e.start == 0 && e.end == n_ &&
                unify(e.category(), start_).has_value();
    (passive ? passive_ : active_)[e.start][e.end].push_back(id);
    edges_.push_back(std::move(e));
    is_root_.push_back(root);
    index_.emplace(std::move(key), id);
    if (root) {
      roots_.push_back(id);
      check_parse_bound();
    }
  }

  // True when target is reachable from from through same-span unary
  // derivations (adding target <- from would close a cycle).
  bool reaches(EdgeId from, EdgeId target) const {
    if (from == target) return true;
    const Edge& e = edges_[from];
    for (const auto& d : e.derivations)
      if (d.size() == 1 && edges_[d[0]].start == e.start && edges_[d[0]].end == e.end &&
          reaches(d[0], target))
        return true;
    return false;
  }

  // Roots only arise over the whole input, the last span processed. Once
  // enough parses exist the span is still finished, so that every root
  // derivation is available for ranking.
  void check_parse_bound() {
    if (enough_) return;
    std::size_t cap = bounds_.max_parses;
    std::unordered_map<EdgeId, std::size_t> memo;
    std::size_t total = 0;
    for (EdgeId r : roots_) total = sat_add(total, count(r, cap, memo), cap);
    if (total >= cap) enough_ = true;
  }

  // Fewest super-rule nodes in any tree under the edge, then fewest
  // preterminals taken directly as super-rule daughters.
  std::size_t cost(EdgeId id) {
    if (cost_.size() < edges_.size()) cost_.resize(edges_.size(), kUnknown);
    if (cost_[id] != kUnknown) return cost_[id];
    const Edge& e = edges_[id];
    std::size_t best = e.derivations.empty() ? 0 : kUnknown;
    for (const auto& d : e.derivations) best = std::min(best, derivation_cost(id, d));
    if (is_super(e) && is_passive(e)) best += kSuperNode;
    return cost_[id] = best;
  }

  bool is_super(const Edge& e) const {
    return e.rule != kLexical && rules_[e.rule]->origin == RuleOrigin::super;
  }

  std::size_t derivation_cost(EdgeId owner, const std::vector<EdgeId>& d) {
    bool super = is_super(edges_[owner]);
    std::size_t c = 0;
    for (EdgeId x : d) {
      c += cost(x);
      if (super && edges_[x].rule == kLexical) ++c;
    }
    return c;
  }

  // Derivation indices, cheapest first, ties in creation order.
  std::vector<std::size_t> ranked(EdgeId id) {
    const auto& ds = edges_[id].derivations;
    std::vector<std::size_t> order(ds.size());
    std::vector<std::size_t> costs(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      order[i] = i;
      costs[i] = derivation_cost(id, ds[i]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    return order;
  }

  std::size_t count(EdgeId id, std::size_t cap, std::unordered_map<EdgeId, std::size_t>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Edge& e = edges_[id];
    std::size_t total = e.rule == kLexical ? 1 : 0;
    for (const auto& d : e.derivations) {
      std::size_t ways = 1;
      for (EdgeId c : d) ways = sat_mul(ways, count(c, cap, memo), cap);
      total = sat_add(total, ways, cap);
    }
    memo.emplace(id, total);
    return total;
  }

  using Daughters = std::vector<ParseTreePtr>;

  // Daughter sequences an active edge has collected so far.
  std::vector<Daughters> found_of(EdgeId id, std::size_t limit) {
    std::vector<Daughters> out;
    for (std::size_t di : ranked(id))
      for (const auto& t : trees_of(edges_[id].derivations[di][0], limit)) {
        if (out.size() >= limit) return out;
        out.push_back({t});
      }
    return out;
  }

  const std::vector<ParseTreePtr>& trees_of(EdgeId id, std::size_t limit) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    std::vector<ParseTreePtr> out;
    const Edge& e = edges_[id];
    if (e.rule == kLexical) {
      auto leaf = std::make_shared<ParseTree>();
      leaf->category = e.category();
      leaf->provenance = Provenance::lexical;
      leaf->token_index = e.start;
      leaf->tag = tags[e.start];
      out.push_back(std::move(leaf));
    } else {
      for (std::size_t di : ranked(id)) {
        const auto& d = edges_[id].derivations[di];
        if (out.size() >= limit) break;
        std::vector<Daughters> seqs;
        if (d.size() == 1) {
          for (const auto& t : trees_of(d[0], limit)) seqs.push_back({t});
        } else {
          for (const auto& prefix : found_of(d[0], limit))
            for (const auto& t : trees_of(d[1], limit)) {
              if (seqs.size() >= limit) break;
              Daughters full = prefix;
              full.push_back(t);
              seqs.push_back(std::move(full));
            }
        }
        for (auto& seq : seqs) {
          if (out.size() >= limit) break;
          auto node = std::make_shared<ParseTree>();
          node->category = e.category();
          node->rule = rules_[e.rule];
          node->instantiation = e.inst;
          node->provenance =
              node->rule->origin == RuleOrigin::super ? Provenance::super : Provenance::grammar;
          node->children = std::move(seq);
          out.push_back(std::move(node));
        }
      }
    }
    return memo_.emplace(id, std::move(out)).first->second;
  }

  const std::vector<RulePtr>& rules_;
  const Category& start_;
  std::size_t n_;
  ParserBounds bounds_;
  std::vector<Edge> edges_;
  std::vector<bool> is_root_;
  std::unordered_map<EdgeKey, EdgeId, EdgeKeyHash> index_;
  std::vector<std::vector<std::vector<EdgeId>>> passive_;
  std::vector<std::vector<std::vector<EdgeId>>> active_;
  std::vector<EdgeId> roots_;
  std::optional<HaltReason> halted_;
  bool enough_ = false;
  static constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);
  // Outweighs any number of preterminal daughters.
  static constexpr std::size_t kSuperNode = std::size_t{1} << 32;
  std::vector<std::size_t> cost_;
  std::unordered_map<EdgeId, std::vector<ParseTreePtr>> memo_;
};

}  // namespace

ParseResult ChartParser::run(std::span<const Symbol> tags, const ParserBounds& bounds,
                             bool use_binary_super, bool use_unary_super) const {
  bounds.validate();
  std::vector<Category> lexical;
  lexical.reserve(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i)
    lexical.push_back(lexicon_.at(tags[i], i).category);

  ParseResult result;
  std::size_t n = tags.size();
  if (n == 0) return result;

  std::vector<std::size_t> binary = binary_;
  if (use_binary_super) binary.push_back(binary_super_);
  std::vector<std::size_t> unary = unary_;
  if (use_unary_super) unary.push_back(unary_super_);

  Chart chart(rules_, start_, n, bounds);
  chart.tags.assign(tags.begin(), tags.end());
  for (std::size_t len = 1; len <= n && !chart.halted(); ++len) {
    for (std::size_t i = 0; i + len <= n && !chart.halted(); ++i) {
      std::size_t j = i + len;
      if (len == 1) {
        chart.add_lexical(i, lexical[i]);
      } else {
        for (bool super_phase : {false, true})
          for (std::size_t k = i + 1; k < j && !chart.halted(); ++k)
            chart.combine(i, k, j, super_phase, binary_super_);
      }
      if (!chart.halted()) chart.unary_closure(i, j, unary);
      if (!chart.halted() && len < n) chart.predict(i, j, binary);
    }
  }
  result.halted = chart.reason();
  result.edges = chart.edge_count();
  result.trees = chart.trees(bounds.max_parses);
  return result;
}

ParseResult ChartParser::parse(std::span<const Symbol> tags, const ParserBounds& bounds) const {
  return run(tags, bounds, false, false);
}

ParseResult ChartParser::parse_completing(std::span<const Symbol> tags,
                                          const ParserBounds& bounds, bool use_unary) const {
  return run(tags, bounds, true, use_unary);
}

}  // namespace unilearn
