#include "unilearn/model_filter.hpp"

#include <algorithm>
#include <stdexcept>

#include "text_util.hpp"
#include "unilearn/error.hpp"

namespace unilearn {

using detail::trim;

bool FeatureCondition::matches(const Category& c) const {
  auto v = c.get(feature);
  switch (kind) {
    case Kind::instantiated: return v.has_value();
    case Kind::uninstantiated: return !v.has_value();
    case Kind::equals: return v && *v == value;
  }
  return false;
}

FeatureCondition parse_condition(std::string_view text) {
  text = trim(text);
  auto call = [&](std::string_view name) -> std::optional<std::string_view> {
    if (text.size() > name.size() + 2 && text.substr(0, name.size()) == name &&
        text[name.size()] == '(' && text.back() == ')')
      return trim(text.substr(name.size() + 1, text.size() - name.size() - 2));
    return std::nullopt;
  };
  FeatureCondition c;
  if (auto f = call("instantiated")) {
    c.kind = FeatureCondition::Kind::instantiated;
    c.feature = Symbol(*f);
  } else if (auto g = call("uninstantiated")) {
    c.kind = FeatureCondition::Kind::uninstantiated;
    c.feature = Symbol(*g);
  } else if (auto eq = text.find('='); eq != std::string_view::npos) {
    c.kind = FeatureCondition::Kind::equals;
    c.feature = Symbol(trim(text.substr(0, eq)));
    c.value = Symbol(trim(text.substr(eq + 1)));
    if (c.value.empty()) throw FormatError("empty value in '" + std::string(text) + "'");
  } else {
    throw FormatError("bad feature condition '" + std::string(text) + "'");
  }
  if (c.feature.empty()) throw FormatError("empty feature in '" + std::string(text) + "'");
  return c;
}

LPRule parse_lp_rule(std::string_view text) {
  auto lt = text.find('<');
  if (lt == std::string_view::npos || text.find('<', lt + 1) != std::string_view::npos)
    throw FormatError("expected '<cond> < <cond>'");
  return {parse_condition(text.substr(0, lt)), parse_condition(text.substr(lt + 1))};
}

std::string to_string(const FeatureCondition& c) {
  switch (c.kind) {
    case FeatureCondition::Kind::instantiated: return "instantiated(" + to_string(c.feature) + ")";
    case FeatureCondition::Kind::uninstantiated:
      return "uninstantiated(" + to_string(c.feature) + ")";
    case FeatureCondition::Kind::equals: return to_string(c.feature) + "=" + to_string(c.value);
  }
  return "";
}

std::string to_string(const LPRule& r) { return to_string(r.first) + " < " + to_string(r.second); }

std::optional<LPViolation> check_lp(std::span<const Category> daughters,
                                    std::span<const LPRule> rules) {
  for (std::size_t r = 0; r < rules.size(); ++r)
    for (std::size_t i = 0; i < daughters.size(); ++i)
      for (std::size_t j = i + 1; j < daughters.size(); ++j)
        if (rules[r].first.matches(daughters[j]) && rules[r].second.matches(daughters[i]))
          return LPViolation{r, i, j};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

void SemTypeMap::assign(Category pattern, SemType type) {
  entries_.emplace_back(std::move(pattern), std::move(type));
}

std::optional<SemType> SemTypeMap::lookup(const Category& c) const {
  const std::pair<Category, SemType>* best = nullptr;
  for (const auto& entry : entries_)
    if (entry.first.subsumes(c) && (!best || entry.first.size() > best->first.size()))
      best = &entry;
  if (!best) return std::nullopt;
  return best->second;
}

SemVerdict check_semantics(const Rule& rule, const SemTypeMap& types) {
  using Kind = SemVerdict::Kind;
  if (rule.arity() == 1) {
    auto mother = types.lookup(rule.lhs);
    auto daughter = types.lookup(rule.rhs[0]);
    if (!mother || !daughter) return {Kind::abstain, std::nullopt};
    if (*mother == *daughter) return {Kind::ok, 0};
    return {Kind::reject, std::nullopt};
  }
  auto left = types.lookup(rule.rhs[0]);
  auto right = types.lookup(rule.rhs[1]);
  if (!left || !right) return {Kind::abstain, std::nullopt};
  const SemType* type[2] = {&*left, &*right};
  std::size_t first = rule.head.value_or(0);
  for (std::size_t f : {first, 1 - first})
    if (compose(*type[f], *type[1 - f])) return {Kind::ok, f};
  return {Kind::reject, std::nullopt};
}

std::optional<Rule> apply_hfc(const Rule& rule, std::size_t head,
                              std::span<const Symbol> features) {
  Rule out = rule;
  const Category& h = rule.rhs.at(head);
  for (Symbol f : features) {
    auto hv = h.get(f);
    if (!hv) continue;
    auto mv = out.lhs.get(f);
    if (!mv)
      out.lhs = out.lhs.with(f, *hv);
    else if (*mv != *hv)
      return std::nullopt;
  }
  return out;
}

// ---------------------------------------------------------------------------

XbarTable XbarTable::standard() {
  XbarTable t;
  t.set(std::nullopt, 0, {1, 2});
  t.set(std::nullopt, 1, {2});
  t.set(std::nullopt, 2, {2});
  return t;
}

void XbarTable::set(std::optional<Symbol> cat, int bar, std::vector<int> mother_bars) {
  if (cat)
    specific_[{*cat, bar}] = std::move(mother_bars);
  else
    any_[bar] = std::move(mother_bars);
}

std::vector<int> XbarTable::mother_bars(Symbol cat, int bar) const {
  if (auto it = specific_.find({cat, bar}); it != specific_.end()) return it->second;
  if (auto it = any_.find(bar); it != any_.end()) return it->second;
  return {};
}

namespace {

std::optional<int> bar_level(const Category& c) {
  auto bar = c.get(bar_feature());
  if (!bar || bar->str().size() != 1) return std::nullopt;
  char ch = bar->str()[0];
  if (ch < '0' || ch > '2') return std::nullopt;
  return ch - '0';
}

Symbol bar_symbol(int level) {
  static const Symbol levels[3] = {Symbol("0"), Symbol("1"), Symbol("2")};
  return levels[level];
}

}  // namespace

std::vector<Rule> project_xbar(const Rule& rule, const XbarTable& table) {
  std::vector<Rule> out;
  std::vector<std::size_t> heads;
  if (rule.head)
    heads.push_back(*rule.head);
  else
    for (std::size_t i = 0; i < rule.arity(); ++i) heads.push_back(i);

  for (std::size_t h : heads) {
    auto cat = rule.rhs.at(h).get(cat_feature());
    if (!cat) continue;
    auto emit = [&](const Category& projection) {
      auto lhs = unify(rule.lhs, projection);
      if (!lhs) return;
      Rule r = rule;
      r.lhs = std::move(*lhs);
      r.head = h;
      out.push_back(std::move(r));
    };
    Category base({{cat_feature(), *cat}});
    if (auto bar = bar_level(rule.rhs[h])) {
      for (int level : table.mother_bars(*cat, *bar))
        if (level >= 0 && level <= 2) emit(base.with(bar_feature(), bar_symbol(level)));
    } else {
      emit(base);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ModelConfig ModelConfig::xbar_only() {
  ModelConfig m;
  m.use_lp = false;
  m.use_semantics = false;
  m.use_hfc = false;
  return m;
}

void ModelConfig::add_lexicon_types(const Lexicon& lexicon) {
  for (const auto& [tag, entry] : lexicon.entries())
    if (entry.semtype) semtypes.assign(entry.category, *entry.semtype);
}

void ModelConfig::validate_features(const std::set<Symbol>& known) const {
  auto check = [&](Symbol f, const std::string& where) {
    if (!known.count(f))
      throw std::invalid_argument(where + " refers to undeclared feature '" + to_string(f) + "'");
  };
  for (const auto& r : lp_rules) {
    check(r.first.feature, "LP rule '" + to_string(r) + "'");
    check(r.second.feature, "LP rule '" + to_string(r) + "'");
  }
  for (Symbol f : hfc_features) check(f, "hfc");
}

ModelConfig load_model_config(std::string_view text) {
  ModelConfig m;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(detail::strip_comment(lines[i]));
    if (line.empty()) continue;
    try {
      if (line.substr(0, 3) == "lp:") {
        m.lp_rules.push_back(parse_lp_rule(line.substr(3)));
      } else if (line.substr(0, 4) == "hfc:") {
        std::string_view rest = line.substr(4);
        std::size_t start = 0;
        while (start <= rest.size()) {
          auto comma = rest.find(',', start);
          if (comma == std::string_view::npos) comma = rest.size();
          auto name = trim(rest.substr(start, comma - start));
          if (!name.empty()) m.hfc_features.emplace_back(name);
          start = comma + 1;
        }
      } else if (line.substr(0, 7) == "semtype" && line.size() > 7 &&
                 std::isspace(static_cast<unsigned char>(line[7]))) {
        auto eq = line.find('=', 7);
        // '=' may also occur inside the category's brackets.
        auto close = line.find(']', 7);
        if (close != std::string_view::npos) eq = line.find('=', close);
        if (eq == std::string_view::npos) throw FormatError("expected 'semtype Label = type'");
        Category pattern = parse_category(trim(line.substr(7, eq - 7)));
        m.semtypes.assign(std::move(pattern), parse_type(trim(line.substr(eq + 1))));
      } else if (line.substr(0, 5) == "xbar:") {
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw FormatError("expected 'xbar: CAT BAR -> BARS'");
        auto lhs = detail::split_ws(line.substr(5, arrow - 5));
        auto rhs = detail::split_ws(line.substr(arrow + 2));
        if (lhs.size() != 2) throw FormatError("expected 'xbar: CAT BAR -> BARS'");
        auto level = [](std::string_view s) {
          if (s.size() != 1 || s[0] < '0' || s[0] > '2')
            throw FormatError("invalid bar level '" + std::string(s) + "'");
          return s[0] - '0';
        };
        std::vector<int> bars;
        for (auto b : rhs) bars.push_back(level(b));
        std::optional<Symbol> cat;
        if (lhs[0] != "*") cat = Symbol(lhs[0]);
        m.xbar.set(cat, level(lhs[1]), std::move(bars));
      } else if (line.substr(0, 8) == "disable:") {
        auto what = trim(line.substr(8));
        if (what == "lp") m.use_lp = false;
        else if (what == "semantics") m.use_semantics = false;
        else if (what == "hfc") m.use_hfc = false;
        else if (what == "xbar") throw FormatError("X-bar projection cannot be disabled");
        else throw FormatError("unknown component '" + std::string(what) + "'");
      } else {
        throw FormatError("unrecognised line");
      }
    } catch (const FormatError& e) {
      throw FormatError(e.message(), i + 1, 1);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

std::vector<Rule> refine_candidate(const Rule& candidate, const ModelConfig& model,
                                   FilterTally* tally) {
  FilterTally local;
  std::vector<Rule> out;
  auto refinements = project_xbar(candidate, model.xbar);
  if (refinements.empty()) ++local.xbar;
  for (Rule& r : refinements) {
    if (model.use_hfc) {
      auto h = apply_hfc(r, *r.head, model.hfc_features);
      if (!h) {
        ++local.hfc;
        continue;
      }
      r = std::move(*h);
    }
    if (model.use_lp && check_lp(r.rhs, model.lp_rules)) {
      ++local.lp;
      continue;
    }
    if (model.use_semantics) {
      SemVerdict v = check_semantics(r, model.semtypes);
      if (v.kind == SemVerdict::Kind::reject) {
        ++local.semantics;
        continue;
      }
      if (v.kind == SemVerdict::Kind::ok) r.functor = v.functor;
    }
    bool seen = std::any_of(out.begin(), out.end(), [&](const Rule& s) {
      return s.same_categories(r) && s.head == r.head;
    });
    if (!seen) out.push_back(std::move(r));
  }
  if (tally) *tally += local;
  return out;
}

std::vector<Rule> filter_instantiations(std::span<const Rule> candidates,
                                        const ModelConfig& model, FilterTally* tally) {
  std::vector<Rule> out;
  for (const Rule& c : candidates)
    for (Rule& r : refine_candidate(c, model, tally)) out.push_back(std::move(r));
  return out;
}

std::set<Symbol> feature_names(const Grammar& g, const Lexicon& lex) {
  std::set<Symbol> out;
  auto add = [&](const Category& c) {
    for (const auto& [name, value] : c.features()) out.insert(name);
  };
  for (const auto& r : g.rules()) {
    add(r->lhs);
    for (const auto& c : r->rhs) add(c);
  }
  for (const auto& [tag, entry] : lex.entries()) add(entry.category);
  return out;
}

}  // namespace unilearn
