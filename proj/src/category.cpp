#include "unilearn/category.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "unilearn/error.hpp"

namespace unilearn {

Symbol cat_feature() {
  static const Symbol s("cat");
  return s;
}

Symbol bar_feature() {
  static const Symbol s("bar");
  return s;
}

Category::Category(std::vector<Feature> features) : features_(std::move(features)) {
  std::sort(features_.begin(), features_.end(),
            [](const Feature& a, const Feature& b) { return a.first < b.first; });
  auto dup = std::adjacent_find(
      features_.begin(), features_.end(),
      [](const Feature& a, const Feature& b) { return a.first == b.first; });
  if (dup != features_.end())
    throw std::invalid_argument("feature '" + to_string(dup->first) + "' appears twice");
}

Category Category::of(
    std::initializer_list<std::pair<std::string_view, std::string_view>> features) {
  std::vector<Feature> pairs;
  pairs.reserve(features.size());
  for (const auto& [name, value] : features) pairs.emplace_back(Symbol(name), Symbol(value));
  return Category(std::move(pairs));
}

std::optional<Symbol> Category::get(Symbol feature) const {
  auto it = std::lower_bound(
      features_.begin(), features_.end(), feature,
      [](const Feature& f, Symbol name) { return f.first < name; });
  if (it != features_.end() && it->first == feature) return it->second;
  return std::nullopt;
}

Category Category::with(Symbol feature, Symbol value) const {
  Category out = *this;
  auto it = std::lower_bound(
      out.features_.begin(), out.features_.end(), feature,
      [](const Feature& f, Symbol name) { return f.first < name; });
  if (it != out.features_.end() && it->first == feature)
    it->second = value;
  else
    out.features_.insert(it, {feature, value});
  return out;
}

Category Category::without(Symbol feature) const {
  Category out = *this;
  std::erase_if(out.features_, [&](const Feature& f) { return f.first == feature; });
  return out;
}

bool Category::subsumes(const Category& other) const {
  return std::includes(other.features_.begin(), other.features_.end(), features_.begin(),
                       features_.end());
}

std::size_t Category::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [name, value] : features_) {
    h ^= name.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= value.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::optional<Category> unify(const Category& a, const Category& b) {
  std::vector<Category::Feature> merged;
  merged.reserve(a.size() + b.size());
  auto ia = a.features().begin(), ea = a.features().end();
  auto ib = b.features().begin(), eb = b.features().end();
  while (ia != ea && ib != eb) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return std::nullopt;
      merged.push_back(*ia);
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      merged.push_back(*ia++);
    } else {
      merged.push_back(*ib++);
    }
  }
  merged.insert(merged.end(), ia, ea);
  merged.insert(merged.end(), ib, eb);
  return Category(std::move(merged));
}

// ---------------------------------------------------------------------------
// Projection table

namespace {

constexpr std::array<std::string_view, 9> kMajorCats = {"N", "V", "A",   "P",   "D",
                                                        "Adv", "Deg", "C", "Conj"};

struct LabelOverride {
  std::string_view label;
  std::string_view cat;
  int bar;
};

constexpr std::array<LabelOverride, 2> kOverrides = {{{"S", "S", 2}, {"Det", "D", 0}}};

bool is_major(std::string_view cat) {
  return std::find(kMajorCats.begin(), kMajorCats.end(), cat) != kMajorCats.end();
}

Category cat_bar(std::string_view cat, int bar) {
  return Category({{cat_feature(), Symbol(cat)},
                   {bar_feature(), Symbol(std::string(1, static_cast<char>('0' + bar)))}});
}

}  // namespace

std::string label_of(const Category& c) {
  auto cat = c.get(cat_feature());
  if (!cat) return "?";
  auto bar = c.get(bar_feature());
  std::string name(cat->str());
  if (!bar) return name;
  std::string_view level = bar->str();
  for (const auto& o : kOverrides)
    if (o.cat == name && level.size() == 1 && level[0] - '0' == o.bar)
      return std::string(o.label);
  if (level == "0") return name;
  if (level == "1") return name + "1";
  if (level == "2") return name + "P";
  return name + "<" + std::string(level) + ">";
}

Category category_from_label(std::string_view label) {
  for (const auto& o : kOverrides)
    if (o.label == label) return cat_bar(o.cat, o.bar);
  if (label.size() > 1) {
    std::string_view prefix = label.substr(0, label.size() - 1);
    if (label.back() == 'P' && is_major(prefix)) return cat_bar(prefix, 2);
    if (label.back() == '1' && is_major(prefix)) return cat_bar(prefix, 1);
  }
  if (is_major(label)) return cat_bar(label, 0);
  return Category({{cat_feature(), Symbol(label)}});
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

bool is_label_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

bool is_name_char(char ch) {
  if (std::isspace(static_cast<unsigned char>(ch))) return false;
  switch (ch) {
    case '[': case ']': case ',': case '=': case '{': case '}': case '#':
      return false;
    default:
      return true;
  }
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

[[noreturn]] void fail(const std::string& message, std::size_t pos) {
  throw FormatError(message, 1, pos + 1);
}

std::string_view read_name(std::string_view text, std::size_t& pos, const char* what) {
  std::size_t start = pos;
  while (pos < text.size() && is_name_char(text[pos])) ++pos;
  if (pos == start) fail(std::string("expected ") + what, start);
  return text.substr(start, pos - start);
}

}  // namespace

Category parse_category_at(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  std::size_t start = pos;
  while (pos < text.size() && is_label_char(text[pos])) ++pos;
  std::string_view label = text.substr(start, pos - start);
  bool bracketed = pos < text.size() && text[pos] == '[';
  if (label.empty() && !bracketed) fail("expected category", start);

  std::vector<Category::Feature> features;
  if (!label.empty()) {
    Category base = category_from_label(label);
    features.assign(base.features().begin(), base.features().end());
  }
  std::size_t label_features = features.size();

  if (bracketed) {
    ++pos;
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
    } else {
      while (true) {
        skip_space(text, pos);
        std::size_t name_pos = pos;
        Symbol name(read_name(text, pos, "feature name"));
        skip_space(text, pos);
        if (pos >= text.size() || text[pos] != '=') fail("expected '='", pos);
        ++pos;
        skip_space(text, pos);
        std::size_t value_pos = pos;
        Symbol value(read_name(text, pos, "feature value"));
        bool restated = false;
        for (std::size_t i = 0; i < features.size(); ++i) {
          if (features[i].first != name) continue;
          if (i < label_features && features[i].second == value) {
            restated = true;
            break;
          }
          fail(i < label_features ? "feature '" + to_string(name) + "' conflicts with label"
                                  : "feature '" + to_string(name) + "' appears twice",
               name_pos);
        }
        if (name == bar_feature() && value.str() != "0" && value.str() != "1" &&
            value.str() != "2")
          fail("invalid bar level '" + to_string(value) + "'", value_pos);
        if (!restated) features.emplace_back(name, value);
        skip_space(text, pos);
        if (pos >= text.size()) fail("unterminated '['", pos);
        if (text[pos] == ']') {
          ++pos;
          break;
        }
        if (text[pos] != ',') fail("expected ',' or ']'", pos);
        ++pos;
      }
    }
  }
  return Category(std::move(features));
}

Category parse_category(std::string_view text) {
  std::size_t pos = 0;
  Category c = parse_category_at(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) fail("trailing text after category", pos);
  return c;
}

std::string to_string(const Category& c) {
  std::string out;
  std::vector<Category::Feature> rest(c.features().begin(), c.features().end());
  if (c.has(cat_feature())) {
    std::string label = label_of(c);
    Category implied = category_from_label(label);
    bool usable = !label.empty() && std::all_of(label.begin(), label.end(), is_label_char);
    if (usable) {
      // The label must stand for exactly the cat/bar pair c carries.
      Category core({{cat_feature(), *c.get(cat_feature())}});
      if (auto bar = c.get(bar_feature())) core = core.with(bar_feature(), *bar);
      usable = implied == core;
    }
    if (usable) {
      out = label;
      std::erase_if(rest, [](const Category::Feature& f) {
        return f.first == cat_feature() || f.first == bar_feature();
      });
    }
  }
  out += '[';
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (i) out += ", ";
    out += rest[i].first.str();
    out += '=';
    out += rest[i].second.str();
  }
  out += ']';
  return out;
}

}  // namespace unilearn
