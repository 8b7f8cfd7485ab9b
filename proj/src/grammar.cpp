#include "unilearn/grammar.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"
#include "unilearn/error.hpp"

namespace unilearn {

using detail::strip_comment;
using detail::trim;

void Rule::validate() const {
  if (rhs.empty() || rhs.size() > 2)
    throw std::invalid_argument("rule must have 1 or 2 RHS categories, got " +
                                std::to_string(rhs.size()));
  if (head && *head >= rhs.size()) throw std::invalid_argument("head index out of range");
  if (functor && *functor >= rhs.size())
    throw std::invalid_argument("functor index out of range");
}

SuperRules super_rules() {
  SuperRules s;
  s.binary.rhs = {Category(), Category()};
  s.binary.origin = RuleOrigin::super;
  s.unary.rhs = {Category()};
  s.unary.origin = RuleOrigin::super;
  return s;
}

Grammar::Key Grammar::key_of(const Rule& rule) {
  Key key;
  key.reserve(rule.rhs.size() + 1);
  key.push_back(rule.lhs);
  key.insert(key.end(), rule.rhs.begin(), rule.rhs.end());
  return key;
}

AddOutcome Grammar::add(Rule rule) {
  rule.validate();
  if (!index_.insert(key_of(rule)).second) return AddOutcome::duplicate;
  rules_.push_back(std::make_shared<const Rule>(std::move(rule)));
  return AddOutcome::added;
}

bool Grammar::contains(const Rule& rule) const { return index_.count(key_of(rule)) > 0; }

Grammar Grammar::without(const Rule& rule) const {
  Grammar out(name_);
  for (const auto& r : rules_)
    if (!r->same_categories(rule)) {
      out.rules_.push_back(r);
      out.index_.insert(key_of(*r));
    }
  return out;
}

std::pair<Grammar, AddOutcome> add_rule(Grammar g, Rule rule) {
  AddOutcome outcome = g.add(std::move(rule));
  return {std::move(g), outcome};
}

// ---------------------------------------------------------------------------

namespace {

std::size_t parse_index(std::string_view value, std::size_t column) {
  std::size_t n = 0;
  if (value.empty()) throw FormatError("expected index", 1, column);
  for (char ch : value) {
    if (ch < '0' || ch > '9') throw FormatError("bad index '" + std::string(value) + "'", 1, column);
    n = n * 10 + static_cast<std::size_t>(ch - '0');
  }
  if (n == 0) throw FormatError("indices are 1-based", 1, column);
  return n - 1;
}

void parse_annotations(std::string_view line, std::size_t open, Rule& rule) {
  auto close = line.find('}', open);
  if (close == std::string_view::npos) throw FormatError("unterminated '{'", 1, open + 1);
  if (!trim(line.substr(close + 1)).empty())
    throw FormatError("trailing text after annotations", 1, close + 2);
  std::string_view body = line.substr(open + 1, close - open - 1);
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    std::string_view item = trim(body.substr(start, comma - start));
    std::size_t column = open + 2 + start;
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw FormatError("expected key=value", 1, column);
      std::string_view key = trim(item.substr(0, eq));
      std::string_view value = trim(item.substr(eq + 1));
      if (key == "head") {
        rule.head = parse_index(value, column);
      } else if (key == "functor") {
        rule.functor = parse_index(value, column);
      } else if (key == "origin") {
        if (value == "seed") rule.origin = RuleOrigin::seed;
        else if (value == "learnt") rule.origin = RuleOrigin::learnt;
        else throw FormatError("unknown origin '" + std::string(value) + "'", 1, column);
      } else {
        throw FormatError("unknown annotation '" + std::string(key) + "'", 1, column);
      }
    }
    if (comma == body.size()) break;
    start = comma + 1;
  }
}

}  // namespace

Rule parse_rule(std::string_view line) {
  Rule rule;
  std::size_t pos = 0;
  rule.lhs = parse_category_at(line, pos);
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  if (line.substr(pos, 2) != "->") throw FormatError("expected '->'", 1, pos + 1);
  pos += 2;
  while (true) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    if (line[pos] == '{') {
      parse_annotations(line, pos, rule);
      break;
    }
    std::size_t at = pos;
    rule.rhs.push_back(parse_category_at(line, pos));
    if (rule.rhs.size() > 2)
      throw FormatError("ternary RHS: rules take 1 or 2 daughters", 1, at + 1);
  }
  if (rule.rhs.empty()) throw FormatError("empty RHS", 1, pos + 1);
  if (rule.head && *rule.head >= rule.rhs.size())
    throw FormatError("head index out of range", 1, 1);
  if (rule.functor && *rule.functor >= rule.rhs.size())
    throw FormatError("functor index out of range", 1, 1);
  return rule;
}

std::string to_string(const Rule& rule) {
  std::string out = to_string(rule.lhs) + " ->";
  for (const auto& c : rule.rhs) out += " " + to_string(c);
  std::vector<std::string> notes;
  if (rule.head) notes.push_back("head=" + std::to_string(*rule.head + 1));
  if (rule.functor) notes.push_back("functor=" + std::to_string(*rule.functor + 1));
  if (rule.origin == RuleOrigin::learnt) notes.push_back("origin=learnt");
  if (!notes.empty()) {
    out += " {";
    for (std::size_t i = 0; i < notes.size(); ++i) out += (i ? ", " : "") + notes[i];
    out += "}";
  }
  return out;
}

Grammar load_grammar(std::string_view text, std::vector<Diagnostic>* warnings) {
  Grammar g;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = strip_comment(lines[i]);
    if (trim(line).empty()) continue;
    Rule rule;
    try {
      rule = parse_rule(line);
    } catch (const FormatError& e) {
      throw FormatError(e.message(), i + 1, e.column());
    }
    if (g.add(std::move(rule)) == AddOutcome::duplicate && warnings)
      warnings->push_back({i + 1, "duplicate rule ignored"});
  }
  return g;
}

std::string save_grammar(const Grammar& g) {
  std::string out;
  for (const auto& r : g.rules()) out += to_string(*r) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

void Lexicon::add(LexEntry entry) {
  Symbol tag = entry.tag;
  if (!entries_.emplace(tag, std::move(entry)).second)
    throw std::invalid_argument("tag '" + to_string(tag) + "' has two lexicon entries");
}

const LexEntry* Lexicon::find(Symbol tag) const {
  auto it = entries_.find(tag);
  return it == entries_.end() ? nullptr : &it->second;
}

const LexEntry& Lexicon::at(Symbol tag, std::size_t position) const {
  if (const LexEntry* e = find(tag)) return *e;
  throw UnknownTagError(to_string(tag), position);
}

std::set<Symbol> Lexicon::tags() const {
  std::set<Symbol> out;
  for (const auto& [tag, entry] : entries_) out.insert(tag);
  return out;
}

Lexicon load_lexicon(std::string_view text) {
  Lexicon lex;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = strip_comment(lines[i]);
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::size_t base = detail::offset_in(line, body);
    try {
      if (body.substr(0, 3) != "tag" || body.size() < 4 ||
          !std::isspace(static_cast<unsigned char>(body[3])))
        throw FormatError("expected 'tag TAG Category'", 1, 1);
      std::size_t pos = 3;
      while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
      std::size_t tag_start = pos;
      while (pos < body.size() && !std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
      LexEntry entry;
      entry.tag = Symbol(body.substr(tag_start, pos - tag_start));
      auto colon = body.find(':', pos);
      std::string_view cat_text = body.substr(pos, colon == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : colon - pos);
      if (trim(cat_text).empty()) throw FormatError("missing category", 1, pos + 1);
      std::size_t cpos = 0;
      try {
        entry.category = parse_category_at(cat_text, cpos);
      } catch (const FormatError& e) {
        throw FormatError(e.message(), 1, pos + e.column());
      }
      if (!trim(cat_text.substr(cpos)).empty())
        throw FormatError("trailing text after category", 1, pos + cpos + 1);
      if (colon != std::string_view::npos) {
        std::string_view type_text = trim(body.substr(colon + 1));
        try {
          entry.semtype = parse_type(type_text);
        } catch (const SemTypeSyntaxError& e) {
          throw FormatError(e.what(), 1, colon + 2);
        }
      }
      try {
        lex.add(std::move(entry));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), 1, tag_start + 1);
      }
    } catch (const FormatError& e) {
      throw FormatError(e.message(), i + 1, base + e.column());
    }
  }
  return lex;
}

std::string save_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& [tag, entry] : lex.entries()) {
    out += "tag " + to_string(tag) + " " + to_string(entry.category);
    if (entry.semtype) out += " : " + to_string(*entry.semtype);
    out += "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace unilearn
