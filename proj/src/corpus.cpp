#include "unilearn/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <random>
#include <stdexcept>

#include "text_util.hpp"
#include "unilearn/error.hpp"
#include "unilearn/grammar.hpp"

namespace unilearn {

using detail::split_lines;
using detail::split_ws;
using detail::trim;

std::string TaggedSentence::raw() const {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

namespace {

bool is_comment_line(std::string_view line) {
  return line.size() == 1 || std::isspace(static_cast<unsigned char>(line[1]));
}

}  // namespace

std::vector<TaggedSentence> load_tagged(std::string_view text, const std::set<Symbol>* tagset) {
  std::vector<TaggedSentence> out;
  std::set<std::string> seen;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    auto fields = split_ws(line);
    TaggedSentence s;
    std::size_t first = 0;
    if (line.front() == '#') {
      if (is_comment_line(line) || fields.size() == 1) continue;
      s.id = std::string(fields[0].substr(1));
      first = 1;
    } else {
      s.id = std::to_string(out.size() + 1);
    }
    for (std::size_t f = first; f < fields.size(); ++f) {
      std::string_view tok = fields[f];
      std::size_t col = detail::offset_in(lines[i], tok) + 1;
      auto us = tok.rfind('_');
      if (us == std::string_view::npos) throw FormatError("token '" + std::string(tok) + "' lacks _TAG", i + 1, col);
      if (us == 0) throw FormatError("token '" + std::string(tok) + "' has an empty word", i + 1, col);
      if (us + 1 == tok.size()) throw FormatError("token '" + std::string(tok) + "' has an empty tag", i + 1, col);
      Symbol tag(tok.substr(us + 1));
      if (tagset && !tagset->count(tag))
        throw FormatError("unknown tag '" + to_string(tag) + "'", i + 1, col + us + 1);
      s.words.emplace_back(tok.substr(0, us));
      s.tags.push_back(tag);
    }
    if (!seen.insert(s.id).second) throw FormatError("duplicate sentence id '" + s.id + "'", i + 1, 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::string save_tagged(std::span<const TaggedSentence> sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += '#' + s.id;
    for (std::size_t i = 0; i < s.size(); ++i) out += ' ' + s.words[i] + '_' + to_string(s.tags[i]);
    out += '\n';
  }
  return out;
}

std::vector<BenchTree> load_trees(std::string_view text) {
  std::vector<BenchTree> out;
  std::set<std::string> seen;
  std::size_t pos = 0;
  std::string pending_id;
  auto line_col = [&](std::size_t at) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + at, '\n'));
    auto nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    std::size_t col = nl == std::string_view::npos || at == 0 ? at + 1 : at - nl;
    return std::pair{line, col};
  };
  while (pos < text.size()) {
    char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (ch == '#') {
      auto eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      if (!is_comment_line(trim(line))) {
        auto fields = split_ws(line);
        if (!pending_id.empty()) {
          auto [l, c] = line_col(pos);
          throw FormatError("id '" + pending_id + "' has no tree", l, c);
        }
        pending_id = std::string(fields[0].substr(1));
        pos += fields[0].size();
        continue;
      }
      pos = eol;
      continue;
    }
    if (ch != '(') {
      auto [l, c] = line_col(pos);
      throw FormatError("expected '(' or '#id'", l, c);
    }
    std::size_t start = pos;
    BenchTree bt;
    bt.tree = parse_bracketed_at(text, pos);
    bt.id = pending_id.empty() ? std::to_string(out.size() + 1) : pending_id;
    pending_id.clear();
    if (!seen.insert(bt.id).second) {
      auto [l, c] = line_col(start);
      throw FormatError("duplicate tree id '" + bt.id + "'", l, c);
    }
    out.push_back(std::move(bt));
  }
  if (!pending_id.empty()) throw FormatError("id '" + pending_id + "' has no tree");
  return out;
}

std::string save_trees(std::span<const BenchTree> trees) {
  std::string out;
  for (const auto& t : trees) out += '#' + t.id + ' ' + to_bracketed(t.tree) + '\n';
  return out;
}

void check_alignment(std::span<const TaggedSentence> sentences, std::span<const BenchTree> trees) {
  std::map<std::string, std::size_t> lengths;
  for (const auto& s : sentences) lengths[s.id] = s.size();
  for (const auto& t : trees) {
    auto it = lengths.find(t.id);
    if (it == lengths.end()) throw FormatError("tree '" + t.id + "' has no sentence");
    std::size_t leaves = t.tree.leaf_count();
    if (leaves != it->second)
      throw FormatError("sentence '" + t.id + "': tree has " + std::to_string(leaves) +
                        " leaves for " + std::to_string(it->second) + " tokens");
  }
}

CorpusSplit make_split(std::span<const std::string> ids, const SplitSizes& sizes,
                       std::uint64_t seed) {
  std::size_t need = sizes.pretrain + sizes.train + sizes.test;
  if (need > ids.size())
    throw std::invalid_argument("split needs " + std::to_string(need) + " sentences, corpus has " +
                                std::to_string(ids.size()));
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Fisher-Yates with an explicit bounded draw: std::shuffle and
  // uniform_int_distribution differ across standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uint64_t bound = i;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = rng();
    while (r >= limit);
    std::swap(order[i - 1], order[r % bound]);
  }
  auto slice = [&](std::size_t from, std::size_t n) {
    std::vector<std::size_t> idx(order.begin() + from, order.begin() + from + n);
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> out;
    for (auto k : idx) out.push_back(ids[k]);
    return out;
  };
  CorpusSplit split;
  split.pretrain = slice(0, sizes.pretrain);
  split.train = slice(sizes.pretrain, sizes.train);
  split.test = slice(sizes.pretrain + sizes.train, sizes.test);
  return split;
}

CorpusSplit load_split(std::string_view text) {
  CorpusSplit split;
  std::vector<std::string>* current = nullptr;
  std::set<std::string> sections;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(detail::strip_comment(lines[i]));
    if (line.empty()) continue;
    if (line.front() == '[') {
      std::string name(line);
      if (name == "[pretrain]") current = &split.pretrain;
      else if (name == "[train]") current = &split.train;
      else if (name == "[test]") current = &split.test;
      else throw FormatError("unknown section " + name, i + 1, 1);
      if (!sections.insert(name).second) throw FormatError("repeated section " + name, i + 1, 1);
      continue;
    }
    if (!current) throw FormatError("id outside a section", i + 1, 1);
    for (auto id : split_ws(line)) current->emplace_back(id);
  }
  return split;
}

std::string save_split(const CorpusSplit& split) {
  std::string out;
  auto section = [&](const char* name, const std::vector<std::string>& ids) {
    out += name;
    out += '\n';
    for (const auto& id : ids) out += id + '\n';
  };
  section("[pretrain]", split.pretrain);
  section("[train]", split.train);
  section("[test]", split.test);
  return out;
}

void check_split(const CorpusSplit& split, const std::set<std::string>& known) {
  std::set<std::string> seen;
  for (const auto* part : {&split.pretrain, &split.train, &split.test}) {
    for (const auto& id : *part) {
      if (!known.count(id)) throw FormatError("split names unknown sentence '" + id + "'");
      if (!seen.insert(id).second) throw FormatError("sentence '" + id + "' appears twice in split");
    }
  }
}

const TaggedSentence& Corpus::sentence(const std::string& id) const {
  for (const auto& s : sentences)
    if (s.id == id) return s;
  throw std::out_of_range("no sentence '" + id + "'");
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  for (const auto& s : sentences) out.push_back(s.id);
  return out;
}

std::vector<TaggedSentence> Corpus::select(std::span<const std::string> ids) const {
  std::vector<TaggedSentence> out;
  for (const auto& id : ids) out.push_back(sentence(id));
  return out;
}

Corpus load_corpus_dir(const std::string& dir, const std::set<Symbol>* tagset) {
  namespace fs = std::filesystem;
  std::map<std::string, std::vector<fs::path>> found;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) found[entry.path().extension().string()].push_back(entry.path());
  auto one = [&](const std::string& ext, bool required) -> std::string {
    auto& v = found[ext];
    if (v.empty()) {
      if (required) throw std::runtime_error("no " + ext + " file in " + dir);
      return {};
    }
    if (v.size() > 1) throw std::runtime_error("several " + ext + " files in " + dir);
    return v.front().string();
  };
  auto wrap = [](const std::string& path, auto&& fn) {
    try {
      return fn();
    } catch (const FormatError& e) {
      throw FormatError(path + ": " + e.message(), e.line(), e.column());
    }
  };
  Corpus c;
  std::string tag_path = one(".tag", true);
  std::string tre_path = one(".tre", true);
  std::string split_path = one(".split", false);
  c.sentences = wrap(tag_path, [&] { return load_tagged(read_file(tag_path), tagset); });
  auto trees = wrap(tre_path, [&] { return load_trees(read_file(tre_path)); });
  wrap(tre_path, [&] {
    check_alignment(c.sentences, trees);
    return 0;
  });
  for (auto& t : trees) c.trees.emplace(t.id, std::move(t.tree));
  if (!split_path.empty()) {
    c.split = wrap(split_path, [&] { return load_split(read_file(split_path)); });
    auto ids = c.ids();
    wrap(split_path, [&] {
      check_split(c.split, {ids.begin(), ids.end()});
      return 0;
    });
    c.has_split = true;
  }
  return c;
}

}  // namespace unilearn
