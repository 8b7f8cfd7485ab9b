#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/label_tree.hpp"
#include "unilearn/symbol.hpp"

namespace unilearn {

struct TaggedSentence {
  std::string id;
  std::vector<std::string> words;
  std::vector<Symbol> tags;

  std::size_t size() const noexcept { return tags.size(); }
  std::string raw() const;  // words joined by single spaces
};

// One sentence per line of `word_TAG` tokens (split at the last underscore),
// optionally led by `#id`. A line starting `# ` or a lone `#` is a comment.
// Sentences without an id are numbered by position from 1. With a tagset,
// tags outside it are errors.
std::vector<TaggedSentence> load_tagged(std::string_view text,
                                        const std::set<Symbol>* tagset = nullptr);
std::string save_tagged(std::span<const TaggedSentence> sentences);

struct BenchTree {
  std::string id;
  LabelTree tree;
};

// Bracketed trees, each optionally preceded by `#id`; a tree may span lines.
std::vector<BenchTree> load_trees(std::string_view text);
std::string save_trees(std::span<const BenchTree> trees);

// Every tree names a known sentence and has one leaf per token. Throws
// FormatError naming the offending id.
void check_alignment(std::span<const TaggedSentence> sentences, std::span<const BenchTree> trees);

struct CorpusSplit {
  std::vector<std::string> pretrain;
  std::vector<std::string> train;
  std::vector<std::string> test;
};

struct SplitSizes {
  std::size_t pretrain = 19;
  std::size_t train = 60;
  std::size_t test = 60;
};

// Seeded shuffle, then consecutive slices; each slice keeps the input order.
// Throws std::invalid_argument when the sizes exceed the id count.
CorpusSplit make_split(std::span<const std::string> ids, const SplitSizes& sizes,
                       std::uint64_t seed);

// `[pretrain]`, `[train]`, `[test]` sections of whitespace-separated ids.
CorpusSplit load_split(std::string_view text);
std::string save_split(const CorpusSplit& split);

// Throws FormatError on overlap between sections or ids outside `known`.
void check_split(const CorpusSplit& split, const std::set<std::string>& known);

struct Corpus {
  std::vector<TaggedSentence> sentences;
  std::map<std::string, LabelTree> trees;
  CorpusSplit split;
  bool has_split = false;

  const TaggedSentence& sentence(const std::string& id) const;
  std::vector<std::string> ids() const;
  std::vector<TaggedSentence> select(std::span<const std::string> ids) const;
};

// Reads the single .tag, .tre and (optional) .split file in dir.
Corpus load_corpus_dir(const std::string& dir, const std::set<Symbol>* tagset = nullptr);

}  // namespace unilearn
