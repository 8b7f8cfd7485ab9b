#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unilearn/symbol.hpp"

namespace unilearn {

// The two distinguished features. Both are optional on any category.
Symbol cat_feature();
Symbol bar_feature();

// A flat bundle of feature=value pairs with atomic values. The empty
// bundle is the maximally general category. Features are kept sorted by
// name, so equality and ordering are canonical.
class Category {
 public:
  using Feature = std::pair<Symbol, Symbol>;

  Category() = default;
  // Throws std::invalid_argument when a feature name repeats.
  explicit Category(std::vector<Feature> features);
  static Category of(
      std::initializer_list<std::pair<std::string_view, std::string_view>> features);

  std::optional<Symbol> get(Symbol feature) const;
  bool has(Symbol feature) const { return get(feature).has_value(); }
  bool empty() const noexcept { return features_.empty(); }
  std::size_t size() const noexcept { return features_.size(); }
  std::span<const Feature> features() const noexcept { return features_; }

  // Copy with feature set to value, replacing any previous value.
  Category with(Symbol feature, Symbol value) const;
  Category without(Symbol feature) const;

  // True when every pair of *this also appears in other.
  bool subsumes(const Category& other) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Category&, const Category&) = default;
  friend auto operator<=>(const Category&, const Category&) = default;

 private:
  std::vector<Feature> features_;
};

// Union of both bundles, or nullopt when some shared feature disagrees.
std::optional<Category> unify(const Category& a, const Category& b);

// Display label from cat and bar via the projection table ("NP", "N1",
// "N", "Det", "S"); "?" when cat is uninstantiated.
std::string label_of(const Category& c);

// Inverse of label_of: the cat/bar bundle a label stands for. Labels not
// in the projection table give {cat=label} with no bar.
Category category_from_label(std::string_view label);

// Textual form `Label[f=v, ...]`, `[f=v]`, `[]` or a bare `Label`.
// Throws FormatError (column relative to text) on bad syntax, duplicate
// features, or a bar value outside {0,1,2}.
Category parse_category(std::string_view text);

// Parses one category starting at pos, advancing pos past it.
Category parse_category_at(std::string_view text, std::size_t& pos);

// Canonical text; parse_category(to_string(c)) == c.
std::string to_string(const Category& c);

}  // namespace unilearn

template <>
struct std::hash<unilearn::Category> {
  std::size_t operator()(const unilearn::Category& c) const noexcept { return c.hash(); }
};
