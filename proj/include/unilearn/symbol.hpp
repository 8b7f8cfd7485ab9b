#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace unilearn {

// Interned, case-sensitive name. Equality is identity of the interned string;
// ordering is lexicographic so canonical forms do not depend on intern order.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view text);

  std::string_view str() const noexcept { return *text_; }
  bool empty() const noexcept { return text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return a.str() <=> b.str();
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_;
};

inline std::string to_string(Symbol s) { return std::string(s.str()); }

}  // namespace unilearn

template <>
struct std::hash<unilearn::Symbol> {
  std::size_t operator()(unilearn::Symbol s) const noexcept { return s.hash(); }
};
