#include "unilearn/symbol.hpp"

#include <mutex>
#include <unordered_set>

#include "unilearn/error.hpp"

namespace unilearn {

namespace {

struct TransparentHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

struct SymbolTable {
  std::mutex mutex;
  // Node-based: element addresses survive rehashing.
  std::unordered_set<std::string, TransparentHash, std::equal_to<>> names;

  const std::string* intern(std::string_view text) {
    std::lock_guard lock(mutex);
    auto it = names.find(text);
    if (it == names.end()) it = names.emplace(text).first;
    return &*it;
  }
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Symbol::Symbol() : text_(table().intern("")) {}

Symbol::Symbol(std::string_view text) : text_(table().intern(text)) {}

FormatError::FormatError(const std::string& message, std::size_t line,
                         std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

UnknownTagError::UnknownTagError(const std::string& tag, std::size_t position)
    : std::runtime_error("unknown tag '" + tag + "' at token " +
                         std::to_string(position + 1)),
      tag_(tag),
      position_(position) {}

}  // namespace unilearn
