#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unilearn {

// Malformed text input. Line and column are 1-based, 0 when not applicable.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& message, std::size_t line = 0,
                       std::size_t column = 0);

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// A tag with no lexicon entry (or outside a declared tagset).
class UnknownTagError : public std::runtime_error {
 public:
  UnknownTagError(const std::string& tag, std::size_t position);

  const std::string& tag() const noexcept { return tag_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string tag_;
  std::size_t position_;
};

}  // namespace unilearn
