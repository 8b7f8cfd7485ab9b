#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "unilearn/error.hpp"

namespace unilearn {

// Extensional type: a base type e or t, or a function type <arg,result>.
class SemType {
 public:
  static SemType entity();
  static SemType truth();
  static SemType function(SemType argument, SemType result);

  bool is_base() const noexcept { return node_->argument == nullptr; }
  // Base types only.
  char base() const noexcept { return node_->base; }
  // Function types only.
  SemType argument() const { return SemType(node_->argument); }
  SemType result() const { return SemType(node_->result); }

  friend bool operator==(const SemType& a, const SemType& b);

 private:
  struct Node {
    char base = 0;
    std::shared_ptr<const Node> argument;
    std::shared_ptr<const Node> result;
  };
  explicit SemType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static bool equal(const Node& a, const Node& b);

  std::shared_ptr<const Node> node_;
};

// Function application: <a,b> applied to a gives b.
std::optional<SemType> compose(const SemType& functor, const SemType& argument);

// Grammar: T ::= e | t | <T,T>, no whitespace. Throws SemTypeSyntaxError.
SemType parse_type(std::string_view text);

std::string to_string(const SemType& type);

class SemTypeSyntaxError : public FormatError {
 public:
  SemTypeSyntaxError(const std::string& message, std::size_t offset)
      : FormatError(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace unilearn
