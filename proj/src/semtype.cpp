#include "unilearn/semtype.hpp"

namespace unilearn {

SemType SemType::entity() {
  static const auto node = std::make_shared<const Node>(Node{'e', nullptr, nullptr});
  return SemType(node);
}

SemType SemType::truth() {
  static const auto node = std::make_shared<const Node>(Node{'t', nullptr, nullptr});
  return SemType(node);
}

SemType SemType::function(SemType argument, SemType result) {
  return SemType(std::make_shared<const Node>(
      Node{0, std::move(argument.node_), std::move(result.node_)}));
}

bool SemType::equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if ((a.argument == nullptr) != (b.argument == nullptr)) return false;
  if (!a.argument) return a.base == b.base;
  return equal(*a.argument, *b.argument) && equal(*a.result, *b.result);
}

bool operator==(const SemType& a, const SemType& b) { return SemType::equal(*a.node_, *b.node_); }

std::optional<SemType> compose(const SemType& functor, const SemType& argument) {
  if (functor.is_base()) return std::nullopt;
  if (!(functor.argument() == argument)) return std::nullopt;
  return functor.result();
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  SemType parse() {
    SemType t = parse_one();
    if (pos_ != text_.size()) throw SemTypeSyntaxError("trailing input", pos_);
    return t;
  }

 private:
  SemType parse_one() {
    if (pos_ >= text_.size()) throw SemTypeSyntaxError("unexpected end of type", pos_);
    char ch = text_[pos_];
    if (ch == 'e') {
      ++pos_;
      return SemType::entity();
    }
    if (ch == 't') {
      ++pos_;
      return SemType::truth();
    }
    if (ch != '<') throw SemTypeSyntaxError(std::string("unexpected '") + ch + "'", pos_);
    ++pos_;
    SemType argument = parse_one();
    expect(',');
    SemType result = parse_one();
    expect('>');
    return SemType::function(std::move(argument), std::move(result));
  }

  void expect(char ch) {
    if (pos_ >= text_.size())
      throw SemTypeSyntaxError(std::string("expected '") + ch + "' before end of type", pos_);
    if (text_[pos_] != ch)
      throw SemTypeSyntaxError(std::string("expected '") + ch + "'", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const SemType& type, std::string& out) {
  if (type.is_base()) {
    out += type.base();
    return;
  }
  out += '<';
  print(type.argument(), out);
  out += ',';
  print(type.result(), out);
  out += '>';
}

}  // namespace

SemType parse_type(std::string_view text) { return TypeParser(text).parse(); }

std::string to_string(const SemType& type) {
  std::string out;
  print(type, out);
  return out;
}

}  // namespace unilearn
