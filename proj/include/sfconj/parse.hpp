#pragma once

// Text syntax for words and the JSON presentation descriptor.
//
//   word   := token*            (tokens separated by whitespace)
//   token  := name | NAME | name^k | NAME^k     (k a signed integer)
//
// An upper-case NAME is the inverse of name. "x^0" contributes nothing.

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sfconj/seifert.hpp"
#include "sfconj/words.hpp"

namespace sfconj {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string token, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

Word parse_word(std::string_view text, const Alphabet& alphabet);

/// A mixed word over the base generators and "h", collected into normal form.
FiberedElement parse_element(std::string_view text, const SeifertPresentation& p);

/// {"base": {"kind": "surface"|"torus"|"free", "genus"|"rank": int, "names": [..]},
///  "euler_degree": int, "epsilon": {name: +-1}, "fiber_modulus": int}
SeifertPresentation parse_presentation(const nlohmann::json& j);
SeifertPresentation parse_presentation(std::string_view text);
inline SeifertPresentation parse_presentation(const std::string& text) {
  return parse_presentation(std::string_view(text));
}
inline SeifertPresentation parse_presentation(const char* text) {
  return parse_presentation(std::string_view(text));
}

nlohmann::json to_json(const SeifertPresentation& p);

}  // namespace sfconj
