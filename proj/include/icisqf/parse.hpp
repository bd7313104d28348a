#pragma once

#include "icisqf/poly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icisqf {

/// Syntax or name error with the 0-based byte offset where it was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Recursive-descent parser for
///
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' nat)?
///   base     := rational | variable | '(' expr ')'
///   rational := int ('/' nat)?        int := '-'? digits
///
/// Whitespace is ignored; implicit multiplication is rejected.
Poly parse(std::string_view text, const std::vector<std::string>& vars);

}  // namespace icisqf
