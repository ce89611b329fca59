#pragma once

#include "pa/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pa {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  /// Reject identifiers that are neither in `declared` nor bound by an
  /// enclosing quantifier.
  bool strict_vars = false;
  std::vector<std::string> declared;
};

/// Parses the formula grammar:
///
///   formula  := disj ('->' formula)?
///   disj     := conj ('|' conj)*
///   conj     := unary ('&' unary)*
///   unary    := '!' unary | ('exists'|'forall') ident (',' ident)* '.' formula | primary
///   primary  := 'true' | 'false' | '(' formula ')' | term rel term ['(' 'mod' int ')']
///   rel      := '<=' | '<' | '>=' | '>' | '=' | '!='
///
/// Terms are sums of integer literals, variables and literal*variable
/// products. '#' starts a comment running to the end of the line.
[[nodiscard]] Formula parse(std::string_view text, const ParseOptions& options = {});

/// Parses a bare linear term such as "3*x - y + 2".
[[nodiscard]] LinearTerm parse_term(std::string_view text);

}  // namespace pa
