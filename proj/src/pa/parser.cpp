#include "pa/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace pa {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Ident,
  Number,
  Le,
  Lt,
  Ge,
  Gt,
  Eq,
  Ne,
  Bang,
  Amp,
  Pipe,
  Arrow,
  LParen,
  RParen,
  Dot,
  Comma,
  Plus,
  Minus,
  Star,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back(Token{k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                src[j] == '\''))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Number, j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "<=") { push(Tok::Le, 2); continue; }
    if (two == ">=") { push(Tok::Ge, 2); continue; }
    if (two == "!=") { push(Tok::Ne, 2); continue; }
    if (two == "->") { push(Tok::Arrow, 2); continue; }
    switch (c) {
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '=': push(Tok::Eq, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Pipe, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "true" || s == "false" || s == "mod";
}

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& options)
      : tokens_(tokenize(src)), options_(options) {}

  Formula parse_all() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  LinearTerm parse_term_all() {
    LinearTerm t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what, peek());
    return next();
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), formula());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::Pipe)) parts.push_back(conjunction());
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::Amp)) parts.push_back(unary());
    return Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (accept(Tok::Bang)) return Formula::negation(unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "exists" || t.text == "forall")) {
      bool ex = next().text == "exists";
      std::vector<Var> vars;
      do {
        Token name = expect(Tok::Ident, "bound variable name");
        if (is_keyword(name.text)) fail("keyword used as variable", name);
        vars.push_back(Var::named(name.text));
      } while (accept(Tok::Comma));
      expect(Tok::Dot, "'.' after quantified variables");
      for (Var v : vars) scope_.push_back(v.name());
      Formula body = formula();
      scope_.resize(scope_.size() - vars.size());
      return ex ? Formula::exists(vars, std::move(body)) : Formula::forall(vars, std::move(body));
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "true") {
      next();
      return Formula::top();
    }
    if (t.kind == Tok::Ident && t.text == "false") {
      next();
      return Formula::bottom();
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return relation();
  }

  Formula relation() {
    LinearTerm lhs = term();
    Token op = next();
    switch (op.kind) {
      case Tok::Le:
      case Tok::Lt:
      case Tok::Ge:
      case Tok::Gt:
      case Tok::Eq:
      case Tok::Ne:
        break;
      default:
        fail("expected a relation (<=, <, >=, >, =, !=)", op);
    }
    LinearTerm rhs = term();
    if (peek().kind == Tok::LParen && peek(1).kind == Tok::Ident && peek(1).text == "mod") {
      if (op.kind != Tok::Eq && op.kind != Tok::Ne) fail("(mod p) requires = or !=", op);
      next();
      next();
      Token p = expect(Tok::Number, "modulus");
      Integer modulus(p.text);
      expect(Tok::RParen, "')' after modulus");
      if (modulus <= 0) fail("modulus must be positive", p);
      Formula c = Formula::cong(modulus, lhs - rhs);
      return op.kind == Tok::Eq ? c : Formula::negation(c);
    }
    switch (op.kind) {
      case Tok::Le:
        return Formula::leq(lhs - rhs);
      case Tok::Lt:
        return Formula::leq(lhs - rhs + Integer(1));
      case Tok::Ge:
        return Formula::leq(rhs - lhs);
      case Tok::Gt:
        return Formula::leq(rhs - lhs + Integer(1));
      case Tok::Eq:
        return Formula::equal(lhs, rhs);
      default:
        return Formula::negation(Formula::equal(lhs, rhs));
    }
  }

  LinearTerm term() {
    LinearTerm t;
    bool negative = false;
    if (accept(Tok::Minus)) {
      negative = true;
    } else {
      accept(Tok::Plus);
    }
    for (;;) {
      LinearTerm s = summand();
      if (negative) {
        t -= s;
      } else {
        t += s;
      }
      if (accept(Tok::Plus)) {
        negative = false;
      } else if (accept(Tok::Minus)) {
        negative = true;
      } else {
        return t;
      }
    }
  }

  LinearTerm summand() {
    Token first = next();
    if (first.kind == Tok::Number) {
      Integer k(first.text);
      if (accept(Tok::Star)) {
        bool neg = accept(Tok::Minus);
        Var v = variable(expect(Tok::Ident, "variable after '*'"));
        return LinearTerm(v, neg ? Integer(-k) : k);
      }
      return LinearTerm(k);
    }
    if (first.kind == Tok::Ident) {
      Var v = variable(first);
      if (accept(Tok::Star)) {
        bool neg = accept(Tok::Minus);
        Token k = expect(Tok::Number, "integer literal after '*'");
        Integer c(k.text);
        return LinearTerm(v, neg ? Integer(-c) : c);
      }
      return LinearTerm(v, 1);
    }
    fail("expected a term", first);
  }

  Var variable(const Token& t) {
    if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'", t);
    if (options_.strict_vars) {
      bool known = std::find(scope_.begin(), scope_.end(), t.text) != scope_.end() ||
                   std::find(options_.declared.begin(), options_.declared.end(), t.text) !=
                       options_.declared.end();
      if (!known) fail("unknown identifier '" + t.text + "'", t);
    }
    return Var::named(t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse_all();
}

LinearTerm parse_term(std::string_view text) {
  ParseOptions options;
  return Parser(text, options).parse_term_all();
}

}  // namespace pa
