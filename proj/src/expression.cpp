#include "symthermo/expression.hpp"

#include <cctype>
#include <charconv>

namespace symthermo {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, LParen, RParen, End };
  Kind kind = Kind::End;
  double number = 0.0;
  std::string ident;
  char op = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      current_ = Token{};
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{}) {
        throw ConfigError("expression", "malformed numeric literal at position " + std::to_string(pos_) +
                                            " in '" + text_ + "'");
      }
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      Token t{};
      t.kind = Token::Kind::Number;
      t.number = value;
      current_ = t;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      Token t{};
      t.kind = Token::Kind::Ident;
      t.ident = text_.substr(start, pos_ - start);
      current_ = t;
      return;
    }
    if (c == '(') {
      ++pos_;
      Token t{};
      t.kind = Token::Kind::LParen;
      current_ = t;
      return;
    }
    if (c == ')') {
      ++pos_;
      Token t{};
      t.kind = Token::Kind::RParen;
      current_ = t;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      ++pos_;
      Token t{};
      t.kind = Token::Kind::Op;
      t.op = c;
      current_ = t;
      return;
    }
    throw ConfigError("expression",
                      std::string("unexpected character '") + c + "' in '" + text_ + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_{};
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables), lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    if (lex_.peek().kind != Token::Kind::End) {
      throw ConfigError("expression", "trailing input after a complete expression in '" + text_ + "'");
    }
    return e;
  }

 private:
  // sum   := product (('+'|'-') product)*
  // product := unary (('*'|'/') unary)*
  // unary := '-' unary | power
  // power := primary ('^' unary)?
  // primary := number | ident | ident '(' sum ')' | '(' sum ')'
  ExprPtr sum() {
    ExprPtr e = product();
    while (is_op('+') || is_op('-')) {
      const char op = lex_.take().op;
      e = make(ExprBin{op, e, product()});
    }
    return e;
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (is_op('*') || is_op('/')) {
      const char op = lex_.take().op;
      e = make(ExprBin{op, e, unary()});
    }
    return e;
  }

  ExprPtr unary() {
    if (is_op('-')) {
      lex_.take();
      return make(ExprNeg{unary()});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr e = primary();
    if (is_op('^')) {
      lex_.take();
      e = make(ExprBin{'^', e, unary()});
    }
    return e;
  }

  ExprPtr primary() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Number) return make(ExprNum{t.number});
    if (t.kind == Token::Kind::LParen) {
      ExprPtr e = sum();
      expect_rparen();
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.ident == "exp" || t.ident == "ln") {
        if (lex_.peek().kind != Token::Kind::LParen) {
          throw ConfigError("expression", "'" + t.ident + "' needs a parenthesized argument in '" + text_ + "'");
        }
        lex_.take();
        ExprPtr arg = sum();
        expect_rparen();
        return make(ExprCall{t.ident == "exp", arg});
      }
      for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == t.ident) return make(ExprVar{i});
      }
      std::string known;
      for (const auto& v : variables_) known += (known.empty() ? "" : ", ") + v;
      throw ConfigError("expression", "unknown identifier '" + t.ident + "' in '" + text_ +
                                          "' (variables: " + known + "; functions: exp, ln)");
    }
    throw ConfigError("expression", "expected a value in '" + text_ + "'");
  }

  void expect_rparen() {
    if (lex_.take().kind != Token::Kind::RParen) {
      throw ConfigError("expression", "missing ')' in '" + text_ + "'");
    }
  }

  bool is_op(char c) const { return lex_.peek().kind == Token::Kind::Op && lex_.peek().op == c; }

  template <class Node>
  static ExprPtr make(Node&& node) {
    return std::make_shared<const Expr>(Expr{std::forward<Node>(node)});
  }

  const std::string& text_;
  const std::vector<std::string>& variables_;
  Lexer lex_;
};

}  // namespace

ExprPtr parse_expression(const std::string& text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

}  // namespace symthermo
