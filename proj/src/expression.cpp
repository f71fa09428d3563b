#include "cxgeo/expression.hpp"

#include "cxgeo/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace cxgeo {

namespace {

using Node = Expression::Node;
using Kind = Expression::Kind;
using NodePtr = std::shared_ptr<const Node>;

constexpr int kMaxDepth = 200;

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string_view text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token tok{Tok::end, {}, 0.0, line_, column_};
    if (pos_ >= src_.size()) return tok;
    const char c = src_[pos_];
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(tok, start);
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      tok.kind = Tok::ident;
      tok.text = src_.substr(start, pos_ - start);
      return tok;
    }
    advance();
    tok.text = src_.substr(start, 1);
    switch (c) {
      case '+': tok.kind = Tok::plus; break;
      case '-': tok.kind = Tok::minus; break;
      case '*': tok.kind = Tok::star; break;
      case '/': tok.kind = Tok::slash; break;
      case '^': tok.kind = Tok::caret; break;
      case '(': tok.kind = Tok::lparen; break;
      case ')': tok.kind = Tok::rparen; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string(1, c)
                                : "\\x" + std::to_string(static_cast<unsigned char>(c));
        throw SyntaxError(tok.line, tok.column, "unexpected character '" + shown + "'");
      }
    }
    return tok;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  bool digits() {
    bool any = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      advance();
      any = true;
    }
    return any;
  }

  void lex_number(Token& tok, std::size_t start) {
    bool mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      mantissa = digits() || mantissa;
    }
    if (!mantissa) throw SyntaxError(tok.line, tok.column, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (!digits()) throw SyntaxError(line_, column_, "malformed exponent");
    }
    tok.kind = Tok::number;
    tok.text = src_.substr(start, pos_ - start);
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
    if (ec != std::errc() || !std::isfinite(tok.number))
      throw SyntaxError(tok.line, tok.column, "number out of range");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

NodePtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = v;
  return n;
}

NodePtr make_unary(Kind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, int dimension) : lexer_(src), dimension_(dimension) { shift(); }

  NodePtr parse() {
    if (cur_.kind == Tok::end) throw SyntaxError(cur_.line, cur_.column, "empty expression");
    NodePtr root = expression();
    if (cur_.kind != Tok::end)
      throw SyntaxError(cur_.line, cur_.column, "unexpected '" + std::string(cur_.text) + "'");
    return root;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth)
        throw SyntaxError(p_.cur_.line, p_.cur_.column, "expression nested too deeply");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  void shift() { cur_ = lexer_.next(); }

  NodePtr expression() {
    DepthGuard guard(*this);
    NodePtr lhs = term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      const Kind k = cur_.kind == Tok::plus ? Kind::add : Kind::subtract;
      shift();
      lhs = make_binary(k, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      const Kind k = cur_.kind == Tok::star ? Kind::multiply : Kind::divide;
      shift();
      lhs = make_binary(k, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    DepthGuard guard(*this);
    if (cur_.kind == Tok::minus) {
      shift();
      return make_unary(Kind::negate, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (cur_.kind == Tok::caret) {
      shift();
      return make_binary(Kind::power, base, unary());
    }
    return base;
  }

  NodePtr primary() {
    const Token tok = cur_;
    switch (tok.kind) {
      case Tok::number:
        shift();
        return make_constant(tok.number);
      case Tok::lparen: {
        shift();
        NodePtr inner = expression();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident:
        shift();
        return identifier(tok);
      case Tok::end:
        throw SyntaxError(tok.line, tok.column, "unexpected end of expression");
      default:
        throw SyntaxError(tok.line, tok.column, "unexpected '" + std::string(tok.text) + "'");
    }
  }

  NodePtr identifier(const Token& tok) {
    const std::string_view name = tok.text;
    static constexpr std::pair<std::string_view, Expression::Function> functions[] = {
        {"sin", Expression::Function::sin},   {"cos", Expression::Function::cos},
        {"exp", Expression::Function::exp},   {"log", Expression::Function::log},
        {"sqrt", Expression::Function::sqrt}, {"tanh", Expression::Function::tanh}};
    for (const auto& [fname, f] : functions) {
      if (name == fname) {
        expect(Tok::lparen, "'(' after function name");
        auto n = std::make_shared<Node>();
        n->kind = Kind::function;
        n->function = f;
        n->lhs = expression();
        expect(Tok::rparen, "')'");
        return n;
      }
    }
    if (name == "pi") return make_constant(std::numbers::pi);

    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 't')) {
      bool numeric = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        numeric = numeric && std::isdigit(static_cast<unsigned char>(name[i]));
      if (numeric) {
        int index = 0;
        const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
        if (ec != std::errc() || index < 1 || index > dimension_)
          throw IndexOutOfRange("variable '" + std::string(name) + "' at line " +
                                std::to_string(tok.line) + ", column " + std::to_string(tok.column) +
                                " is outside 1.." + std::to_string(dimension_));
        auto n = std::make_shared<Node>();
        n->kind = name[0] == 'x' ? Kind::x_var : Kind::t_var;
        n->index = index - 1;
        return n;
      }
    }
    throw UnknownIdentifier("'" + std::string(name) + "' at line " + std::to_string(tok.line) +
                            ", column " + std::to_string(tok.column));
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw SyntaxError(cur_.line, cur_.column, std::string("expected ") + what);
    shift();
  }

  Lexer lexer_;
  int dimension_;
  Token cur_{Tok::end, {}, 0.0, 1, 1};
  int depth_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " produced a non-finite value");
  return v;
}

double eval(const Node& n, const Vector& x, const Vector& t) {
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::x_var: return x(n.index);
    case Kind::t_var: return t(n.index);
    case Kind::negate: return -eval(*n.lhs, x, t);
    case Kind::add: return checked(eval(*n.lhs, x, t) + eval(*n.rhs, x, t), "addition");
    case Kind::subtract: return checked(eval(*n.lhs, x, t) - eval(*n.rhs, x, t), "subtraction");
    case Kind::multiply: return checked(eval(*n.lhs, x, t) * eval(*n.rhs, x, t), "multiplication");
    case Kind::divide: {
      const double den = eval(*n.rhs, x, t);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(eval(*n.lhs, x, t) / den, "division");
    }
    case Kind::power: return checked(std::pow(eval(*n.lhs, x, t), eval(*n.rhs, x, t)), "power");
    case Kind::function: {
      const double a = eval(*n.lhs, x, t);
      switch (n.function) {
        case Expression::Function::sin: return std::sin(a);
        case Expression::Function::cos: return std::cos(a);
        case Expression::Function::exp: return checked(std::exp(a), "exp");
        case Expression::Function::log:
          if (a <= 0.0) throw DomainError("log of non-positive argument");
          return std::log(a);
        case Expression::Function::sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative argument");
          return std::sqrt(a);
        case Expression::Function::tanh: return std::tanh(a);
      }
    }
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const char* function_name(Expression::Function f) {
  switch (f) {
    case Expression::Function::sin: return "sin";
    case Expression::Function::cos: return "cos";
    case Expression::Function::exp: return "exp";
    case Expression::Function::log: return "log";
    case Expression::Function::sqrt: return "sqrt";
    case Expression::Function::tanh: return "tanh";
  }
  return "?";
}

std::string print(const Node& n) {
  switch (n.kind) {
    case Kind::constant: return format_number(n.value);
    case Kind::x_var: return "x" + std::to_string(n.index + 1);
    case Kind::t_var: return "t" + std::to_string(n.index + 1);
    case Kind::negate: return "(-" + print(*n.lhs) + ")";
    case Kind::add: return "(" + print(*n.lhs) + " + " + print(*n.rhs) + ")";
    case Kind::subtract: return "(" + print(*n.lhs) + " - " + print(*n.rhs) + ")";
    case Kind::multiply: return "(" + print(*n.lhs) + " * " + print(*n.rhs) + ")";
    case Kind::divide: return "(" + print(*n.lhs) + " / " + print(*n.rhs) + ")";
    case Kind::power: return "(" + print(*n.lhs) + " ^ " + print(*n.rhs) + ")";
    case Kind::function: return std::string(function_name(n.function)) + "(" + print(*n.lhs) + ")";
  }
  return {};
}

template <typename Fn>
void visit(const Node& n, Fn&& fn) {
  fn(n);
  if (n.lhs) visit(*n.lhs, fn);
  if (n.rhs) visit(*n.rhs, fn);
}

}  // namespace

Expression Expression::constant(double v) { return Expression(make_constant(v)); }

double Expression::evaluate(const Vector& x, const Vector& t) const {
  if (!root_) return 0.0;
  return eval(*root_, x, t);
}

std::string Expression::to_string() const { return root_ ? print(*root_) : std::string("0"); }

int Expression::max_index() const {
  int out = 0;
  if (root_)
    visit(*root_, [&out](const Node& n) {
      if (n.kind == Kind::x_var || n.kind == Kind::t_var) out = std::max(out, n.index + 1);
    });
  return out;
}

bool Expression::depends_on_t() const {
  bool out = false;
  if (root_) visit(*root_, [&out](const Node& n) { out = out || n.kind == Kind::t_var; });
  return out;
}

Expression parse_expression(std::string_view src, int dimension) {
  return Expression(Parser(src, dimension).parse());
}

}  // namespace cxgeo
