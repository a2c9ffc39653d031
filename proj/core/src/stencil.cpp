#include "quarkflow/stencil.hpp"

#include <cctype>
#include <optional>

namespace quarkflow {

std::string_view shift_name(ShiftDir dir) {
  switch (dir) {
    case ShiftDir::Im: return "im";
    case ShiftDir::Ip: return "ip";
    case ShiftDir::Jm: return "jm";
    case ShiftDir::Jp: return "jp";
    case ShiftDir::Km: return "km";
    case ShiftDir::Kp: return "kp";
    case ShiftDir::SymI: return "isym";
    case ShiftDir::SymJ: return "jsym";
    case ShiftDir::SymK: return "ksym";
  }
  return "?";
}

ExprId ExprPool::intern(ExprNode node) {
  std::string key;
  key += std::to_string(static_cast<int>(node.kind));
  key += '|';
  key += std::to_string(static_cast<int>(node.dir));
  key += '|';
  key += std::to_string(node.value.num());
  key += '/';
  key += std::to_string(node.value.den());
  key += '|';
  key += node.name;
  key += '|';
  key += std::to_string(node.lhs);
  key += ',';
  key += std::to_string(node.rhs);
  auto [it, inserted] = intern_.try_emplace(key, static_cast<ExprId>(nodes_.size()));
  if (inserted) nodes_.push_back(std::move(node));
  return it->second;
}

ExprId ExprPool::input(const std::string& name) {
  ExprNode node;
  node.kind = ExprKind::Input;
  node.name = name;
  return intern(std::move(node));
}

ExprId ExprPool::constant(Rational value) {
  ExprNode node;
  node.kind = ExprKind::Constant;
  node.value = value;
  return intern(std::move(node));
}

ExprId ExprPool::negate(ExprId a) {
  if (nodes_[a].kind == ExprKind::Constant) return constant(-nodes_[a].value);
  ExprNode node;
  node.kind = ExprKind::Negate;
  node.lhs = a;
  return intern(std::move(node));
}

ExprId ExprPool::binary(ExprKind kind, ExprId a, ExprId b) {
  const ExprNode& na = nodes_[a];
  const ExprNode& nb = nodes_[b];
  if (na.kind == ExprKind::Constant && nb.kind == ExprKind::Constant) {
    switch (kind) {
      case ExprKind::Add: return constant(na.value + nb.value);
      case ExprKind::Sub: return constant(na.value - nb.value);
      case ExprKind::Mul: return constant(na.value * nb.value);
      case ExprKind::Div:
        if (nb.value.is_zero())
          throw ParseError(0, "division by zero constant");
        return constant(na.value / nb.value);
      default: break;
    }
  }
  if (kind == ExprKind::Div && nb.kind == ExprKind::Constant &&
      nb.value.is_zero())
    throw ParseError(0, "division by zero constant");
  ExprNode node;
  node.kind = kind;
  node.lhs = a;
  node.rhs = b;
  return intern(std::move(node));
}

ExprId ExprPool::add(ExprId a, ExprId b) { return binary(ExprKind::Add, a, b); }
ExprId ExprPool::sub(ExprId a, ExprId b) { return binary(ExprKind::Sub, a, b); }
ExprId ExprPool::mul(ExprId a, ExprId b) { return binary(ExprKind::Mul, a, b); }
ExprId ExprPool::div(ExprId a, ExprId b) { return binary(ExprKind::Div, a, b); }

ExprId ExprPool::shift(ShiftDir dir, ExprId a) {
  if (nodes_[a].kind == ExprKind::Constant) return a;  // constants are uniform
  ExprNode node;
  node.kind = ExprKind::Shift;
  node.dir = dir;
  node.lhs = a;
  return intern(std::move(node));
}

namespace {

enum class Tok { Name, Number, Keyword, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Rational number;
  int line = 1;
};

bool is_keyword(const std::string& s) {
  return s == "input" || s == "let" || s == "output" || s == "weight";
}

std::optional<ShiftDir> shift_of(const std::string& s) {
  if (s == "im") return ShiftDir::Im;
  if (s == "ip") return ShiftDir::Ip;
  if (s == "jm") return ShiftDir::Jm;
  if (s == "jp") return ShiftDir::Jp;
  if (s == "km") return ShiftDir::Km;
  if (s == "kp") return ShiftDir::Kp;
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    current_ = Token{};
    current_.line = line_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      current_.text = std::string(text_.substr(start, pos_ - start));
      current_.kind = is_keyword(current_.text) ? Tok::Keyword : Tok::Name;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      try {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        std::int64_t whole =
            std::stoll(std::string(text_.substr(start, pos_ - start)));
        Rational value(whole);
        if (pos_ < text_.size() && text_[pos_] == '.') {
          ++pos_;
          std::size_t fstart = pos_;
          while (pos_ < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
          if (fstart == pos_)
            throw ParseError(line_, "digits expected after decimal point");
          if (pos_ - fstart > 15)
            throw ParseError(line_, "too many decimal digits");
          std::int64_t frac =
              std::stoll(std::string(text_.substr(fstart, pos_ - fstart)));
          std::int64_t scale = 1;
          for (std::size_t i = fstart; i < pos_; ++i) scale *= 10;
          value = value + Rational(frac, scale);
        }
        current_.kind = Tok::Number;
        current_.number = value;
      } catch (const std::out_of_range&) {
        throw ParseError(line_, "number literal out of range");
      }
      return;
    }
    if (std::string("+-*/()=;").find(c) != std::string::npos) {
      current_.kind = Tok::Symbol;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  StencilProgram run() {
    if (lex_.peek().kind == Tok::End)
      throw ParseError(1, "empty program");
    while (lex_.peek().kind != Tok::End) decl();
    if (program_.inputs.empty())
      throw ParseError(lex_.peek().line, "program declares no inputs");
    if (program_.outputs.empty())
      throw ParseError(lex_.peek().line, "program declares no outputs");
    return std::move(program_);
  }

 private:
  void expect_symbol(const char* s) {
    Token t = lex_.take();
    if (t.kind != Tok::Symbol || t.text != s)
      throw ParseError(t.line, std::string("expected '") + s + "'");
  }

  std::string take_name() {
    Token t = lex_.take();
    if (t.kind != Tok::Name)
      throw ParseError(t.line, "expected a name");
    return t.text;
  }

  void define(const std::string& name, ExprId expr, int line) {
    if (shift_of(name))
      throw ParseError(line, "\"" + name + "\" is a reserved shift operator");
    if (scope_.count(name))
      throw ParseError(line, "name \"" + name + "\" already defined");
    scope_[name] = expr;
  }

  void decl() {
    Token kw = lex_.take();
    if (kw.kind != Tok::Keyword)
      throw ParseError(kw.line, "expected input/let/output declaration");
    if (kw.text == "input") {
      std::string name = take_name();
      std::int64_t weight = 1;
      if (lex_.peek().kind == Tok::Keyword && lex_.peek().text == "weight") {
        lex_.take();
        Token num = lex_.take();
        if (num.kind != Tok::Number || !num.number.is_integer() ||
            num.number.num() < 1)
          throw ParseError(num.line, "weight must be a positive integer");
        weight = num.number.num();
      }
      ExprId id = program_.pool.input(name);
      define(name, id, kw.line);
      program_.inputs.push_back({name, weight, id});
    } else if (kw.text == "let" || kw.text == "output") {
      std::string name = take_name();
      expect_symbol("=");
      ExprId id = expr();
      define(name, id, kw.line);
      if (kw.text == "let")
        program_.lets.push_back({name, id});
      else
        program_.outputs.push_back({name, id});
    } else {
      throw ParseError(kw.line, "unexpected keyword \"" + kw.text + "\"");
    }
    expect_symbol(";");
  }

  ExprId expr() {
    ExprId acc = term();
    while (lex_.peek().kind == Tok::Symbol &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.take().text;
      ExprId rhs = term();
      acc = op == "+" ? program_.pool.add(acc, rhs)
                      : program_.pool.sub(acc, rhs);
    }
    return acc;
  }

  ExprId term() {
    ExprId acc = factor();
    while (lex_.peek().kind == Tok::Symbol &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.take();
      ExprId rhs = factor();
      try {
        acc = op.text == "*" ? program_.pool.mul(acc, rhs)
                             : program_.pool.div(acc, rhs);
      } catch (const ParseError& err) {
        throw ParseError(op.line, err.message);
      }
    }
    return acc;
  }

  ExprId factor() {
    Token t = lex_.take();
    if (t.kind == Tok::Number) return program_.pool.constant(t.number);
    if (t.kind == Tok::Symbol && t.text == "-") return program_.pool.negate(factor());
    if (t.kind == Tok::Symbol && t.text == "(") {
      ExprId inner = expr();
      expect_symbol(")");
      return inner;
    }
    if (t.kind == Tok::Name) {
      if (auto dir = shift_of(t.text)) {
        expect_symbol("(");
        ExprId inner = expr();
        expect_symbol(")");
        return program_.pool.shift(*dir, inner);
      }
      auto it = scope_.find(t.text);
      if (it == scope_.end())
        throw ParseError(t.line, "unknown name \"" + t.text + "\"");
      return it->second;
    }
    throw ParseError(t.line, "expected a number, name, or parenthesized expression");
  }

  Lexer lex_;
  StencilProgram program_;
  std::unordered_map<std::string, ExprId> scope_;
};

}  // namespace

StencilProgram parse_stencil(std::string_view text) {
  return Parser(text).run();
}

}  // namespace quarkflow
