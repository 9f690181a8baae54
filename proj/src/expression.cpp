#include "vpmcf/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "vpmcf/errors.hpp"

namespace vpmcf {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

struct Expression::Node {
  struct Constant {
    double value;
  };
  struct Variable {};
  struct Unary {
    char op;
    std::shared_ptr<const Node> arg;
  };
  struct Binary {
    char op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  struct Call {
    Func fn;
    std::shared_ptr<const Node> arg;
  };
  std::variant<Constant, Variable, Unary, Binary, Call> v;

  double eval(double x) const;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

template <class T>
NodePtr make(T alt) {
  return std::make_shared<const Expression::Node>(Expression::Node{std::move(alt)});
}

double apply(Func fn, double a) {
  switch (fn) {
    case Func::Sin: return std::sin(a);
    case Func::Cos: return std::cos(a);
    case Func::Tan: return std::tan(a);
    case Func::Sinh: return std::sinh(a);
    case Func::Cosh: return std::cosh(a);
    case Func::Tanh: return std::tanh(a);
    case Func::Exp: return std::exp(a);
    case Func::Log: return std::log(a);
    case Func::Sqrt: return std::sqrt(a);
    case Func::Abs: return std::fabs(a);
  }
  return std::nan("");
}

bool lookup_function(std::string_view name, Func& out) {
  static constexpr std::pair<std::string_view, Func> table[] = {
      {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
      {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
      {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
      {"abs", Func::Abs}};
  for (const auto& [n, f] : table) {
    if (n == name) {
      out = f;
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  NodePtr parse() {
    auto node = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return node;
  }

 private:
  // expr := term (('+'|'-') term)*
  NodePtr expr() {
    auto lhs = term();
    while (true) {
      skip_ws();
      if (peek('+') || peek('-')) {
        char op = src_[pos_++];
        lhs = make(Expression::Node::Binary{op, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  // term := unary (('*'|'/') unary)*
  NodePtr term() {
    auto lhs = unary();
    while (true) {
      skip_ws();
      if (peek('*') || peek('/')) {
        char op = src_[pos_++];
        lhs = make(Expression::Node::Binary{op, lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  // unary := ('-'|'+') unary | power
  NodePtr unary() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      return make(Expression::Node::Unary{'-', unary()});
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  // power := primary ('^' unary)?
  NodePtr power() {
    auto base = primary();
    skip_ws();
    if (peek('^')) {
      ++pos_;
      return make(Expression::Node::Binary{'^', base, unary()});
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string_view name = src_.substr(start, pos_ - start);
      if (name == var_) return make(Expression::Node::Variable{});
      if (name == "pi") return make(Expression::Node::Constant{std::numbers::pi});
      Func fn;
      if (lookup_function(name, fn)) {
        skip_ws();
        expect('(');
        auto arg = expr();
        expect(')');
        return make(Expression::Node::Call{fn, arg});
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make(Expression::Node::Constant{value});
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  void expect(char c) {
    skip_ws();
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + std::string(src_) + "\", column " +
                      std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace

double Expression::Node::eval(double x) const {
  struct Visitor {
    double x;
    double operator()(const Constant& c) const { return c.value; }
    double operator()(const Variable&) const { return x; }
    double operator()(const Unary& u) const { return -u.arg->eval(x); }
    double operator()(const Binary& b) const {
      double l = b.lhs->eval(x);
      double r = b.rhs->eval(x);
      switch (b.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/': return l / r;
        default: {
          // integer exponents keep negative bases well defined
          if (r == std::round(r) && std::fabs(r) <= 64) {
            double result = 1.0;
            double base = r < 0 ? 1.0 / l : l;
            for (int k = 0, e = static_cast<int>(std::fabs(r)); k < e; ++k) result *= base;
            return result;
          }
          return std::pow(l, r);
        }
      }
    }
    double operator()(const Call& c) const { return apply(c.fn, c.arg->eval(x)); }
  };
  return std::visit(Visitor{x}, v);
}

Expression::Expression(std::string_view source, std::string variable)
    : source_(source), variable_(std::move(variable)) {
  root_ = Parser(source_, variable_).parse();
}

double Expression::operator()(double x) const {
  if (!root_) throw ConfigError("evaluating an empty expression");
  return root_->eval(x);
}

}  // namespace vpmcf
