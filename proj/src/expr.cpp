#include "mfglab/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfglab {

namespace {

struct Num : Expr {
  double v;
  explicit Num(double x) : v(x) {}
  double eval(const EvalCtx&) const override { return v; }
  ExprPtr diff(const std::string&) const override {
    return std::make_shared<Num>(0.0);
  }
  std::string str() const override { return std::to_string(v); }
};

struct Var : Expr {
  std::string name;
  explicit Var(std::string n) : name(std::move(n)) {}
  double eval(const EvalCtx& c) const override {
    if (name == "x1") return c.x1;
    if (name == "x2") return c.x2;
    if (name == "t") return c.t;
    if (name == "z1") return c.z1;
    if (name == "z2") return c.z2;
    return c.y2;  // "y2"
  }
  ExprPtr diff(const std::string& var) const override {
    return std::make_shared<Num>(name == var ? 1.0 : 0.0);
  }
  std::string str() const override { return name; }
};

struct Neg : Expr {
  ExprPtr a;
  explicit Neg(ExprPtr x) : a(std::move(x)) {}
  double eval(const EvalCtx& c) const override { return -a->eval(c); }
  ExprPtr diff(const std::string& var) const override {
    return std::make_shared<Neg>(a->diff(var));
  }
  std::string str() const override { return "(-" + a->str() + ")"; }
};

struct Bin : Expr {
  char op;
  ExprPtr l, r;
  Bin(char o, ExprPtr a, ExprPtr b) : op(o), l(std::move(a)), r(std::move(b)) {}
  double eval(const EvalCtx& c) const override {
    const double a = l->eval(c), b = r->eval(c);
    switch (op) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      default: return a / b;
    }
  }
  ExprPtr diff(const std::string& var) const override {
    const ExprPtr dl = l->diff(var), dr = r->diff(var);
    switch (op) {
      case '+': return std::make_shared<Bin>('+', dl, dr);
      case '-': return std::make_shared<Bin>('-', dl, dr);
      case '*':
        return std::make_shared<Bin>(
            '+', std::make_shared<Bin>('*', dl, r),
            std::make_shared<Bin>('*', l, dr));
      default:  // (l/r)' = (l' r - l r') / r^2
        return std::make_shared<Bin>(
            '/',
            std::make_shared<Bin>('-', std::make_shared<Bin>('*', dl, r),
                                  std::make_shared<Bin>('*', l, dr)),
            std::make_shared<Bin>('*', r, r));
    }
  }
  std::string str() const override {
    return "(" + l->str() + op + r->str() + ")";
  }
};

struct Call : Expr {
  std::string fn;
  ExprPtr a;
  Call(std::string f, ExprPtr x) : fn(std::move(f)), a(std::move(x)) {}
  double eval(const EvalCtx& c) const override {
    const double x = a->eval(c);
    if (fn == "sin") return std::sin(x);
    if (fn == "cos") return std::cos(x);
    if (fn == "tanh") return std::tanh(x);
    return std::exp(x);  // "exp"
  }
  ExprPtr diff(const std::string& var) const override {
    const ExprPtr da = a->diff(var);
    ExprPtr outer;
    if (fn == "sin") {
      outer = std::make_shared<Call>("cos", a);
    } else if (fn == "cos") {
      outer = std::make_shared<Neg>(std::make_shared<Call>("sin", a));
    } else if (fn == "tanh") {
      const ExprPtr th = std::make_shared<Call>("tanh", a);
      outer = std::make_shared<Bin>('-', std::make_shared<Num>(1.0),
                                    std::make_shared<Bin>('*', th, th));
    } else {
      outer = std::make_shared<Call>("exp", a);
    }
    return std::make_shared<Bin>('*', outer, da);
  }
  std::string str() const override { return fn + "(" + a->str() + ")"; }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression error at position " +
                                std::to_string(pos_) + " in \"" + s_ +
                                "\": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+'))
        e = std::make_shared<Bin>('+', e, term());
      else if (eat('-'))
        e = std::make_shared<Bin>('-', e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*'))
        e = std::make_shared<Bin>('*', e, unary());
      else if (eat('/'))
        e = std::make_shared<Bin>('/', e, unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return std::make_shared<Neg>(unary());
    return primary();
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return std::make_shared<Num>(v);
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[end])) ||
              s_[end] == '_'))
        ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "pi") return std::make_shared<Num>(std::numbers::pi);
      if (name == "sin" || name == "cos" || name == "tanh" || name == "exp") {
        if (!eat('(')) fail("expected '(' after " + name);
        ExprPtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return std::make_shared<Call>(name, arg);
      }
      if (name == "x1" || name == "x2" || name == "t" || name == "z1" ||
          name == "z2" || name == "y2")
        return std::make_shared<Var>(name);
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).run(); }

ExprPtr expr_constant(double v) { return std::make_shared<Num>(v); }

}  // namespace mfglab
