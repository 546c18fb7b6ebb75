#include "hcert/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

using OpCode = Expression::OpCode;
using Op = Expression::Op;

constexpr int kMaxStack = 64;

struct Parser {
  std::string_view src;
  const std::vector<std::string>& vars;
  std::vector<Op> out;
  std::size_t pos = 0;
  int depth = 0;
  int max_depth = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ExpressionError, "expression",
                msg + " at column " + std::to_string(pos + 1) + " in '" + std::string(src) + "'");
  }

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(std::string_view tok) {
    skip();
    if (src.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  void emit(OpCode c, int pops, int pushes = 1, int index = 0, double value = 0.0) {
    out.push_back({c, index, value});
    depth += pushes - pops;
    max_depth = std::max(max_depth, depth);
    if (max_depth > kMaxStack) fail("expression too deeply nested");
  }

  void parse_all() {
    comparison();
    skip();
    if (pos != src.size()) fail("unexpected character");
  }

  void comparison() {
    additive();
    skip();
    struct Cmp { std::string_view tok; OpCode code; };
    static constexpr Cmp cmps[] = {{"<=", OpCode::Le}, {">=", OpCode::Ge}, {"==", OpCode::Eq},
                                   {"!=", OpCode::Ne}, {"<", OpCode::Lt},  {">", OpCode::Gt}};
    for (const Cmp& c : cmps) {
      if (eat(c.tok)) {
        additive();
        emit(c.code, 2);
        return;
      }
    }
  }

  void additive() {
    multiplicative();
    for (;;) {
      if (eat("+")) {
        multiplicative();
        emit(OpCode::Add, 2);
      } else if (eat("-")) {
        multiplicative();
        emit(OpCode::Sub, 2);
      } else {
        return;
      }
    }
  }

  void multiplicative() {
    unary();
    for (;;) {
      if (eat("*")) {
        unary();
        emit(OpCode::Mul, 2);
      } else if (eat("/")) {
        unary();
        emit(OpCode::Div, 2);
      } else {
        return;
      }
    }
  }

  void unary() {
    if (eat("-")) {
      unary();
      emit(OpCode::Neg, 1);
    } else if (eat("+")) {
      unary();
    } else {
      power();
    }
  }

  void power() {
    primary();
    if (eat("^")) {
      unary();
      emit(OpCode::Pow, 2);
    }
  }

  int arguments() {
    if (!eat("(")) fail("expected '('");
    int n = 0;
    if (eat(")")) return 0;
    do {
      comparison();
      ++n;
    } while (eat(","));
    if (!eat(")")) fail("expected ')'");
    return n;
  }

  void primary() {
    skip();
    if (pos >= src.size()) fail("unexpected end of expression");
    char ch = src[pos];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::string tmp(src.substr(pos));
      char* end = nullptr;
      double v = std::strtod(tmp.c_str(), &end);
      if (end == tmp.c_str()) fail("bad number");
      pos += static_cast<std::size_t>(end - tmp.c_str());
      emit(OpCode::Const, 0, 1, 0, v);
      return;
    }
    if (ch == '(') {
      ++pos;
      comparison();
      if (!eat(")")) fail("expected ')'");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos;
      while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) ++pos;
      std::string name(src.substr(start, pos - start));
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) {
          emit(OpCode::Var, 0, 1, static_cast<int>(i));
          return;
        }
      if (name == "pi") return emit(OpCode::Const, 0, 1, 0, std::numbers::pi);
      if (name == "e") return emit(OpCode::Const, 0, 1, 0, std::numbers::e);
      if (name == "inf") return emit(OpCode::Const, 0, 1, 0, std::numeric_limits<double>::infinity());
      struct Fn { const char* name; OpCode code; int arity; };
      static constexpr Fn fns[] = {
          {"exp", OpCode::Exp, 1},   {"log", OpCode::Log, 1},   {"sqrt", OpCode::Sqrt, 1},
          {"sin", OpCode::Sin, 1},   {"cos", OpCode::Cos, 1},   {"tan", OpCode::Tan, 1},
          {"atan", OpCode::Atan, 1}, {"sinh", OpCode::Sinh, 1}, {"cosh", OpCode::Cosh, 1},
          {"tanh", OpCode::Tanh, 1}, {"abs", OpCode::Abs, 1},   {"min", OpCode::Min, 2},
          {"max", OpCode::Max, 2},   {"pow", OpCode::Pow, 2},   {"if", OpCode::If, 3}};
      for (const Fn& f : fns) {
        if (name != f.name) continue;
        int n = arguments();
        if (f.code == OpCode::Min || f.code == OpCode::Max) {
          if (n < 2) fail(name + " needs at least two arguments");
          for (int k = 1; k < n; ++k) emit(f.code, 2);
          return;
        }
        if (n != f.arity) fail(name + " takes " + std::to_string(f.arity) + " argument(s)");
        emit(f.code, f.arity);
        return;
      }
      pos = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected character");
  }
};

}  // namespace

Expression Expression::compile(std::string_view text, std::vector<std::string> variables) {
  Parser p{text, variables, {}};
  p.parse_all();
  Expression e;
  e.code_ = std::move(p.out);
  e.text_ = std::string(text);
  e.vars_ = std::move(variables);
  return e;
}

bool Expression::uses(std::string_view var) const {
  for (const Op& op : code_)
    if (op.code == OpCode::Var && vars_[op.index] == var) return true;
  return false;
}

double Expression::operator()(std::span<const double> vars) const {
  std::array<double, kMaxStack + 1> st;
  int sp = 0;
  for (const Op& op : code_) {
    switch (op.code) {
      case OpCode::Const: st[sp++] = op.value; break;
      case OpCode::Var: st[sp++] = vars[op.index]; break;
      case OpCode::Neg: st[sp - 1] = -st[sp - 1]; break;
      case OpCode::Add: --sp; st[sp - 1] += st[sp]; break;
      case OpCode::Sub: --sp; st[sp - 1] -= st[sp]; break;
      case OpCode::Mul: --sp; st[sp - 1] *= st[sp]; break;
      case OpCode::Div: --sp; st[sp - 1] /= st[sp]; break;
      case OpCode::Pow: {
        --sp;
        double b = st[sp];
        st[sp - 1] = (b == 2.0) ? st[sp - 1] * st[sp - 1] : std::pow(st[sp - 1], b);
        break;
      }
      case OpCode::Lt: --sp; st[sp - 1] = st[sp - 1] < st[sp]; break;
      case OpCode::Le: --sp; st[sp - 1] = st[sp - 1] <= st[sp]; break;
      case OpCode::Gt: --sp; st[sp - 1] = st[sp - 1] > st[sp]; break;
      case OpCode::Ge: --sp; st[sp - 1] = st[sp - 1] >= st[sp]; break;
      case OpCode::Eq: --sp; st[sp - 1] = st[sp - 1] == st[sp]; break;
      case OpCode::Ne: --sp; st[sp - 1] = st[sp - 1] != st[sp]; break;
      case OpCode::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case OpCode::Log: st[sp - 1] = std::log(st[sp - 1]); break;
      case OpCode::Sqrt: st[sp - 1] = std::sqrt(st[sp - 1]); break;
      case OpCode::Sin: st[sp - 1] = std::sin(st[sp - 1]); break;
      case OpCode::Cos: st[sp - 1] = std::cos(st[sp - 1]); break;
      case OpCode::Tan: st[sp - 1] = std::tan(st[sp - 1]); break;
      case OpCode::Atan: st[sp - 1] = std::atan(st[sp - 1]); break;
      case OpCode::Sinh: st[sp - 1] = std::sinh(st[sp - 1]); break;
      case OpCode::Cosh: st[sp - 1] = std::cosh(st[sp - 1]); break;
      case OpCode::Tanh: st[sp - 1] = std::tanh(st[sp - 1]); break;
      case OpCode::Abs: st[sp - 1] = std::abs(st[sp - 1]); break;
      case OpCode::Min: --sp; st[sp - 1] = std::min(st[sp - 1], st[sp]); break;
      case OpCode::Max: --sp; st[sp - 1] = std::max(st[sp - 1], st[sp]); break;
      case OpCode::If: sp -= 2; st[sp - 1] = st[sp - 1] != 0.0 ? st[sp] : st[sp + 1]; break;
    }
  }
  return st[0];
}

}  // namespace hcert
