#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcert {

// Arithmetic expression over named variables, compiled to a postfix program.
// Supports + - * / ^, comparisons (yield 1 or 0), if(c,a,b), min, max, pow,
// abs, exp, log, sqrt, sin, cos, tan, atan, sinh, cosh, tanh and the
// constants pi, e, inf.
class Expression {
 public:
  Expression() = default;
  static Expression compile(std::string_view text, std::vector<std::string> variables);

  double operator()(std::span<const double> vars) const;
  double operator()(std::initializer_list<double> vars) const {
    return (*this)(std::span<const double>(vars.begin(), vars.size()));
  }

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return vars_; }
  bool uses(std::string_view var) const;
  bool empty() const { return code_.empty(); }

  enum class OpCode : unsigned char {
    Const, Var, Neg, Add, Sub, Mul, Div, Pow, Lt, Le, Gt, Ge, Eq, Ne,
    Exp, Log, Sqrt, Sin, Cos, Tan, Atan, Sinh, Cosh, Tanh, Abs, Min, Max, If
  };
  struct Op {
    OpCode code;
    int index = 0;
    double value = 0.0;
  };

 private:
  std::vector<Op> code_;
  std::string text_;
  std::vector<std::string> vars_;
};

}  // namespace hcert
