#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "semilinear/expr.hpp"

namespace semilinear::detail {

inline bool is_unary(Op op) {
  switch (op) {
    case Op::neg:
    case Op::exp:
    case Op::log:
    case Op::abs:
    case Op::sign:
    case Op::cosh:
    case Op::sinh:
      return true;
    default:
      return false;
  }
}

inline bool is_binary(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow:
    case Op::max:
    case Op::min:
      return true;
    default:
      return false;
  }
}

inline const char* operator_symbol(Op op) {
  switch (op) {
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::pow: return "^";
    default: return "?";
  }
}

struct FunctionInfo {
  Op op;
  int arity;
};

inline std::optional<FunctionInfo> lookup_function(std::string_view name) {
  if (name == "exp") return FunctionInfo{Op::exp, 1};
  if (name == "log") return FunctionInfo{Op::log, 1};
  if (name == "abs") return FunctionInfo{Op::abs, 1};
  if (name == "sign") return FunctionInfo{Op::sign, 1};
  if (name == "cosh") return FunctionInfo{Op::cosh, 1};
  if (name == "sinh") return FunctionInfo{Op::sinh, 1};
  if (name == "max") return FunctionInfo{Op::max, 2};
  if (name == "min") return FunctionInfo{Op::min, 2};
  return std::nullopt;
}

inline const char* function_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::abs: return "abs";
    case Op::sign: return "sign";
    case Op::cosh: return "cosh";
    case Op::sinh: return "sinh";
    case Op::max: return "max";
    case Op::min: return "min";
    default: return "?";
  }
}

inline std::string variable_name(Variable v) {
  switch (v.kind) {
    case VarKind::r: return "r";
    case VarKind::z: return "z";
    case VarKind::q: return "q";
    case VarKind::x: return "x" + std::to_string(v.index);
    case VarKind::p: return "p" + std::to_string(v.index);
  }
  return "?";
}

/// Recognizes r, z, q, x<i>, p<i> (i >= 1).
inline std::optional<Variable> lookup_variable(std::string_view name) {
  if (name == "r") return Variable{VarKind::r, 0};
  if (name == "z") return Variable{VarKind::z, 0};
  if (name == "q") return Variable{VarKind::q, 0};
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'p')) {
    int idx = 0;
    for (char ch : name.substr(1)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      idx = idx * 10 + (ch - '0');
      if (idx > 1000) return std::nullopt;
    }
    if (name[1] == '0' || idx < 1) return std::nullopt;
    return Variable{name[0] == 'x' ? VarKind::x : VarKind::p, idx};
  }
  return std::nullopt;
}

}  // namespace semilinear::detail
