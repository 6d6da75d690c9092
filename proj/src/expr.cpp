#include "semilinear/expr.hpp"

#include <charconv>
#include <cmath>

#include "expr_functions.hpp"
#include "semilinear/errors.hpp"

namespace semilinear {

// --- construction -----------------------------------------------------------

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

Expr::Expr() : node_(make_node(ExprNode{})) {}

Expr Expr::constant(double v) {
  ExprNode n;
  n.op = Op::constant;
  n.value = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::parameter(std::string name, double value) {
  ExprNode n;
  n.op = Op::parameter;
  n.name = std::move(name);
  n.value = value;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(Variable v) {
  ExprNode n;
  n.op = Op::variable;
  n.var = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::unary(Op op, Expr arg) {
  if (!detail::is_unary(op)) throw UsageError("Expr::unary: not a unary operator");
  ExprNode n;
  n.op = op;
  n.lhs = std::move(arg.node_);
  return Expr(make_node(std::move(n)));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!detail::is_binary(op)) throw UsageError("Expr::binary: not a binary operator");
  ExprNode n;
  n.op = op;
  n.lhs = std::move(lhs.node_);
  n.rhs = std::move(rhs.node_);
  return Expr(make_node(std::move(n)));
}

Op Expr::op() const noexcept { return node_->op; }
bool Expr::is_constant() const noexcept { return node_->op == Op::constant || node_->op == Op::parameter; }
double Expr::constant_value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
Variable Expr::variable() const noexcept { return node_->var; }
Expr Expr::lhs() const { return Expr(node_->lhs); }
Expr Expr::rhs() const { return Expr(node_->rhs); }

// --- printing ---------------------------------------------------------------

namespace {

std::string number_text(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::constant:
      if (e.constant_value() < 0 || std::signbit(e.constant_value())) {
        out += "(-" + number_text(-e.constant_value()) + ")";
      } else {
        out += number_text(e.constant_value());
      }
      return;
    case Op::parameter:
      out += e.name();
      return;
    case Op::variable:
      out += detail::variable_name(e.variable());
      return;
    case Op::neg:
      out += "(-";
      print(e.lhs(), out);
      out += ")";
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow:
      out += "(";
      print(e.lhs(), out);
      out += ' ';
      out += detail::operator_symbol(e.op());
      out += ' ';
      print(e.rhs(), out);
      out += ")";
      return;
    default:
      out += detail::function_name(e.op());
      out += "(";
      print(e.lhs(), out);
      if (detail::is_binary(e.op())) {
        out += ", ";
        print(e.rhs(), out);
      }
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// --- evaluation -------------------------------------------------------------

namespace {

struct Env {
  std::span<const double> x;
  double r;
  double z;
  std::span<const double> p;
  double q;
};

double power(double a, double b) {
  if (a == 0.0 && b < 0.0) throw DomainError("0 raised to a negative power");
  if (a < 0.0 && b != std::nearbyint(b)) {
    throw DomainError("negative base under a non-integer exponent");
  }
  return std::pow(a, b);
}

double apply_unary(Op op, double a) {
  switch (op) {
    case Op::neg: return -a;
    case Op::exp: return std::exp(a);
    case Op::log:
      if (!(a > 0.0)) throw DomainError("log of a non-positive number");
      return std::log(a);
    case Op::abs: return std::abs(a);
    case Op::sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    case Op::cosh: return std::cosh(a);
    case Op::sinh: return std::sinh(a);
    default: throw UsageError("apply_unary: not a unary operator");
  }
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div:
      if (b == 0.0) throw DomainError("division by zero");
      return a / b;
    case Op::pow: return power(a, b);
    case Op::max: return std::max(a, b);
    case Op::min: return std::min(a, b);
    default: throw UsageError("apply_binary: not a binary operator");
  }
}

double evaluate(const ExprNode& n, const Env& env) {
  switch (n.op) {
    case Op::constant:
    case Op::parameter:
      return n.value;
    case Op::variable: {
      const Variable v = n.var;
      switch (v.kind) {
        case VarKind::r: return env.r;
        case VarKind::z: return env.z;
        case VarKind::q: return env.q;
        case VarKind::x:
          if (v.index < 1 || static_cast<std::size_t>(v.index) > env.x.size()) {
            throw UsageError("x" + std::to_string(v.index) + " exceeds the point dimension");
          }
          return env.x[v.index - 1];
        case VarKind::p:
          if (v.index < 1 || static_cast<std::size_t>(v.index) > env.p.size()) {
            throw UsageError("p" + std::to_string(v.index) + " exceeds the gradient dimension");
          }
          return env.p[v.index - 1];
      }
      return 0.0;
    }
    default:
      break;
  }
  if (detail::is_unary(n.op)) return apply_unary(n.op, evaluate(*n.lhs, env));
  return apply_binary(n.op, evaluate(*n.lhs, env), evaluate(*n.rhs, env));
}

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

double eval(const Expr& e, std::span<const double> x, double z, std::span<const double> p) {
  const Env env{x, euclid(x), z, p, euclid(p)};
  return evaluate(e.node(), env);
}

// --- simplification ---------------------------------------------------------

namespace {

bool is_value(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

Expr fold_or(Op op, const Expr& a, const Expr* b) {
  try {
    const double v = b ? apply_binary(op, a.constant_value(), b->constant_value())
                       : apply_unary(op, a.constant_value());
    if (std::isfinite(v)) return Expr::constant(v);
  } catch (const DomainError&) {
    // leave the failure for evaluation time
  }
  return b ? Expr::binary(op, a, *b) : Expr::unary(op, a);
}

Expr make_unary(Op op, const Expr& a) {
  if (a.is_constant()) return fold_or(op, a, nullptr);
  if (op == Op::neg && a.op() == Op::neg) return a.lhs();
  return Expr::unary(op, a);
}

Expr make_binary(Op op, const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return fold_or(op, a, &b);
  switch (op) {
    case Op::add:
      if (is_value(a, 0.0)) return b;
      if (is_value(b, 0.0)) return a;
      if (b.op() == Op::neg) return make_binary(Op::sub, a, b.lhs());
      break;
    case Op::sub:
      if (is_value(b, 0.0)) return a;
      if (is_value(a, 0.0)) return make_unary(Op::neg, b);
      break;
    case Op::mul:
      if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr::constant(0.0);
      if (is_value(a, 1.0)) return b;
      if (is_value(b, 1.0)) return a;
      if (is_value(a, -1.0)) return make_unary(Op::neg, b);
      if (is_value(b, -1.0)) return make_unary(Op::neg, a);
      break;
    case Op::div:
      if (is_value(a, 0.0) && b.is_constant() && b.constant_value() != 0.0) return Expr::constant(0.0);
      if (is_value(a, 0.0) && !b.is_constant()) return Expr::constant(0.0);
      if (is_value(b, 1.0)) return a;
      break;
    case Op::pow:
      if (is_value(b, 1.0)) return a;
      if (is_value(b, 0.0)) return Expr::constant(1.0);
      if (is_value(a, 1.0)) return Expr::constant(1.0);
      if (is_value(a, 0.0) && b.is_constant() && b.constant_value() > 0.0) return Expr::constant(0.0);
      break;
    default:
      break;
  }
  return Expr::binary(op, a, b);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.op()) {
    case Op::constant:
    case Op::parameter:
    case Op::variable:
      return e;
    default:
      break;
  }
  if (detail::is_unary(e.op())) return make_unary(e.op(), simplify(e.lhs()));
  return make_binary(e.op(), simplify(e.lhs()), simplify(e.rhs()));
}

namespace {

Expr substitute_state_zero(const Expr& e) {
  switch (e.op()) {
    case Op::constant:
    case Op::parameter:
      return e;
    case Op::variable: {
      const VarKind k = e.variable().kind;
      if (k == VarKind::z || k == VarKind::p || k == VarKind::q) return Expr::constant(0.0);
      return e;
    }
    default:
      break;
  }
  if (detail::is_unary(e.op())) return make_unary(e.op(), substitute_state_zero(e.lhs()));
  return make_binary(e.op(), substitute_state_zero(e.lhs()), substitute_state_zero(e.rhs()));
}

}  // namespace

Expr at_zero_state(const Expr& e) { return substitute_state_zero(e); }

// --- queries ----------------------------------------------------------------

namespace {

template <class Pred>
bool any_node(const ExprNode& n, const Pred& pred) {
  if (pred(n)) return true;
  if (n.lhs && any_node(*n.lhs, pred)) return true;
  if (n.rhs && any_node(*n.rhs, pred)) return true;
  return false;
}

bool depends_on_variable(const Expr& e, Variable v) {
  return any_node(e.node(), [&](const ExprNode& n) { return n.op == Op::variable && n.var == v; });
}

}  // namespace

bool depends_on(const Expr& e, VarKind kind) {
  return any_node(e.node(), [&](const ExprNode& n) { return n.op == Op::variable && n.var.kind == kind; });
}

bool depends_on_state(const Expr& e) {
  return depends_on(e, VarKind::z) || depends_on(e, VarKind::p) || depends_on(e, VarKind::q);
}

bool contains_op(const Expr& e, Op op) {
  return any_node(e.node(), [&](const ExprNode& n) { return n.op == op; });
}

int max_component(const Expr& e, VarKind kind) {
  int best = 0;
  any_node(e.node(), [&](const ExprNode& n) {
    if (n.op == Op::variable && n.var.kind == kind) best = std::max(best, n.var.index);
    return false;
  });
  return best;
}

// --- differentiation --------------------------------------------------------

namespace {

Expr c(double v) { return Expr::constant(v); }
Expr add(const Expr& a, const Expr& b) { return make_binary(Op::add, a, b); }
Expr sub(const Expr& a, const Expr& b) { return make_binary(Op::sub, a, b); }
Expr mul(const Expr& a, const Expr& b) { return make_binary(Op::mul, a, b); }
Expr div(const Expr& a, const Expr& b) { return make_binary(Op::div, a, b); }
Expr pw(const Expr& a, const Expr& b) { return make_binary(Op::pow, a, b); }
Expr fn(Op op, const Expr& a) { return make_unary(op, a); }

Expr derive(const Expr& e, Variable v) {
  switch (e.op()) {
    case Op::constant:
    case Op::parameter:
      return c(0.0);
    case Op::variable:
      return c(e.variable() == v ? 1.0 : 0.0);
    default:
      break;
  }
  const Expr a = e.lhs();
  const Expr da = derive(a, v);
  if (detail::is_unary(e.op())) {
    switch (e.op()) {
      case Op::neg: return fn(Op::neg, da);
      case Op::exp: return mul(e, da);
      case Op::log: return div(da, a);
      case Op::abs: return mul(fn(Op::sign, a), da);
      case Op::sign: return c(0.0);
      case Op::cosh: return mul(fn(Op::sinh, a), da);
      case Op::sinh: return mul(fn(Op::cosh, a), da);
      default: throw UsageError("differentiate: unexpected unary operator");
    }
  }
  const Expr b = e.rhs();
  const Expr db = derive(b, v);
  switch (e.op()) {
    case Op::add: return add(da, db);
    case Op::sub: return sub(da, db);
    case Op::mul: return add(mul(da, b), mul(a, db));
    case Op::div: return sub(div(da, b), div(mul(a, db), mul(b, b)));
    case Op::pow:
      if (!depends_on_variable(b, v)) {
        return mul(mul(b, pw(a, sub(b, c(1.0)))), da);
      }
      return mul(e, add(mul(db, fn(Op::log, a)), div(mul(b, da), a)));
    case Op::max:
    case Op::min: {
      // max(a,b) = (a + b + |a - b|)/2, min(a,b) = (a + b - |a - b|)/2
      const Expr s = mul(fn(Op::sign, sub(a, b)), sub(da, db));
      const Expr sum = e.op() == Op::max ? add(add(da, db), s) : sub(add(da, db), s);
      return mul(c(0.5), sum);
    }
    default:
      throw UsageError("differentiate: unexpected binary operator");
  }
}

}  // namespace

Expr differentiate(const Expr& e, Variable v) { return derive(e, v); }

// --- (z, p) Jacobian --------------------------------------------------------

namespace {

// abs/max/min whose argument moves with (z, p).
bool has_state_kink(const Expr& g) {
  return any_node(g.node(), [](const ExprNode& n) {
    if (n.op != Op::abs && n.op != Op::max && n.op != Op::min) return false;
    auto state = [](const ExprNode& m) {
      return m.op == Op::variable && m.var.kind != VarKind::r && m.var.kind != VarKind::x;
    };
    return any_node(*n.lhs, state) || (n.rhs && any_node(*n.rhs, state));
  });
}

}  // namespace

double ZpGradient::norm() const {
  double s = dz * dz;
  for (double d : dp) s += d * d;
  return std::sqrt(s);
}

ZpJacobian::ZpJacobian(const Expr& g, int dimension)
    : n_(dimension),
      uses_q_(depends_on(g, VarKind::q)),
      uses_abs_(has_state_kink(g)),
      dz_(differentiate(g, Variable{VarKind::z, 0})),
      dq_(differentiate(g, Variable{VarKind::q, 0})) {
  if (max_component(g, VarKind::p) > dimension) {
    throw UsageError("nonlinearity references p" + std::to_string(max_component(g, VarKind::p)) +
                     " in dimension " + std::to_string(dimension));
  }
  zero_ = is_value(dz_, 0.0) && is_value(dq_, 0.0);
  for (int i = 1; i <= dimension; ++i) {
    dp_.push_back(differentiate(g, Variable{VarKind::p, i}));
    zero_ = zero_ && is_value(dp_.back(), 0.0);
  }
}

ZpGradient ZpJacobian::operator()(std::span<const double> x, double z, std::span<const double> p) const {
  if (p.size() != static_cast<std::size_t>(n_)) throw UsageError("grad_zp: gradient has the wrong dimension");
  const double q = euclid(p);
  if (uses_q_ && q == 0.0) {
    throw DomainError("grad_zp: |p| is not differentiable at p = 0");
  }
  if (uses_abs_ && q == 0.0 && z == 0.0) {
    throw DomainError("grad_zp: not differentiable at (z, p) = (0, 0)");
  }
  ZpGradient out;
  out.dz = eval(dz_, x, z, p);
  const double dq = uses_q_ ? eval(dq_, x, z, p) : 0.0;
  out.dp.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out.dp[i] = eval(dp_[i], x, z, p) + (uses_q_ ? dq * p[i] / q : 0.0);
  }
  return out;
}

ZpGradient grad_zp(const Expr& g, std::span<const double> x, double z, std::span<const double> p) {
  return ZpJacobian(g, static_cast<int>(p.size()))(x, z, p);
}

// --- spatial gradient -------------------------------------------------------

SpatialGradient::SpatialGradient(const Expr& e, int dimension)
    : n_(dimension), dr_(differentiate(e, Variable{VarKind::r, 0})) {
  if (depends_on_state(e)) throw UsageError("spatial gradient: expression depends on z or p");
  for (int i = 1; i <= dimension; ++i) dx_.push_back(differentiate(e, Variable{VarKind::x, i}));
}

std::vector<double> SpatialGradient::operator()(std::span<const double> x) const {
  const double r = euclid(x);
  const double dr = eval(dr_, x, 0.0, {});
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out[i] = eval(dx_[i], x, 0.0, {}) + (r > 0.0 ? dr * x[i] / r : 0.0);
  }
  return out;
}

double SpatialGradient::radial(double r) const {
  const double x[1] = {r};
  return eval(dr_, x, 0.0, {});
}

}  // namespace semilinear
