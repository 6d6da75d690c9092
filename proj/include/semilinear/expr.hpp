#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semilinear {

/// Variables a nonlinearity g(x, z, p) may reference.
///   r      |x|
///   x1..xn components of x
///   z      the value u(x)
///   p1..pn components of Du(x)
///   q      |p| (Euclidean)
enum class VarKind { r, x, z, p, q };

struct Variable {
  VarKind kind = VarKind::z;
  int index = 0;  ///< 1-based component for x and p, 0 otherwise

  friend bool operator==(const Variable&, const Variable&) = default;
};

enum class Op {
  constant,
  parameter,
  variable,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  exp,
  log,
  abs,
  sign,
  cosh,
  sinh,
  max,
  min,
};

struct ExprNode;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  Expr();  ///< the constant 0

  static Expr constant(double v);
  static Expr parameter(std::string name, double value);
  static Expr variable(Variable v);
  /// Unary node (neg and the one-argument functions).
  static Expr unary(Op op, Expr arg);
  /// Binary node (arithmetic, pow, max, min).
  static Expr binary(Op op, Expr lhs, Expr rhs);

  const ExprNode& node() const noexcept { return *node_; }
  Op op() const noexcept;
  /// Literal or bound parameter.
  bool is_constant() const noexcept;
  /// Value of a literal or bound parameter.
  double constant_value() const noexcept;
  const std::string& name() const noexcept;
  Variable variable() const noexcept;
  /// Operand of a unary node, left operand of a binary node.
  Expr lhs() const;
  Expr rhs() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Op op = Op::constant;
  double value = 0.0;
  std::string name;
  Variable var;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

struct ParseOptions {
  /// Declared parameters. A declared name without a value is "unbound" and
  /// rejected when referenced.
  std::map<std::string, std::optional<double>> params;
  /// Highest admissible component index for x_i and p_i.
  int dimension = 3;
};

/// Parse a nonlinearity. Grammar, lowest precedence first:
///   expr    := term (('+'|'-') term)*
///   term    := unary (('*'|'/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          (right associative)
///   primary := number | identifier | identifier '(' args ')' | '(' expr ')'
/// Throws ParseError carrying the character offset of the problem.
Expr parse(std::string_view text, const ParseOptions& options = {});

/// Fully parenthesized text that parses back to an equivalent tree (given the
/// same parameter map).
std::string to_string(const Expr& e);

/// Evaluate at (x, z, p); r = |x| and q = |p| are derived.
/// Throws DomainError on division by zero, 0^negative, log of a non-positive
/// number and negative bases under non-integer exponents.
double eval(const Expr& e, std::span<const double> x, double z, std::span<const double> p);

/// Symbolic partial derivative. r and x_i (and q and p_i) are treated as
/// independent symbols; chain rules are applied by the callers below.
Expr differentiate(const Expr& e, Variable v);

/// Constant folding plus the identities 0+a, a*1, a*0, a^1, ...
Expr simplify(const Expr& e);

/// g(x, 0, 0): replaces z, p_i and q by 0 and simplifies.
Expr at_zero_state(const Expr& e);

bool depends_on(const Expr& e, VarKind kind);
bool depends_on_state(const Expr& e);  ///< any of z, p_i, q
bool contains_op(const Expr& e, Op op);
/// Largest component index used for x_i or p_i (0 if none).
int max_component(const Expr& e, VarKind kind);

/// D_{(z,p)} g at one point.
struct ZpGradient {
  double dz = 0.0;
  std::vector<double> dp;
  double norm() const;
};

/// Precomputed partial derivatives of g with respect to z, q and p_i.
/// d/dp_i g = dg/dp_i + dg/dq * p_i / |p|.
class ZpJacobian {
 public:
  ZpJacobian(const Expr& g, int dimension);

  /// Throws DomainError where g is not differentiable: q present and p = 0,
  /// or abs present and (z, p) = (0, 0).
  ZpGradient operator()(std::span<const double> x, double z, std::span<const double> p) const;

  bool is_zero() const noexcept { return zero_; }

 private:
  int n_;
  bool uses_q_;
  bool uses_abs_;
  bool zero_;
  Expr dz_;
  Expr dq_;
  std::vector<Expr> dp_;
};

ZpGradient grad_zp(const Expr& g, std::span<const double> x, double z, std::span<const double> p);

/// Gradient in x of an expression of r and x_i only:
/// d/dx_i = de/dx_i + de/dr * x_i/|x| (the radial part is dropped at x = 0).
class SpatialGradient {
 public:
  SpatialGradient(const Expr& e, int dimension);
  std::vector<double> operator()(std::span<const double> x) const;
  /// de/dr for expressions of r alone.
  double radial(double r) const;

 private:
  int n_;
  Expr dr_;
  std::vector<Expr> dx_;
};

}  // namespace semilinear
