#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "degloc/field.hpp"
#include "degloc/matrix.hpp"
#include "degloc/tangent.hpp"

namespace degloc {

enum class GateOp : std::uint8_t { Input, Const, Add, Sub, Mul, Neg, Scale };

/// Input: a = variable index. Const: b = constant index.
/// Scale: a = operand, b = constant index (multiplication by a rational).
struct Gate {
  GateOp op;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

/// Named output groups of a system circuit: equations G_1..G_q, an
/// inequation H and a p x s matrix F. Entries are indices into outputs().
struct OutputGroups {
  std::vector<std::size_t> eqs;
  std::size_t ineq = SIZE_MAX;
  std::size_t p = 0, s = 0;
  std::vector<std::size_t> F;  // row-major p x s

  bool has_ineq() const { return ineq != SIZE_MAX; }
  std::size_t f(std::size_t k, std::size_t l) const { return F.at(k * s + l); }
};

/// Essentially division-free straight-line program in n inputs.
///
/// Immutable after construction; safe to share between threads.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t n, std::vector<Gate> gates, std::vector<Rational> constants,
          std::vector<std::uint32_t> outputs, std::vector<std::string> names);

  std::size_t num_inputs() const { return n_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Rational>& constants() const { return constants_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  std::size_t num_outputs() const { return outputs_.size(); }
  const std::vector<std::string>& output_names() const { return names_; }
  /// Index of the output with the given name; throws std::out_of_range.
  std::size_t output_index(const std::string& name) const;

  const OutputGroups& groups() const { return groups_; }
  Circuit with_groups(OutputGroups g) const;

  /// Upper bounds on total degrees propagated through the gates.
  const std::vector<long>& degree_bounds() const { return out_deg_; }
  /// Declared or propagated bound d on the degrees of G and F.
  long degree_metadata() const { return declared_d_ >= 0 ? declared_d_ : propagated_system_degree(); }
  Circuit with_declared_degree(long d) const;
  /// Exact total degree of each output, computed by restriction to a random
  /// line modulo a 61-bit prime (correct with overwhelming probability).
  std::vector<long> exact_degrees(std::uint64_t seed = 1) const;

  /// Sub-circuit computing only the selected outputs, in the given order.
  Circuit select(const std::vector<std::size_t>& outs) const;

  /// Values of all outputs at x; `proto` provides the ring context.
  /// Throws DivisorNotInvertible when a constant has no image in the ring.
  template <class R>
  std::vector<R> evaluate(const std::vector<R>& x, const R& proto) const;

  /// Checks topological order and constant divisors.
  void validate() const;

 private:
  long propagated_system_degree() const;

  std::size_t n_ = 0;
  std::vector<Gate> gates_;
  std::vector<Rational> constants_;
  std::vector<std::uint32_t> outputs_;
  std::vector<std::string> names_;
  std::vector<long> out_deg_;
  OutputGroups groups_;
  long declared_d_ = -1;
};

template <class R>
std::vector<R> Circuit::evaluate(const std::vector<R>& x, const R& proto) const {
  using S = scalar_t<R>;
  if (x.size() != n_) throw std::invalid_argument("circuit evaluated at a point of wrong dimension");
  std::vector<S> cs;
  cs.reserve(constants_.size());
  for (const auto& q : constants_) cs.push_back(FieldTraits<S>::from_rational(q));
  std::vector<R> v;
  v.reserve(gates_.size());
  for (const Gate& g : gates_) {
    switch (g.op) {
      case GateOp::Input: v.push_back(x[g.a]); break;
      case GateOp::Const: v.push_back(scalar_like(proto, cs[g.b])); break;
      case GateOp::Add: v.push_back(v[g.a] + v[g.b]); break;
      case GateOp::Sub: v.push_back(v[g.a] - v[g.b]); break;
      case GateOp::Mul: v.push_back(v[g.a] * v[g.b]); break;
      case GateOp::Neg: v.push_back(-v[g.a]); break;
      case GateOp::Scale: v.push_back(scale(v[g.a], cs[g.b])); break;
    }
  }
  std::vector<R> out;
  out.reserve(outputs_.size());
  for (auto o : outputs_) out.push_back(v[o]);
  return out;
}

class CircuitBuilder;

/// Handle to a gate under construction; arithmetic appends gates.
class Expr {
 public:
  using scalar_type = Rational;

  Expr() = default;
  Expr(CircuitBuilder* b, std::uint32_t id) : b_(b), id_(id) {}

  CircuitBuilder* builder() const { return b_; }
  std::uint32_t id() const { return id_; }
  /// True when the gate folds to a known constant.
  bool is_constant() const;
  const Rational& constant_value() const;
  bool is_zero() const;

  Expr zero_like() const;
  Expr one_like() const;
  Expr scalar_like(const Rational& q) const;
  Expr scaled(const Rational& q) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  friend bool operator==(const Expr& a, const Expr& b) { return a.b_ == b.b_ && a.id_ == b.id_; }

 private:
  CircuitBuilder* b_ = nullptr;
  std::uint32_t id_ = 0;
};

/// Incremental construction with constant folding and structural sharing.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t n);
  /// Starts from a copy of an existing circuit; its outputs stay reachable
  /// through base_output().
  explicit CircuitBuilder(const Circuit& base);

  std::size_t num_inputs() const { return n_; }
  Expr input(std::size_t i);
  Expr constant(const Rational& q);
  Expr base_output(std::size_t k) const;
  std::vector<Expr> inputs();

  Expr add(Expr a, Expr b);
  Expr sub(Expr a, Expr b);
  Expr mul(Expr a, Expr b);
  Expr neg(Expr a);
  Expr scale(Expr a, const Rational& q);
  Expr pow(Expr a, unsigned long e);

  bool is_constant(std::uint32_t id) const { return const_of_.count(id) != 0; }
  const Rational& constant_value(std::uint32_t id) const { return constants_[const_of_.at(id)]; }

  /// Registers an output and returns its index.
  std::size_t add_output(Expr e, std::string name);
  Circuit build() const;

 private:
  std::uint32_t push(Gate g);
  std::uint32_t constant_index(const Rational& q);

  std::size_t n_;
  std::vector<Gate> gates_;
  std::vector<Rational> constants_;
  std::map<Rational, std::uint32_t> const_index_;
  std::unordered_map<std::uint32_t, std::uint32_t> const_of_;  // gate -> constant index
  std::map<std::tuple<int, std::uint32_t, std::uint32_t>, std::uint32_t> memo_;
  std::vector<std::uint32_t> inputs_;
  std::vector<std::uint32_t> base_outputs_;
  std::vector<std::uint32_t> outputs_;
  std::vector<std::string> names_;
};

/// Division-free determinant of a square matrix of expressions.
Expr determinant(CircuitBuilder& b, const Matrix<Expr>& m);

/// Copies the gates of `c` into `b` with the inputs replaced by `subst`
/// and returns the expressions of its outputs.
std::vector<Expr> inline_circuit(CircuitBuilder& b, const Circuit& c, const std::vector<Expr>& subst);

/// Values of the selected outputs and their Jacobian with respect to the
/// inputs: jac(k, j) = d out_k / d X_j.
template <class R>
std::pair<std::vector<R>, Matrix<R>> jacobian_evaluate(const Circuit& c, const std::vector<R>& x,
                                                       const std::vector<std::size_t>& outs,
                                                       const R& proto) {
  const std::size_t n = c.num_inputs();
  Circuit sub = c.select(outs);
  std::vector<Tangent<R>> tx;
  tx.reserve(n);
  for (std::size_t j = 0; j < n; ++j) tx.push_back(Tangent<R>::variable(x[j], n, j));
  auto vals = sub.evaluate(tx, Tangent<R>::constant(proto, n));
  std::vector<R> v;
  Matrix<R> jac(outs.size(), n, zero_like(proto));
  for (std::size_t k = 0; k < vals.size(); ++k) {
    v.push_back(vals[k].value());
    for (std::size_t j = 0; j < n; ++j) jac(k, j) = vals[k].d(j);
  }
  return {std::move(v), std::move(jac)};
}

/// Circuit whose outputs are d out_k / d X_j for the selected outputs,
/// ordered k-major; output names are "d<name>/dX<j+1>".
Circuit jacobian_circuit(const Circuit& c, const std::vector<std::size_t>& outs);

/// Parses a polynomial expression over the named variables into `b`.
/// Grammar: + - * ^ (non-negative integer exponents), division by constant
/// subexpressions, parentheses, integer/decimal/rational literals.
/// Errors carry positions relative to (line, column) of the first char.
Expr parse_polynomial(CircuitBuilder& b, const std::string& text, const std::vector<std::string>& vars,
                      std::size_t line = 1, std::size_t column = 1);

/// Builds a circuit from polynomial strings over variables X1..Xn.
Circuit circuit_from_strings(std::size_t n, const std::vector<std::string>& polys,
                             const std::vector<std::string>& names = {});

/// Default variable names X1..Xn.
std::vector<std::string> default_variables(std::size_t n);

}  // namespace degloc
