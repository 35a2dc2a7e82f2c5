#include "degloc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

#include "degloc/upoly.hpp"

namespace degloc {

Circuit::Circuit(std::size_t n, std::vector<Gate> gates, std::vector<Rational> constants,
                 std::vector<std::uint32_t> outputs, std::vector<std::string> names)
    : n_(n),
      gates_(std::move(gates)),
      constants_(std::move(constants)),
      outputs_(std::move(outputs)),
      names_(std::move(names)) {
  names_.resize(outputs_.size());
  validate();
  std::vector<long> deg(gates_.size(), 0);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.op) {
      case GateOp::Input: deg[i] = 1; break;
      case GateOp::Const: deg[i] = 0; break;
      case GateOp::Add:
      case GateOp::Sub: deg[i] = std::max(deg[g.a], deg[g.b]); break;
      case GateOp::Mul: deg[i] = deg[g.a] + deg[g.b]; break;
      case GateOp::Neg:
      case GateOp::Scale: deg[i] = deg[g.a]; break;
    }
  }
  for (auto o : outputs_) out_deg_.push_back(deg[o]);
}

void Circuit::validate() const {
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.op) {
      case GateOp::Input:
        if (g.a >= n_) throw std::invalid_argument("circuit input index out of range");
        break;
      case GateOp::Const:
        if (g.b >= constants_.size()) throw std::invalid_argument("circuit constant index out of range");
        break;
      case GateOp::Scale:
        if (g.b >= constants_.size() || g.a >= i) throw std::invalid_argument("malformed scale gate");
        break;
      case GateOp::Neg:
        if (g.a >= i) throw std::invalid_argument("circuit is not topologically ordered");
        break;
      default:
        if (g.a >= i || g.b >= i) throw std::invalid_argument("circuit is not topologically ordered");
    }
  }
  for (auto o : outputs_)
    if (o >= gates_.size()) throw std::invalid_argument("circuit output index out of range");
}

std::size_t Circuit::output_index(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  throw std::out_of_range("no circuit output named " + name);
}

Circuit Circuit::with_groups(OutputGroups g) const {
  auto check = [&](std::size_t k) {
    if (k >= outputs_.size()) throw std::invalid_argument("output group refers to a missing output");
  };
  for (auto k : g.eqs) check(k);
  if (g.has_ineq()) check(g.ineq);
  if (g.F.size() != g.p * g.s) throw std::invalid_argument("matrix group has wrong size");
  for (auto k : g.F) check(k);
  Circuit c(*this);
  c.groups_ = std::move(g);
  return c;
}

Circuit Circuit::with_declared_degree(long d) const {
  Circuit c(*this);
  c.declared_d_ = d;
  return c;
}

long Circuit::propagated_system_degree() const {
  long d = 0;
  for (auto k : groups_.eqs) d = std::max(d, out_deg_[k]);
  for (auto k : groups_.F) d = std::max(d, out_deg_[k]);
  if (groups_.eqs.empty() && groups_.F.empty())
    for (auto x : out_deg_) d = std::max(d, x);
  return d;
}

std::vector<long> Circuit::exact_degrees(std::uint64_t seed) const {
  PrimeScope scope(2305843009213693951ULL);
  std::mt19937_64 rng(seed);
  std::vector<ZpPoly> x;
  for (std::size_t j = 0; j < n_; ++j) x.push_back(ZpPoly({Zp(rng()), Zp(rng() | 1)}));
  std::vector<long> r;
  for (auto& v : evaluate(x, ZpPoly())) r.push_back(v.degree());
  return r;
}

Circuit Circuit::select(const std::vector<std::size_t>& outs) const {
  std::vector<char> live(gates_.size(), 0);
  for (auto k : outs) live.at(outputs_.at(k)) = 1;
  for (std::size_t i = gates_.size(); i-- > 0;) {
    if (!live[i]) continue;
    const Gate& g = gates_[i];
    switch (g.op) {
      case GateOp::Input:
      case GateOp::Const: break;
      case GateOp::Neg:
      case GateOp::Scale: live[g.a] = 1; break;
      default: live[g.a] = live[g.b] = 1;
    }
  }
  std::vector<std::uint32_t> remap(gates_.size(), 0);
  std::vector<Gate> ng;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (!live[i]) continue;
    Gate g = gates_[i];
    switch (g.op) {
      case GateOp::Input:
      case GateOp::Const: break;
      case GateOp::Neg:
      case GateOp::Scale: g.a = remap[g.a]; break;
      default:
        g.a = remap[g.a];
        g.b = remap[g.b];
    }
    remap[i] = static_cast<std::uint32_t>(ng.size());
    ng.push_back(g);
  }
  std::vector<std::uint32_t> no;
  std::vector<std::string> nn;
  for (auto k : outs) {
    no.push_back(remap[outputs_[k]]);
    nn.push_back(names_[k]);
  }
  return Circuit(n_, std::move(ng), constants_, std::move(no), std::move(nn));
}

// ---------------------------------------------------------------- builder

bool Expr::is_constant() const { return b_->is_constant(id_); }
const Rational& Expr::constant_value() const { return b_->constant_value(id_); }
bool Expr::is_zero() const { return is_constant() && sgn(constant_value()) == 0; }
Expr Expr::zero_like() const { return b_->constant(0); }
Expr Expr::one_like() const { return b_->constant(1); }
Expr Expr::scalar_like(const Rational& q) const { return b_->constant(q); }
Expr Expr::scaled(const Rational& q) const { return b_->scale(*this, q); }
Expr operator+(const Expr& a, const Expr& b) { return a.b_->add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return a.b_->sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return a.b_->mul(a, b); }
Expr operator-(const Expr& a) { return a.b_->neg(a); }

CircuitBuilder::CircuitBuilder(std::size_t n) : n_(n) {}

CircuitBuilder::CircuitBuilder(const Circuit& base) : n_(base.num_inputs()) {
  std::vector<Expr> x = inputs();
  for (auto& e : inline_circuit(*this, base, x)) base_outputs_.push_back(e.id());
}

std::uint32_t CircuitBuilder::push(Gate g) {
  auto key = std::make_tuple(static_cast<int>(g.op), g.a, g.b);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(gates_.size());
  gates_.push_back(g);
  memo_.emplace(key, id);
  return id;
}

std::uint32_t CircuitBuilder::constant_index(const Rational& q) {
  auto it = const_index_.find(q);
  if (it != const_index_.end()) return it->second;
  auto k = static_cast<std::uint32_t>(constants_.size());
  constants_.push_back(q);
  const_index_.emplace(q, k);
  return k;
}

Expr CircuitBuilder::input(std::size_t i) {
  if (i >= n_) throw std::out_of_range("builder input index out of range");
  return Expr(this, push({GateOp::Input, static_cast<std::uint32_t>(i), 0}));
}

std::vector<Expr> CircuitBuilder::inputs() {
  std::vector<Expr> x;
  for (std::size_t i = 0; i < n_; ++i) x.push_back(input(i));
  return x;
}

Expr CircuitBuilder::constant(const Rational& q) {
  std::uint32_t k = constant_index(q);
  std::uint32_t id = push({GateOp::Const, 0, k});
  const_of_[id] = k;
  return Expr(this, id);
}

Expr CircuitBuilder::base_output(std::size_t k) const {
  return Expr(const_cast<CircuitBuilder*>(this), base_outputs_.at(k));
}

Expr CircuitBuilder::add(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.id() > b.id()) std::swap(a, b);
  return Expr(this, push({GateOp::Add, a.id(), b.id()}));
}

Expr CircuitBuilder::sub(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() - b.constant_value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(b);
  if (a.id() == b.id()) return constant(0);
  return Expr(this, push({GateOp::Sub, a.id(), b.id()}));
}

Expr CircuitBuilder::mul(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() * b.constant_value());
  if (a.is_constant()) std::swap(a, b);
  if (b.is_constant()) return scale(a, b.constant_value());
  if (a.id() > b.id()) std::swap(a, b);
  return Expr(this, push({GateOp::Mul, a.id(), b.id()}));
}

Expr CircuitBuilder::neg(Expr a) {
  if (a.is_constant()) return constant(-a.constant_value());
  const Gate& g = gates_[a.id()];
  if (g.op == GateOp::Neg) return Expr(this, g.a);
  return Expr(this, push({GateOp::Neg, a.id(), 0}));
}

Expr CircuitBuilder::scale(Expr a, const Rational& q) {
  if (sgn(q) == 0) return constant(0);
  if (a.is_constant()) return constant(a.constant_value() * q);
  if (q == 1) return a;
  if (q == -1) return neg(a);
  const Gate g = gates_[a.id()];
  if (g.op == GateOp::Scale) return scale(Expr(this, g.a), q * constants_[g.b]);
  return Expr(this, push({GateOp::Scale, a.id(), constant_index(q)}));
}

Expr CircuitBuilder::pow(Expr a, unsigned long e) {
  Expr r = constant(1);
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

std::size_t CircuitBuilder::add_output(Expr e, std::string name) {
  outputs_.push_back(e.id());
  names_.push_back(std::move(name));
  return outputs_.size() - 1;
}

Circuit CircuitBuilder::build() const { return Circuit(n_, gates_, constants_, outputs_, names_); }

std::vector<Expr> inline_circuit(CircuitBuilder& b, const Circuit& c, const std::vector<Expr>& subst) {
  if (subst.size() != c.num_inputs()) throw std::invalid_argument("substitution has wrong length");
  Expr proto = b.constant(0);
  return c.evaluate(subst, proto);
}

Expr determinant(CircuitBuilder& b, const Matrix<Expr>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  return det_berkowitz(m, b.constant(1));
}

Circuit jacobian_circuit(const Circuit& c, const std::vector<std::size_t>& outs) {
  const std::size_t n = c.num_inputs();
  CircuitBuilder b(n);
  std::vector<Tangent<Expr>> x;
  for (std::size_t j = 0; j < n; ++j) x.push_back(Tangent<Expr>::variable(b.input(j), n, j));
  Circuit sub = c.select(outs);
  auto vals = sub.evaluate(x, Tangent<Expr>::constant(b.constant(0), n));
  for (std::size_t k = 0; k < vals.size(); ++k)
    for (std::size_t j = 0; j < n; ++j)
      b.add_output(vals[k].d(j), "d" + sub.output_names()[k] + "/dX" + std::to_string(j + 1));
  return b.build();
}

std::vector<std::string> default_variables(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("X" + std::to_string(i));
  return v;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(CircuitBuilder& b, const std::string& s, const std::vector<std::string>& vars, std::size_t line,
             std::size_t col)
      : b_(b), s_(s), vars_(vars), line0_(line), col0_(col) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = line0_, col = col0_;
    for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      skip();
      if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') return e;  // handled in power
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        std::size_t at = i_;
        Expr d = unary();
        if (!d.is_constant()) {
          i_ = at;
          fail("division by a non-constant expression");
        }
        if (sgn(d.constant_value()) == 0) {
          i_ = at;
          fail("division by zero");
        }
        e = b_.scale(e, 1 / d.constant_value());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    skip();
    bool caret = false;
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      caret = true;
    } else if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') {
      i_ += 2;
      caret = true;
    }
    if (!caret) return base;
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected a non-negative integer exponent");
    if (i_ - st > 6) fail("exponent too large");
    unsigned long e = std::stoul(s_.substr(st, i_ - st));
    return b_.pow(base, e);
  }

  Expr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(st, i_ - st);
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) return b_.input(k);
      i_ = st;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t save = i_;
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      } else {
        i_ = save;
      }
    }
    std::string lit = s_.substr(st, i_ - st);
    try {
      return b_.constant(parse_rational(lit));
    } catch (const std::invalid_argument&) {
      i_ = st;
      fail("malformed number '" + lit + "'");
    }
  }

  CircuitBuilder& b_;
  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t line0_, col0_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse_polynomial(CircuitBuilder& b, const std::string& text, const std::vector<std::string>& vars,
                      std::size_t line, std::size_t column) {
  return PolyParser(b, text, vars, line, column).parse();
}

Circuit circuit_from_strings(std::size_t n, const std::vector<std::string>& polys,
                             const std::vector<std::string>& names) {
  CircuitBuilder b(n);
  auto vars = default_variables(n);
  for (std::size_t k = 0; k < polys.size(); ++k) {
    Expr e = parse_polynomial(b, polys[k], vars);
    b.add_output(e, k < names.size() ? names[k] : "f" + std::to_string(k + 1));
  }
  return b.build();
}

}  // namespace degloc
