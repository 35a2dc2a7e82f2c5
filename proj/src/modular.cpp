#include "degloc/modular.hpp"

#include "degloc/errors.hpp"

namespace degloc {

Integer crt(const Integer& a, const Integer& m1, const Integer& b, const Integer& m2) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
    throw InconsistentResidues("CRT moduli are not coprime");
  Integer k = ((b - a) % m2) * inv % m2;
  if (k < 0) k += m2;
  Integer x = a + m1 * k;
  Integer m = m1 * m2;
  x %= m;
  if (x < 0) x += m;
  return x;
}

std::optional<Rational> rational_reconstruction(const Integer& r, const Integer& m) {
  // Half-extended Euclid on (m, r) stopped at the first remainder below the bound.
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Integer t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  return q;
}

std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  Integer inv, d(static_cast<unsigned long>(den)), pp(static_cast<unsigned long>(p));
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
  Integer x = (Integer(static_cast<unsigned long>(num)) * inv) % pp;
  return x.get_ui();
}

void RationalReconstructor::add(std::uint64_t prime, const std::vector<std::uint64_t>& residues) {
  if (!primes_.empty() && residues.size() != acc_.size())
    throw InconsistentResidues("residue vectors of different lengths");
  for (auto p : primes_)
    if (p == prime) throw InconsistentResidues("prime used twice");
  Integer pm(static_cast<unsigned long>(prime));
  if (primes_.empty()) {
    acc_.clear();
    for (auto r : residues) acc_.emplace_back(static_cast<unsigned long>(r));
  } else {
    for (std::size_t i = 0; i < residues.size(); ++i)
      acc_[i] = crt(acc_[i], modulus_, Integer(static_cast<unsigned long>(residues[i])), pm);
  }
  modulus_ *= pm;
  primes_.push_back(prime);
}

std::optional<std::vector<Rational>> RationalReconstructor::try_reconstruct() const {
  std::vector<Rational> out;
  out.reserve(acc_.size());
  for (const auto& a : acc_) {
    auto q = rational_reconstruction(a, modulus_);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

std::vector<Rational> RationalReconstructor::reconstruct() const {
  auto r = try_reconstruct();
  if (!r) throw InsufficientPrecision("modulus too small for rational reconstruction");
  return *r;
}

bool reduces_to(const std::vector<Rational>& values, std::uint64_t p, const std::vector<std::uint64_t>& residues) {
  if (values.size() != residues.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto r = reduce_mod(values[i], p);
    if (!r || *r != residues[i]) return false;
  }
  return true;
}

QPoly reconstruct_polynomial(const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>& images) {
  if (images.empty()) throw InsufficientPrecision("no residues");
  RationalReconstructor rr;
  for (const auto& [p, c] : images) {
    if (c.size() != images.front().second.size()) throw InconsistentResidues("degree mismatch between primes");
    rr.add(p, c);
  }
  return QPoly(rr.reconstruct());
}

}  // namespace degloc
