#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "degloc/rational.hpp"
#include "degloc/upoly.hpp"

namespace degloc {

/// Smallest non-negative x with x = a mod m1 and x = b mod m2 (coprime moduli).
Integer crt(const Integer& a, const Integer& m1, const Integer& b, const Integer& m2);

/// Rational a/b with |a|, b <= sqrt(m/2) and a = b r mod m, if one exists.
std::optional<Rational> rational_reconstruction(const Integer& r, const Integer& m);

/// Image of q modulo p, or nullopt when p divides the denominator.
std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p);

/// Accumulates residue vectors modulo distinct primes and reconstructs the
/// rational vector they come from.
class RationalReconstructor {
 public:
  /// Adds the images modulo a new prime. Throws InconsistentResidues when
  /// the length differs from earlier images.
  void add(std::uint64_t prime, const std::vector<std::uint64_t>& residues);

  std::size_t num_primes() const { return primes_.size(); }
  const Integer& modulus() const { return modulus_; }

  /// Reconstructs every entry; throws InsufficientPrecision when some entry
  /// has no reconstruction at the current modulus.
  std::vector<Rational> reconstruct() const;
  /// Like reconstruct() but returns nullopt instead of throwing.
  std::optional<std::vector<Rational>> try_reconstruct() const;

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<Integer> acc_;
  Integer modulus_ = 1;
};

/// True when every entry of `values` reduces to `residues` modulo p.
bool reduces_to(const std::vector<Rational>& values, std::uint64_t p, const std::vector<std::uint64_t>& residues);

/// CRT and rational reconstruction of a polynomial from its images modulo
/// pairwise distinct primes. Throws InconsistentResidues on degree
/// mismatch and InsufficientPrecision when the primes do not suffice.
QPoly reconstruct_polynomial(const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>& images);

}  // namespace degloc
