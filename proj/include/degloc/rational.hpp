#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace degloc {

using Integer = mpz_class;
using Rational = mpq_class;

/// `num/den`, or just `num` for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses `-12`, `3/4` or a decimal literal such as `1.5e-6` exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Decimal expansion of q rounded to `digits` significant fractional digits.
std::string to_decimal(const Rational& q, unsigned digits);

using RationalVector = std::vector<Rational>;

}  // namespace degloc
