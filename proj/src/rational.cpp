#include "degloc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace degloc {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) throw std::invalid_argument("empty number");
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw std::invalid_argument("malformed rational '" + text + "'");
    Integer den(b);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    r = Rational(Integer(a), den);
    r.canonicalize();
  } else {
    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mant = s.substr(0, e);
      std::string ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
        eneg = ex[0] == '-';
        ex.erase(ex.begin());
      }
      if (!all_digits(ex) || ex.size() > 6) throw std::invalid_argument("malformed exponent in '" + text + "'");
      exp10 = std::stol(ex) * (eneg ? -1 : 1);
    }
    std::string ip = mant, fp;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
      ip = mant.substr(0, dot);
      fp = mant.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed number '" + text + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed number '" + text + "'");
    Integer num((ip.empty() ? "0" : ip) + fp);
    exp10 -= static_cast<long>(fp.size());
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    r = exp10 >= 0 ? Rational(num * pow10) : Rational(num, pow10);
    r.canonicalize();
  }
  return neg ? Rational(-r) : r;
}

std::string to_decimal(const Rational& q, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational a = abs(q) * scale;
  // round half up
  Integer n = (a.get_num() * 2 + a.get_den()) / (a.get_den() * 2);
  std::string s = n.get_str();
  if (s.size() <= digits) s = std::string(digits - s.size() + 1, '0') + s;
  std::string out = s.substr(0, s.size() - digits);
  if (digits) out += "." + s.substr(s.size() - digits);
  if (sgn(q) < 0 && n != 0) out = "-" + out;
  return out;
}

}  // namespace degloc
