#include "degloc/kronecker.hpp"

namespace degloc {

Frame Frame::identity(std::size_t n) {
  Frame f;
  f.M = degloc::identity<Rational>(n);
  f.Minv = f.M;
  return f;
}

Frame Frame::from_inverse(const QMatrix& minv) {
  Frame f;
  f.Minv = minv;
  f.M = inverse(minv);
  return f;
}

Frame Frame::random(std::size_t n, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  QMatrix minv = degloc::identity<Rational>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) minv(i, j) = Rational(dist(rng));
  return from_inverse(minv);
}

std::string InvariantReport::describe() const {
  std::string s;
  auto add = [&](bool ok, const char* what) {
    if (ok) return;
    if (!s.empty()) s += ", ";
    s += what;
  };
  add(squarefree, "minimal polynomial not squarefree");
  add(residual, "nonzero residual");
  add(primitive, "primitive element does not reproduce T");
  add(jacobian, "singular Jacobian");
  return s.empty() ? "ok" : s;
}

namespace {
std::atomic<bool> g_audit{true};
}

AuditCounters& audit_counters() {
  static AuditCounters c;
  return c;
}
void set_audit_enabled(bool on) { g_audit = on; }
bool audit_enabled() { return g_audit; }

}  // namespace degloc
