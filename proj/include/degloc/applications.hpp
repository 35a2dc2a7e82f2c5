#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degloc/degeneracy.hpp"

namespace degloc {

/// Open interval (lo, hi) holding exactly one real root, or the exact
/// rational root lo == hi.
struct Interval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

/// Isolating intervals of the real roots of a separable P, in increasing
/// order (Descartes' rule of signs with bisection).
std::vector<Interval> isolate_real_roots(const QPoly& p);
/// Shrinks an isolating interval below the given width.
Interval refine(const QPoly& p, Interval iv, const Rational& width);
/// Number of distinct real roots by a Sturm sequence.
std::size_t sturm_count(const QPoly& p);
/// Number of distinct real roots in (lo, hi] by a Sturm sequence.
std::size_t sturm_count(const QPoly& p, const Rational& lo, const Rational& hi);

/// A real point of a geometric resolution: the root t of P in `t` and
/// decimal approximations of X_i = Q_i(t).
struct RealPoint {
  Interval t;
  std::vector<Rational> approx;
  std::vector<std::string> decimals;
};
std::vector<RealPoint> real_points(const GeometricResolution<Rational>& g, unsigned digits = 10);

/// Equations G_1..G_p over X_1..X_n; `change` replaces X by change * X.
struct PolarTask {
  Circuit equations;
  std::optional<QMatrix> change;
  std::optional<QMatrix> a;
};

struct PolarResult {
  DegeneracyProblem problem;
  SolveResult solve;
  std::vector<RealPoint> points;
};

/// Degeneracy problem of the generic polar variety: F = Jacobian of G and
/// H the sum of squares of the chart minors.
DegeneracyProblem polar_problem(const PolarTask& task, std::uint64_t seed, HittingSequence* hitting = nullptr);
/// One real point per real root of the resolution of the polar variety W(a_r).
PolarResult polar_sample_points(const PolarTask& task, const SolveOptions& opt = {}, unsigned digits = 10);

struct FiberResult {
  DegeneracyProblem problem;
  SolveResult solve;
  std::size_t cardinality = 0;
  std::vector<Rational> target;  // a_{1,1..n} / a_{1,n+1}
};

/// F = [F_1..F_n, 1] for the map Psi given by the outputs of `map`.
DegeneracyProblem fiber_problem(const Circuit& map, const QMatrix& a);
/// Empty when Psi is not dominant, otherwise the fiber over the generic point.
FiberResult generic_fiber(const Circuit& map, const SolveOptions& opt = {}, std::optional<QMatrix> a = std::nullopt);
/// Psi maps every point of the resolution to the target.
bool maps_to_target(const Circuit& map, const GeometricResolution<Rational>& g, const std::vector<Rational>& target);

struct HomotopyResult {
  DegeneracyProblem problem;
  SolveResult solve;
  std::size_t count = 0;
};

/// F = [F 1 0; G 0 1] for the systems F_1..F_n and G_1..G_n.
DegeneracyProblem homotopy_problem(const Circuit& f, const Circuit& g, const QMatrix& a);
HomotopyResult homotopy_count(const Circuit& f, const Circuit& g, const SolveOptions& opt = {},
                              std::optional<QMatrix> a = std::nullopt);

}  // namespace degloc
