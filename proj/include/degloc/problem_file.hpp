#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degloc/circuit.hpp"
#include "degloc/upoly.hpp"

namespace degloc {

/// A piece of source text and where it starts.
struct Located {
  std::string text;
  std::size_t line = 1, column = 1;
};

/// Problem description read from a `;`-separated statement file.
///
///   vars X1 X2 X3;          eq <poly>;        ineq <poly>;
///   F[k][l] = <poly>;       a = [[1,2],[3,4]];  task = degeneracy;
///   seed = 7;               prime = auto;
///   map <poly>;             (fiber)   homotopy_f <poly>; homotopy_g <poly>;
///   coords = [[...]];       (polar)   minpoly <poly in T>; point <poly in T>; level = 2;
///
/// `#` starts a comment that runs to the end of the line.
struct ProblemFile {
  std::string task;
  std::vector<std::string> vars;
  std::vector<Located> eqs;
  std::optional<Located> ineq;
  std::map<std::pair<std::size_t, std::size_t>, Located> F;
  std::optional<QMatrix> a;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> prime;
  std::vector<Located> map;
  std::vector<Located> homotopy_f, homotopy_g;
  std::optional<QMatrix> coords;
  std::optional<Located> minpoly;
  std::vector<Located> point;
  std::optional<std::size_t> level;

  std::size_t n() const { return vars.size(); }
};

/// Throws ParseError with the line and column of the offending text.
ProblemFile parse_problem(const std::string& text);

/// `[[1, 2/3], [4, -5]]`; throws ParseError.
QMatrix parse_matrix(const std::string& text, std::size_t line = 1, std::size_t column = 1);

/// Circuit with one output per expression over the file's variables.
Circuit circuit_from_located(const std::vector<std::string>& vars, const std::vector<Located>& polys,
                             const std::string& prefix);

/// Univariate polynomial in T; throws ParseError.
QPoly parse_univariate(const Located& src);

}  // namespace degloc
