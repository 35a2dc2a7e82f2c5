#include "degloc/problem_file.hpp"

#include <algorithm>
#include <cctype>

#include "degloc/errors.hpp"

namespace degloc {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0, line = 1, col = 1;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(s[i]))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  Located rest() {
    skip_space();
    return {s.substr(i), line, col};
  }
  std::string word() {
    std::string w;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      w += s[i];
      advance();
    }
    return w;
  }
};

std::string trim(const std::string& t) {
  std::size_t a = t.find_first_not_of(" \t\r\n"), b = t.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
}

std::size_t parse_index(Cursor& c) {
  c.expect('[');
  c.skip_space();
  std::string w = c.word();
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) c.fail("expected a positive index");
  std::size_t k = std::stoul(w);
  if (k == 0) c.fail("indices start at 1");
  c.expect(']');
  return k;
}

}  // namespace

QMatrix parse_matrix(const std::string& text, std::size_t line, std::size_t column) {
  Cursor c{text, 0, line, column};
  std::vector<std::vector<Rational>> rows;
  c.expect('[');
  for (;;) {
    c.expect('[');
    std::vector<Rational> row;
    for (;;) {
      c.skip_space();
      std::size_t l0 = c.line, c0 = c.col;
      std::string num;
      while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '/' ||
                           c.peek() == '.' || c.peek() == '-' || c.peek() == '+')) {
        num += c.peek();
        c.advance();
      }
      try {
        row.push_back(parse_rational(num));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad matrix entry '" + num + "'", l0, c0);
      }
      c.skip_space();
      if (c.peek() == ',') {
        c.advance();
        continue;
      }
      c.expect(']');
      break;
    }
    if (!rows.empty() && row.size() != rows[0].size()) c.fail("rows of different lengths");
    rows.push_back(std::move(row));
    c.skip_space();
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    c.expect(']');
    break;
  }
  c.skip_space();
  if (!c.done()) c.fail("unexpected text after matrix");
  QMatrix m(rows.size(), rows[0].size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Circuit circuit_from_located(const std::vector<std::string>& vars, const std::vector<Located>& polys,
                             const std::string& prefix) {
  CircuitBuilder b(vars.size());
  for (std::size_t k = 0; k < polys.size(); ++k)
    b.add_output(parse_polynomial(b, polys[k].text, vars, polys[k].line, polys[k].column),
                 prefix + std::to_string(k + 1));
  return b.build();
}

QPoly parse_univariate(const Located& src) {
  CircuitBuilder b(1);
  b.add_output(parse_polynomial(b, src.text, {"T"}, src.line, src.column), "f");
  Circuit c = b.build();
  return c.evaluate(std::vector<QPoly>{QPoly({Rational(0), Rational(1)})}, QPoly())[0];
}

ProblemFile parse_problem(const std::string& input) {
  // blank out comments so positions stay valid
  std::string text = input;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '#')
      while (i < text.size() && text[i] != '\n') text[i++] = ' ';

  ProblemFile pf;
  Cursor all{text};
  std::vector<Located> polys_to_check;
  std::vector<Located> univariate_to_check;
  while (true) {
    all.skip_space();
    if (all.done()) break;
    std::size_t start = all.i, line = all.line, col = all.col;
    while (!all.done() && all.peek() != ';') all.advance();
    if (all.done()) throw ParseError("missing ';' after statement", line, col);
    std::string stmt = text.substr(start, all.i - start);
    all.advance();

    Cursor c{stmt, 0, line, col};
    std::string key = c.word();
    if (key.empty()) c.fail("expected a keyword");
    auto assignment = [&]() {
      c.expect('=');
      Located r = c.rest();
      r.text = trim(r.text);
      if (r.text.empty()) c.fail("missing value");
      return r;
    };
    auto body = [&]() {
      Located r = c.rest();
      if (trim(r.text).empty()) c.fail("missing polynomial");
      return r;
    };
    if (key == "vars") {
      c.skip_space();
      while (!c.done()) {
        std::string v = c.word();
        if (v.empty()) c.fail("bad variable name");
        pf.vars.push_back(v);
        c.skip_space();
        if (c.peek() == ',') c.advance();
        c.skip_space();
      }
      if (pf.vars.empty()) c.fail("no variables");
    } else if (key == "eq") {
      pf.eqs.push_back(body());
      polys_to_check.push_back(pf.eqs.back());
    } else if (key == "ineq") {
      pf.ineq = body();
      polys_to_check.push_back(*pf.ineq);
    } else if (key == "map") {
      pf.map.push_back(body());
      polys_to_check.push_back(pf.map.back());
    } else if (key == "homotopy_f") {
      pf.homotopy_f.push_back(body());
      polys_to_check.push_back(pf.homotopy_f.back());
    } else if (key == "homotopy_g") {
      pf.homotopy_g.push_back(body());
      polys_to_check.push_back(pf.homotopy_g.back());
    } else if (key == "point") {
      pf.point.push_back(body());
      univariate_to_check.push_back(pf.point.back());
    } else if (key == "minpoly") {
      pf.minpoly = body();
      univariate_to_check.push_back(*pf.minpoly);
    } else if (key == "F") {
      std::size_t k = parse_index(c), l = parse_index(c);
      Located v = assignment();
      pf.F[{k - 1, l - 1}] = v;
      polys_to_check.push_back(v);
    } else if (key == "a" || key == "coords") {
      Located v = assignment();
      QMatrix m = parse_matrix(v.text, v.line, v.column);
      (key == "a" ? pf.a : pf.coords) = m;
    } else if (key == "task") {
      Located v = assignment();
      static const std::vector<std::string> tasks{"degeneracy", "polar", "fiber", "homotopy", "member"};
      if (std::find(tasks.begin(), tasks.end(), v.text) == tasks.end())
        throw ParseError("unknown task '" + v.text + "'", v.line, v.column);
      pf.task = v.text;
    } else if (key == "seed" || key == "level") {
      Located v = assignment();
      if (v.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a non-negative integer", v.line, v.column);
      if (key == "seed")
        pf.seed = std::stoull(v.text);
      else
        pf.level = std::stoul(v.text);
    } else if (key == "prime") {
      Located v = assignment();
      if (v.text != "auto" && v.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a prime or 'auto'", v.line, v.column);
      pf.prime = v.text;
    } else {
      throw ParseError("unknown statement '" + key + "'", line, col);
    }
  }
  if (pf.vars.empty()) throw ParseError("missing 'vars' statement", 1, 1);
  for (const auto& p : polys_to_check) {
    CircuitBuilder b(pf.vars.size());
    parse_polynomial(b, p.text, pf.vars, p.line, p.column);
  }
  for (const auto& p : univariate_to_check) parse_univariate(p);
  return pf;
}

}  // namespace degloc
