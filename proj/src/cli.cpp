#include "degloc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace degloc {

namespace {

using nlohmann::json;

std::string monomial(const Rational& c, const std::string& var, std::size_t k, bool first) {
  std::string s;
  Rational a = abs(c);
  if (first)
    s = sgn(c) < 0 ? "-" : "";
  else
    s = sgn(c) < 0 ? " - " : " + ";
  if (k == 0) return s + to_string(a);
  if (a != 1) s += to_string(a) + "*";
  s += var;
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

std::string linear_text(const std::vector<Rational>& u, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (sgn(u[j]) == 0) continue;
    s += monomial(u[j], vars[j], 1, s.empty());
  }
  return s.empty() ? "0" : s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> coeff_strings(const QPoly& p) {
  std::vector<std::string> v;
  for (const auto& c : p.coeffs()) v.push_back(to_string(c));
  return v;
}

struct Options {
  std::string task;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::string prime = "auto";
  std::string matrix_a;
  std::string verify = "on";
  unsigned precision = 10;
  std::string format = "text";
};

/// Everything the printers need, independent of the task.
struct Outcome {
  std::string task;
  std::vector<std::string> vars;
  std::optional<SolveResult> solve;
  std::vector<RealPoint> points;
  bool has_points = false;
  std::optional<std::size_t> cardinality;
  std::optional<std::vector<Rational>> target;
  std::optional<bool> member;
  std::optional<std::size_t> level;
};

QMatrix choose_a(const Options& o, const ProblemFile& pf, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (!o.matrix_a.empty() && o.matrix_a != "random") return parse_matrix(read_file(o.matrix_a));
  if (o.matrix_a.empty() && pf.a) return *pf.a;
  std::mt19937_64 rng(seed ^ 0xabcdefULL);
  return random_matrix(rows, cols, rng);
}

DegeneracyProblem problem_from_file(const ProblemFile& pf, const Options& o, std::uint64_t seed) {
  const std::size_t n = pf.n();
  std::size_t p = 0, s = 0;
  for (const auto& [kl, v] : pf.F) {
    p = std::max(p, kl.first + 1);
    s = std::max(s, kl.second + 1);
  }
  if (p == 0) throw ParseError("the matrix F has no entries", 1, 1);
  CircuitBuilder b(n);
  OutputGroups g;
  for (std::size_t k = 0; k < pf.eqs.size(); ++k)
    g.eqs.push_back(b.add_output(parse_polynomial(b, pf.eqs[k].text, pf.vars, pf.eqs[k].line, pf.eqs[k].column),
                                 "G" + std::to_string(k + 1)));
  if (pf.ineq) g.ineq = b.add_output(parse_polynomial(b, pf.ineq->text, pf.vars, pf.ineq->line, pf.ineq->column), "H");
  g.p = p;
  g.s = s;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < s; ++l) {
      auto it = pf.F.find({k, l});
      if (it == pf.F.end())
        throw ParseError("missing entry F[" + std::to_string(k + 1) + "][" + std::to_string(l + 1) + "]", 1, 1);
      const Located& e = it->second;
      g.F.push_back(b.add_output(parse_polynomial(b, e.text, pf.vars, e.line, e.column),
                                 "F" + std::to_string(k + 1) + "_" + std::to_string(l + 1)));
    }
  QMatrix a = choose_a(o, pf, s - p, s, seed);
  return DegeneracyProblem::from_circuit(b.build().with_groups(g), a, seed);
}

Outcome execute(const ProblemFile& pf, const Options& o) {
  Outcome out;
  out.task = !o.task.empty() ? o.task : (!pf.task.empty() ? pf.task : "degeneracy");
  out.vars = pf.vars;
  const std::uint64_t seed = o.seed ? *o.seed : (pf.seed ? *pf.seed : 1);
  std::string prime = o.prime;
  if (prime == "auto" && pf.prime) prime = *pf.prime;

  SolveOptions so;
  so.seed = seed;
  so.verify = o.verify == "on";
  if (prime != "auto") {
    std::uint64_t pv = std::stoull(prime);
    if (!is_prime(pv) || pv < 3) throw std::invalid_argument("--prime must be an odd prime");
    so.prime = pv;
  }
  const std::size_t n = pf.n();

  if (out.task == "degeneracy") {
    out.solve = solve(problem_from_file(pf, o, seed), so);
  } else if (out.task == "polar") {
    if (pf.eqs.empty()) throw ParseError("polar task needs 'eq' statements", 1, 1);
    PolarTask t;
    t.equations = circuit_from_located(pf.vars, pf.eqs, "G");
    t.change = pf.coords;
    if (!o.matrix_a.empty() || pf.a) t.a = choose_a(o, pf, n - pf.eqs.size(), n, seed);
    auto r = polar_sample_points(t, so, o.precision);
    out.solve = r.solve;
    out.points = r.points;
    out.has_points = !r.solve.report.modulus;
  } else if (out.task == "fiber") {
    if (pf.map.size() != n) throw ParseError("fiber task needs one 'map' statement per variable", 1, 1);
    std::optional<QMatrix> a;
    if (!o.matrix_a.empty() || pf.a) a = choose_a(o, pf, n, n + 1, seed);
    auto r = generic_fiber(circuit_from_located(pf.vars, pf.map, "F"), so, a);
    out.solve = r.solve;
    out.cardinality = r.cardinality;
    out.target = r.target;
  } else if (out.task == "homotopy") {
    if (pf.homotopy_f.size() != n || pf.homotopy_g.size() != n)
      throw ParseError("homotopy task needs n 'homotopy_f' and n 'homotopy_g' statements", 1, 1);
    std::optional<QMatrix> a;
    if (!o.matrix_a.empty() || pf.a) a = choose_a(o, pf, n, n + 2, seed);
    auto r = homotopy_count(circuit_from_located(pf.vars, pf.homotopy_f, "F"),
                            circuit_from_located(pf.vars, pf.homotopy_g, "G"), so, a);
    out.solve = r.solve;
    out.cardinality = r.count;
  } else if (out.task == "member") {
    auto prob = problem_from_file(pf, o, seed);
    if (!pf.minpoly) throw ParseError("member task needs a 'minpoly' statement", 1, 1);
    if (pf.point.size() != n) throw ParseError("member task needs one 'point' statement per variable", 1, 1);
    std::vector<QPoly> x;
    for (const auto& p : pf.point) x.push_back(parse_univariate(p));
    std::size_t level = pf.level ? *pf.level : std::max<std::size_t>(prob.r(), 1);
    out.level = level;
    out.member = membership_test(prob, level, parse_univariate(*pf.minpoly), x, seed);
  } else {
    throw std::invalid_argument("unknown task " + out.task);
  }
  return out;
}

void print_text(const Outcome& r, std::ostream& os) {
  os << "task: " << r.task << "\n";
  if (r.member) {
    os << "level: " << *r.level << "\n";
    os << "member: " << (*r.member ? "true" : "false") << "\n";
    return;
  }
  const SolveResult& s = *r.solve;
  const auto& g = s.resolution;
  if (s.report.modulus) os << "modulus: " << *s.report.modulus << "\n";
  if (g.empty()) {
    os << "EMPTY\n";
  } else {
    os << "degree: " << g.degree() << "\n";
    os << "u = " << linear_text(g.u, r.vars) << "\n";
    os << "P = " << poly_text(g.P) << "\n";
    for (std::size_t j = 0; j < g.Q.size(); ++j) os << r.vars[j] << " = " << poly_text(g.Q[j]) << "\n";
  }
  if (r.cardinality) os << (r.task == "fiber" ? "fiber cardinality: " : "solution count: ") << *r.cardinality << "\n";
  if (r.target) {
    os << "target:";
    for (const auto& t : *r.target) os << " " << to_string(t);
    os << "\n";
  }
  if (r.has_points) {
    os << "real points: " << r.points.size() << "\n";
    for (const auto& p : r.points) {
      os << "  T in [" << to_string(p.t.lo) << ", " << to_string(p.t.hi) << "]:";
      for (const auto& d : p.decimals) os << " " << d;
      os << "\n";
    }
  }
  const SolveReport& rep = s.report;
  os << "report:\n";
  os << "  V degrees:";
  for (auto d : rep.v_degrees) os << " " << d;
  os << "\n";
  for (std::size_t c = 0; c < rep.charts.size(); ++c) {
    const auto& ch = rep.charts[c];
    os << "  chart " << c + 1 << " (columns";
    for (auto k : ch.columns) os << " " << k + 1;
    os << "): deg V_Delta = " << ch.degrees[0];
    for (std::size_t i = 1; i < ch.degrees.size(); ++i) os << ", deg W(a_" << i << ") = " << ch.degrees[i];
    os << "\n";
    if (!ch.pre_clean.empty()) {
      os << "    before cleaning:";
      for (auto d : ch.pre_clean) os << " " << d;
      os << "\n";
    }
  }
  if (rep.skipped_charts) os << "  skipped charts: " << rep.skipped_charts << "\n";
  os << "  system degree: " << rep.system_degree << "\n";
  os << "  primes: " << rep.primes.size() << "\n";
  os << "  bad primes: " << rep.bad_primes.size() << "\n";
  os << "  attempts: " << rep.attempts << "\n";
  os << "  retries: " << rep.retries << "\n";
  os << "  verified: " << (rep.verified ? "yes" : "no") << "\n";
}

json report_json(const SolveReport& rep) {
  json j;
  j["v_degrees"] = rep.v_degrees;
  j["charts"] = json::array();
  for (const auto& c : rep.charts)
    j["charts"].push_back({{"columns", c.columns}, {"degrees", c.degrees}, {"pre_clean", c.pre_clean}});
  j["skipped_charts"] = rep.skipped_charts;
  j["system_degree"] = rep.system_degree;
  j["primes"] = rep.primes;
  j["bad_primes"] = rep.bad_primes;
  j["attempts"] = rep.attempts;
  j["retries"] = rep.retries;
  j["verified"] = rep.verified;
  if (rep.modulus) j["modulus"] = *rep.modulus;
  return j;
}

void print_json(const Outcome& r, std::ostream& os) {
  json j;
  j["task"] = r.task;
  if (r.member) {
    j["level"] = *r.level;
    j["member"] = *r.member;
    os << j.dump(2) << "\n";
    return;
  }
  const SolveResult& s = *r.solve;
  const auto& g = s.resolution;
  j["empty"] = g.empty();
  if (!g.empty()) {
    std::vector<std::string> u;
    for (const auto& x : g.u) u.push_back(to_string(x));
    j["u"] = u;
    j["P"] = coeff_strings(g.P);
    j["Q"] = json::array();
    for (const auto& q : g.Q) j["Q"].push_back(coeff_strings(q));
  }
  if (r.cardinality) j["count"] = *r.cardinality;
  if (r.target) {
    std::vector<std::string> t;
    for (const auto& x : *r.target) t.push_back(to_string(x));
    j["target"] = t;
  }
  if (r.has_points) {
    j["points"] = json::array();
    for (const auto& p : r.points)
      j["points"].push_back({{"t", {to_string(p.t.lo), to_string(p.t.hi)}}, {"coords", p.decimals}});
  }
  j["report"] = report_json(s.report);
  os << j.dump(2) << "\n";
}

}  // namespace

std::string poly_text(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t k = p.size(); k-- > 0;) {
    const Rational& c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    s += monomial(c, var, k, s.empty());
  }
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degeneracy loci of polynomial matrices over a variety"};
  Options o;
  std::uint64_t seed = 0;
  app.add_option("--task", o.task, "degeneracy, polar, fiber, homotopy or member")
      ->check(CLI::IsMember({"degeneracy", "polar", "fiber", "homotopy", "member"}));
  app.add_option("--input", o.input, "problem file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--prime", o.prime, "compute modulo this prime, or 'auto' for exact output");
  app.add_option("--matrix-a", o.matrix_a, "file with the matrix a, or 'random'");
  app.add_option("--verify", o.verify, "post-verification with the membership test")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--precision", o.precision, "decimal digits of real points");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (seed_opt->count()) o.seed = seed;
  if (o.prime != "auto" && o.prime.find_first_not_of("0123456789") != std::string::npos) {
    err << "error: --prime expects a number or 'auto'\n";
    return kExitParse;
  }

  try {
    ProblemFile pf = parse_problem(read_file(o.input));
    Outcome r = execute(pf, o);
    if (o.format == "json")
      print_json(r, out);
    else
      print_text(r, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << o.input << ":" << e.what() << "\n";
    return kExitParse;
  } catch (const PromiseViolationDetected& e) {
    err << "promise violation: " << e.what() << "\n";
    return kExitPromise;
  } catch (const NotOnVariety& e) {
    err << "not on the variety: " << e.what() << "\n";
    return kExitPromise;
  } catch (const RandomnessFailure& e) {
    err << "randomness exhausted: " << e.what() << "\n";
    return kExitRandomness;
  } catch (const InsufficientPrecision& e) {
    err << "randomness exhausted: " << e.what() << "\n";
    return kExitRandomness;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace degloc
