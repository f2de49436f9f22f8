#pragma once

// 3-CNF formulas and a small complete SAT solver (DPLL with unit
// propagation), plus DIMACS parsing.  Used by the hardness reduction to
// decide instances before attempting to synthesize a witness morph.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace obmorph {

// A literal is a nonzero integer: +v means variable v, -v its negation.
// Variables are numbered 1..num_vars.  Every clause has exactly three
// literals; repeated literals within a clause are permitted.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  void check() const {
    for (const auto& cl : clauses)
      for (int lit : cl) {
        if (lit == 0 || std::abs(lit) > num_vars)
          throw std::invalid_argument("CnfFormula: literal out of range");
      }
  }
};

// Total truth assignment, indexed by variable number.
struct Assignment {
  std::vector<bool> value;  // value[v] for v in 1..num_vars; index 0 unused

  bool satisfies(const CnfFormula& f) const {
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (int lit : cl) {
        int v = std::abs(lit);
        if (v >= static_cast<int>(value.size())) return false;
        if (value[v] == (lit > 0)) { sat = true; break; }
      }
      if (!sat) return false;
    }
    return true;
  }
};

namespace dpll_detail {

inline int count_if_same(const std::array<int, 3>& cl, int lit) {
  int k = 0;
  for (int l : cl)
    if (l == lit) ++k;
  return k;
}

// Values: 0 unassigned, +1 true, -1 false.
inline bool solve_rec(const CnfFormula& f, std::vector<int>& val) {
  // Unit propagation to fixpoint.
  std::vector<std::pair<int, int>> trail;  // (var, previous value)
  auto undo = [&] {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it)
      val[it->first] = it->second;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& cl : f.clauses) {
      int unassigned = 0, last = 0;
      bool sat = false;
      for (int lit : cl) {
        int v = std::abs(lit), want = lit > 0 ? 1 : -1;
        if (val[v] == want) { sat = true; break; }
        if (val[v] == 0) { ++unassigned; last = lit; }
      }
      if (sat) continue;
      if (unassigned == 0) { undo(); return false; }  // conflict
      if (unassigned == 1 || (last != 0 && unassigned == count_if_same(cl, last))) {
        // Unit clause (all unassigned occurrences are the same literal).
        int v = std::abs(last);
        trail.emplace_back(v, val[v]);
        val[v] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  // Pick a branching variable.
  int branch = 0;
  for (int v = 1; v <= f.num_vars && branch == 0; ++v)
    if (val[v] == 0) branch = v;
  if (branch == 0) return true;  // all assigned, no conflict: satisfied
  for (int guess : {1, -1}) {
    val[branch] = guess;
    if (solve_rec(f, val)) return true;
  }
  val[branch] = 0;
  undo();
  return false;
}

}  // namespace dpll_detail

// Complete decision procedure.  Returns a satisfying total assignment if one
// exists (unassigned leftovers default to false), std::nullopt otherwise.
// A formula with no clauses is trivially satisfiable.
inline std::optional<Assignment> dpll_solve(const CnfFormula& f) {
  f.check();
  std::vector<int> val(f.num_vars + 1, 0);
  if (!dpll_detail::solve_rec(f, val)) return std::nullopt;
  Assignment a;
  a.value.assign(f.num_vars + 1, false);
  for (int v = 1; v <= f.num_vars; ++v) a.value[v] = val[v] > 0;
  if (!a.satisfies(f)) throw std::logic_error("dpll_solve: bad model");
  return a;
}

// DIMACS CNF reader.  Accepts "c" comment lines and a "p cnf <vars> <clauses>"
// header; every clause must be a zero-terminated triple of literals.
inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  std::size_t expected_clauses = 0;
  std::string line;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> f.num_vars >> expected_clauses) || fmt != "cnf")
        throw std::invalid_argument("DIMACS: malformed problem line");
      have_header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw std::invalid_argument("DIMACS: clause must have exactly 3 literals");
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!have_header) throw std::invalid_argument("DIMACS: missing problem line");
  if (!pending.empty()) throw std::invalid_argument("DIMACS: unterminated clause");
  if (f.clauses.size() != expected_clauses)
    throw std::invalid_argument("DIMACS: clause count mismatch");
  f.check();
  return f;
}

inline std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& cl : f.clauses)
    out << cl[0] << " " << cl[1] << " " << cl[2] << " 0\n";
  return out.str();
}

}  // namespace obmorph
