// Copyright 2026 The qbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qbound/sdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>

#include "qbound/errors.hpp"

extern "C" {
#include "scs.h"
}

namespace qbound {

std::string to_string(Direction d) { return d == Direction::lower ? "lower" : "upper"; }

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::optimal: return "optimal";
    case SolverStatus::near_optimal: return "near_optimal";
    case SolverStatus::infeasible: return "infeasible";
    case SolverStatus::unbounded: return "unbounded";
    case SolverStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFixedTol = 1e-13;
constexpr double kConstantTol = 1e-9;

double checked_real(Complex c, const PauliString& p) {
  if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c))) {
    throw DomainError("objective or band coefficient on " + p.str() + " is not real");
  }
  return c.real();
}

bool is_odd(const MomentRegistry& registry, std::size_t m) {
  return !registry.string(m).is_real_matrix();
}

// Row parity: 0 = all even, 1 = all odd, 2 = mixed, 3 = empty.
int row_parity(const MomentRegistry& registry,
               const std::vector<std::pair<std::size_t, double>>& terms) {
  int parity = 3;
  for (const auto& [m, v] : terms) {
    const int p = is_odd(registry, m) ? 1 : 0;
    if (parity == 3) {
      parity = p;
    } else if (parity != p) {
      return 2;
    }
  }
  return parity;
}

bool symmetric_interval(double lo, double hi) { return lo == -hi; }

void push_block(const MomentMatrixSpec& spec, bool reduced, const MomentRegistry& registry,
                std::vector<PsdBlock>& out) {
  PsdBlock block;
  const std::size_t n = spec.dim;
  if (reduced) {
    block.dim = n;
    const Complex i_unit(0.0, 1.0);
    for (const auto& e : spec.entries) {
      if (e.row < e.col) continue;
      if (e.moment != 0 && is_odd(registry, e.moment)) continue;
      const Complex dr = spec.odd_rows[e.row] ? i_unit : Complex(1.0);
      const Complex dc = spec.odd_rows[e.col] ? i_unit : Complex(1.0);
      const Complex v = std::conj(dr) * e.coeff * dc;
      if (std::abs(v.imag()) > 1e-12) {
        throw DomainError("block is not real after conjugation reduction");
      }
      if (v.real() != 0.0) block.entries.push_back({e.row, e.col, e.moment, v.real()});
    }
  } else {
    block.dim = 2 * n;
    const auto N = static_cast<std::uint32_t>(n);
    auto add = [&](std::uint32_t r, std::uint32_t c, std::size_t m, double v) {
      if (v != 0.0 && r >= c) block.entries.push_back({r, c, m, v});
    };
    for (const auto& e : spec.entries) {
      const double a = e.coeff.real();
      const double b = e.coeff.imag();
      add(e.row, e.col, e.moment, a);
      add(e.row + N, e.col + N, e.moment, a);
      add(e.row + N, e.col, e.moment, b);
      add(e.row, e.col + N, e.moment, -b);
    }
  }
  out.push_back(std::move(block));
}

}  // namespace

PuritySpec purity_epigraph(const MomentRegistry& registry, std::span<const PauliString> strings,
                           double dimension) {
  if (!(dimension > 0.0)) throw DomainError("purity dimension must be positive");
  PuritySpec spec;
  spec.dimension = dimension;
  for (const auto& p : strings) {
    const std::size_t m = registry.index_of(p);
    if (m != MomentRegistry::kIdentity) spec.moments.push_back(m);
  }
  std::sort(spec.moments.begin(), spec.moments.end());
  spec.moments.erase(std::unique(spec.moments.begin(), spec.moments.end()), spec.moments.end());
  return spec;
}

ConicProblem assemble(const MomentRegistry& registry, const ObjectiveSpec& objective,
                      std::span<const MomentMatrixSpec> blocks,
                      std::span<const LinearMomentConstraint> constraints,
                      std::span<const IntervalConstraint> intervals,
                      const AssemblyOptions& options) {
  const std::size_t nm = registry.size();
  const std::size_t nq = registry.num_qubits();
  if (!(options.box > 0.0)) throw DomainError("moment box must be positive");

  ConicProblem p;
  p.num_moments = nm;
  p.lower.assign(nm, -options.box);
  p.upper.assign(nm, options.box);
  p.lower[0] = p.upper[0] = 1.0;
  p.moment_labels.reserve(nm);
  for (const auto& s : registry.strings()) p.moment_labels.push_back(s.str());

  if (const auto* poly = std::get_if<OperatorPoly>(&objective)) {
    if (poly->size() != nq) throw ShapeError("objective size differs from registry");
    for (const auto& [s, c] : poly->terms()) {
      const double v = checked_real(c, s);
      if (s.is_identity()) {
        p.objective_constant += v;
      } else {
        p.objective.emplace_back(registry.index_of(s), v);
      }
    }
    std::sort(p.objective.begin(), p.objective.end());
  } else {
    const auto& pur = std::get<PuritySpec>(objective);
    for (std::size_t m : pur.moments) {
      if (m == 0 || m >= nm) throw RegistryError("purity moment index out of range");
    }
    if (!(pur.dimension > 0.0)) throw DomainError("purity dimension must be positive");
    p.purity = pur;
  }

  for (const auto& c : constraints) {
    for (const auto& [m, v] : c.terms) {
      if (m >= nm) throw RegistryError("constraint references an unknown moment");
    }
    LinearRow row;
    row.terms = c.terms;
    row.lower = c.relation == Relation::less_equal ? -kInf : c.rhs;
    row.upper = c.relation == Relation::greater_equal ? kInf : c.rhs;
    p.rows.push_back(std::move(row));
  }

  for (const auto& band : intervals) {
    if (band.observable.size() != nq) throw ShapeError("band observable size mismatch");
    double c0 = 0.0;
    std::vector<std::pair<std::size_t, double>> terms;
    for (const auto& [s, c] : band.observable.terms()) {
      const double v = checked_real(c, s);
      if (s.is_identity()) {
        c0 += v;
      } else {
        terms.emplace_back(registry.index_of(s), v);
      }
    }
    const double lo = band.lower - c0;
    const double hi = band.upper - c0;
    if (terms.size() == 1) {
      const auto [m, a] = terms.front();
      double l = lo / a, u = hi / a;
      if (a < 0) std::swap(l, u);
      p.lower[m] = std::max(p.lower[m], l);
      p.upper[m] = std::min(p.upper[m], u);
    } else {
      std::sort(terms.begin(), terms.end());
      p.rows.push_back({std::move(terms), lo, hi});
    }
  }
  if (!intervals.empty()) p.confidence = 1.0 - options.delta;

  bool reducible = options.real_reduction;
  for (const auto& [m, v] : p.objective) reducible = reducible && !is_odd(registry, m);
  for (const auto& row : p.rows) {
    if (!reducible) break;
    const int parity = row_parity(registry, row.terms);
    if (parity == 2 || (parity == 1 && !symmetric_interval(row.lower, row.upper))) {
      reducible = false;
    }
  }
  for (std::size_t m = 1; m < nm && reducible; ++m) {
    if (is_odd(registry, m) && !symmetric_interval(p.lower[m], p.upper[m])) reducible = false;
  }
  p.real_reduced = reducible;
  if (reducible) {
    for (std::size_t m = 1; m < nm; ++m) {
      if (is_odd(registry, m)) p.lower[m] = p.upper[m] = 0.0;
    }
  }
  for (const auto& spec : blocks) {
    for (const auto& e : spec.entries) {
      if (e.moment >= nm) throw RegistryError("block references an unknown moment");
    }
    push_block(spec, reducible, registry, p.blocks);
  }
  return p;
}

namespace {

using SparseTerms = std::vector<std::pair<int, double>>;

struct AffineRow {
  SparseTerms a;
  double b = 0.0;
};

struct LoweredBlock {
  std::size_t dim = 0;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, int, double>> coef;  // lower triangle
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> constant;   // lower triangle
};

// The problem restated over free variables only, in the frame
// minimize cᵀx + k, with eq rows a·x = b, ineq rows a·x ≤ b, an optional
// epigraph t ≥ Σ x_j² over purity_cols, and blocks C + Σ coef·x ⪰ 0.
struct Lowered {
  double sign = 1.0;  // value in the problem's sense = sign · (cᵀx + k)
  std::vector<std::size_t> var_moment;
  std::vector<int> col_of;
  std::vector<double> fixed;  // per moment, NaN when free or unused
  int t_col = -1;
  std::size_t num_cols = 0;
  std::vector<double> c;
  double k = 0.0;
  std::vector<AffineRow> eq;
  std::vector<AffineRow> ineq;
  std::vector<int> purity_cols;
  std::vector<LoweredBlock> blocks;
  bool infeasible = false;
  std::string reason;
};

Lowered lower_problem(const ConicProblem& p) {
  Lowered L;
  const std::size_t nm = p.num_moments;
  if (p.lower.size() != nm || p.upper.size() != nm) throw ShapeError("bounds size mismatch");
  L.sign = p.sense == Sense::minimize ? 1.0 : -1.0;
  if (p.purity && p.sense == Sense::maximize) {
    throw UnsupportedDirection("purity objective admits lower bounds only");
  }
  L.fixed.assign(nm, kNaN);
  L.fixed[0] = 1.0;
  for (std::size_t m = 1; m < nm; ++m) {
    if (p.lower[m] > p.upper[m] + kConstantTol) {
      L.infeasible = true;
      L.reason = "empty bound interval on moment " + std::to_string(m);
    }
    if (p.upper[m] - p.lower[m] <= kFixedTol) L.fixed[m] = 0.5 * (p.lower[m] + p.upper[m]);
  }

  std::vector<char> used(nm, 0);
  for (const auto& [m, v] : p.objective) used.at(m) = 1;
  if (p.purity) {
    for (std::size_t m : p.purity->moments) used.at(m) = 1;
  }
  for (const auto& row : p.rows) {
    for (const auto& [m, v] : row.terms) used.at(m) = 1;
  }
  for (const auto& b : p.blocks) {
    for (const auto& e : b.entries) used.at(e.moment) = 1;
  }
  L.col_of.assign(nm, -1);
  for (std::size_t m = 1; m < nm; ++m) {
    if (used[m] && std::isnan(L.fixed[m])) {
      L.col_of[m] = static_cast<int>(L.var_moment.size());
      L.var_moment.push_back(m);
    }
  }
  L.num_cols = L.var_moment.size();

  // Purity epigraph variables.
  double purity_const = 0.0;
  if (p.purity) {
    for (std::size_t m : p.purity->moments) {
      if (L.col_of[m] >= 0) {
        L.purity_cols.push_back(L.col_of[m]);
      } else {
        purity_const += L.fixed[m] * L.fixed[m];
      }
    }
    if (!L.purity_cols.empty()) L.t_col = static_cast<int>(L.num_cols++);
  }

  // Objective in the minimized frame.
  L.c.assign(L.num_cols, 0.0);
  double k = p.objective_constant;
  for (const auto& [m, v] : p.objective) {
    if (L.col_of[m] >= 0) {
      L.c[static_cast<std::size_t>(L.col_of[m])] += v;
    } else {
      k += v * L.fixed[m];
    }
  }
  if (p.purity) {
    const double d = p.purity->dimension;
    k += (1.0 + purity_const) / d;
    if (L.t_col >= 0) L.c[static_cast<std::size_t>(L.t_col)] = 1.0 / d;
  }
  for (double& v : L.c) v *= L.sign;
  L.k = L.sign * k;

  // Bounds of free variables.
  for (std::size_t j = 0; j < L.var_moment.size(); ++j) {
    const std::size_t m = L.var_moment[j];
    if (std::isfinite(p.upper[m])) L.ineq.push_back({{{static_cast<int>(j), 1.0}}, p.upper[m]});
    if (std::isfinite(p.lower[m])) L.ineq.push_back({{{static_cast<int>(j), -1.0}}, -p.lower[m]});
  }

  for (const auto& row : p.rows) {
    SparseTerms a;
    double cst = 0.0;
    for (const auto& [m, v] : row.terms) {
      if (L.col_of[m] >= 0) {
        a.emplace_back(L.col_of[m], v);
      } else {
        cst += v * L.fixed[m];
      }
    }
    if (a.empty()) {
      const double tol = kConstantTol * std::max(1.0, std::abs(cst));
      if (cst < row.lower - tol || cst > row.upper + tol) {
        L.infeasible = true;
        L.reason = "constant linear row violated";
      }
      continue;
    }
    if (row.upper - row.lower <= kFixedTol) {
      L.eq.push_back({a, 0.5 * (row.lower + row.upper) - cst});
      continue;
    }
    if (std::isfinite(row.upper)) L.ineq.push_back({a, row.upper - cst});
    if (std::isfinite(row.lower)) {
      SparseTerms neg = a;
      for (auto& [j, v] : neg) v = -v;
      L.ineq.push_back({std::move(neg), -(row.lower - cst)});
    }
  }

  for (const auto& b : p.blocks) {
    LoweredBlock lb;
    lb.dim = b.dim;
    std::map<std::tuple<std::uint32_t, std::uint32_t, int>, double> coef;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> cst;
    for (const auto& e : b.entries) {
      if (e.row < e.col) throw ShapeError("PSD block entries must be lower-triangular");
      if (L.col_of[e.moment] >= 0) {
        coef[{e.row, e.col, L.col_of[e.moment]}] += e.value;
      } else {
        cst[{e.row, e.col}] += e.value * L.fixed[e.moment];
      }
    }
    for (const auto& [key, v] : coef) {
      if (v != 0.0) lb.coef.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
    }
    for (const auto& [key, v] : cst) {
      if (v != 0.0) lb.constant.emplace_back(key.first, key.second, v);
    }
    if (lb.coef.empty()) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.dim),
                                                static_cast<Eigen::Index>(b.dim));
      for (const auto& [r, c, v] : lb.constant) {
        m(r, c) = v;
        m(c, r) = v;
      }
      if (b.dim > 0 && Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0) <
                           -kConstantTol) {
        L.infeasible = true;
        L.reason = "constant PSD block is not positive semidefinite";
      }
      continue;
    }
    L.blocks.push_back(std::move(lb));
  }
  return L;
}

std::size_t svec_index(std::size_t n, std::size_t row, std::size_t col) {
  return col * n - col * (col - 1) / 2 + (row - col);
}

struct CscBuilder {
  std::vector<std::tuple<scs_int, scs_int, double>> triplets;  // (col, row, value)
  void add(std::size_t row, int col, double v) {
    if (v != 0.0) triplets.emplace_back(col, static_cast<scs_int>(row), v);
  }
  void build(std::size_t ncols, std::vector<scs_float>& x, std::vector<scs_int>& i,
             std::vector<scs_int>& p) {
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    p.assign(ncols + 1, 0);
    for (std::size_t k = 0; k < triplets.size(); ++k) {
      const auto [c, r, v] = triplets[k];
      if (!i.empty() && k > 0 && std::get<0>(triplets[k - 1]) == c &&
          std::get<1>(triplets[k - 1]) == r) {
        x.back() += v;
        continue;
      }
      i.push_back(r);
      x.push_back(v);
      ++p[static_cast<std::size_t>(c) + 1];
    }
    for (std::size_t c = 0; c < ncols; ++c) p[c + 1] += p[c];
  }
};

BoundResult finish_without_solver(const ConicProblem& p, const Lowered& L, BoundResult r) {
  if (L.infeasible) {
    r.status = SolverStatus::infeasible;
    return r;
  }
  r.status = SolverStatus::optimal;
  r.value = L.sign * L.k;
  r.primal_objective = r.dual_objective = *r.value;
  r.moments.assign(p.num_moments, kNaN);
  for (std::size_t m = 0; m < p.num_moments; ++m) {
    if (!std::isnan(L.fixed[m])) r.moments[m] = L.fixed[m];
  }
  return r;
}

struct ScsRun {
  scs_int flag = 0;
  ScsInfo info{};
  std::vector<scs_float> x;
};

ScsRun run_scs(const Lowered& L, const SolverSettings& s, bool rescaled) {
  // Row layout: zero cone, linear cone, second-order cone, PSD cones.
  CscBuilder A;
  std::vector<scs_float> b;
  std::size_t row = 0;
  for (const auto& e : L.eq) {
    for (const auto& [j, v] : e.a) A.add(row, j, v);
    b.push_back(e.b);
    ++row;
  }
  const std::size_t num_zero = row;
  for (const auto& e : L.ineq) {
    for (const auto& [j, v] : e.a) A.add(row, j, v);
    b.push_back(e.b);
    ++row;
  }
  const std::size_t num_linear = row - num_zero;
  std::vector<scs_int> soc;
  if (L.t_col >= 0) {
    // (t + 1, t − 1, 2x) in the second-order cone.
    A.add(row, L.t_col, -1.0);
    b.push_back(1.0);
    ++row;
    A.add(row, L.t_col, -1.0);
    b.push_back(-1.0);
    ++row;
    for (int j : L.purity_cols) {
      A.add(row, j, -2.0);
      b.push_back(0.0);
      ++row;
    }
    soc.push_back(static_cast<scs_int>(2 + L.purity_cols.size()));
  }
  std::vector<scs_int> psd;
  const double sqrt2 = std::sqrt(2.0);
  for (const auto& blk : L.blocks) {
    const std::size_t n = blk.dim;
    const std::size_t base = row;
    b.resize(base + n * (n + 1) / 2, 0.0);
    for (const auto& [r, c, j, v] : blk.coef) {
      const double scale = r == c ? 1.0 : sqrt2;
      A.add(base + svec_index(n, r, c), j, -scale * v);
    }
    for (const auto& [r, c, v] : blk.constant) {
      const double scale = r == c ? 1.0 : sqrt2;
      b[base + svec_index(n, r, c)] += scale * v;
    }
    row = base + n * (n + 1) / 2;
    psd.push_back(static_cast<scs_int>(n));
  }

  std::vector<scs_float> ax;
  std::vector<scs_int> ai, ap;
  A.build(L.num_cols, ax, ai, ap);
  std::vector<scs_float> c(L.c.begin(), L.c.end());

  ScsMatrix mat{ax.data(), ai.data(), ap.data(), static_cast<scs_int>(row),
                static_cast<scs_int>(L.num_cols)};
  ScsData data{};
  data.m = static_cast<scs_int>(row);
  data.n = static_cast<scs_int>(L.num_cols);
  data.A = &mat;
  data.P = nullptr;
  data.b = b.data();
  data.c = c.data();

  ScsCone cone{};
  cone.z = static_cast<scs_int>(num_zero);
  cone.l = static_cast<scs_int>(num_linear);
  cone.q = soc.empty() ? nullptr : soc.data();
  cone.qsize = static_cast<scs_int>(soc.size());
  cone.s = psd.empty() ? nullptr : psd.data();
  cone.ssize = static_cast<scs_int>(psd.size());

  ScsSettings st;
  scs_set_default_settings(&st);
  st.eps_abs = s.eps_abs;
  st.eps_rel = s.eps_rel;
  st.eps_infeas = s.eps_infeas;
  st.max_iters = s.max_iters;
  st.time_limit_secs = s.time_limit_s;
  st.verbose = s.verbose ? 1 : 0;
  if (rescaled) {
    st.scale = 1.0;
    st.max_iters = 2 * s.max_iters;
    st.acceleration_lookback = 0;
  }

  ScsRun out;
  out.x.assign(L.num_cols, 0.0);
  std::vector<scs_float> y(row, 0.0), sl(row, 0.0);
  ScsSolution sol{out.x.data(), y.data(), sl.data()};
  out.flag = scs(&data, &cone, &st, &sol, &out.info);
  return out;
}

SolverStatus map_status(scs_int flag, const ScsInfo& info, const SolverSettings& s) {
  switch (flag) {
    case SCS_SOLVED: {
      const double rel =
          std::abs(info.pobj - info.dobj) / (1.0 + std::abs(info.pobj) + std::abs(info.dobj));
      return rel <= s.optimal_gap ? SolverStatus::optimal : SolverStatus::near_optimal;
    }
    case SCS_SOLVED_INACCURATE: return SolverStatus::near_optimal;
    case SCS_INFEASIBLE:
    case SCS_INFEASIBLE_INACCURATE: return SolverStatus::infeasible;
    case SCS_UNBOUNDED:
    case SCS_UNBOUNDED_INACCURATE: return SolverStatus::unbounded;
    default: return SolverStatus::numerical_failure;
  }
}

}  // namespace

BoundResult solve(const ConicProblem& problem, const SolverSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  BoundResult r;
  r.direction = problem.sense == Sense::minimize ? Direction::lower : Direction::upper;
  r.confidence = problem.confidence;
  const Lowered L = lower_problem(problem);
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  if (L.infeasible || L.num_cols == 0) {
    r = finish_without_solver(problem, L, r);
    r.wall_time_s = elapsed();
    return r;
  }

  ScsRun run = run_scs(L, settings, false);
  SolverStatus status = map_status(run.flag, run.info, settings);
  int iterations = static_cast<int>(run.info.iter);
  if (status == SolverStatus::numerical_failure && settings.retry) {
    run = run_scs(L, settings, true);
    status = map_status(run.flag, run.info, settings);
    iterations += static_cast<int>(run.info.iter);
  }
  r.status = status;
  r.iterations = iterations;
  r.primal_objective = L.sign * (run.info.pobj + L.k);
  r.dual_objective = L.sign * (run.info.dobj + L.k);
  if (status == SolverStatus::optimal || status == SolverStatus::near_optimal) {
    // Report the weaker of the primal and dual estimates so that solver
    // inaccuracy loosens rather than tightens the bound.
    r.value = L.sign * (std::min(run.info.pobj, run.info.dobj) + L.k);
    r.moments.assign(problem.num_moments, kNaN);
    for (std::size_t m = 0; m < problem.num_moments; ++m) {
      if (!std::isnan(L.fixed[m])) r.moments[m] = L.fixed[m];
    }
    for (std::size_t j = 0; j < L.var_moment.size(); ++j) r.moments[L.var_moment[j]] = run.x[j];
  }
  r.wall_time_s = elapsed();
  return r;
}

std::pair<BoundResult, BoundResult> solve_both(const ConicProblem& problem,
                                               const SolverSettings& settings) {
  if (problem.purity) throw UnsupportedDirection("purity objective admits lower bounds only");
  ConicProblem lo = problem;
  lo.sense = Sense::minimize;
  ConicProblem hi = problem;
  hi.sense = Sense::maximize;
  return {solve(lo, settings), solve(hi, settings)};
}

std::string to_sdpa_string(const ConicProblem& problem) {
  const Lowered L = lower_problem(problem);
  if (L.num_cols == 0) throw DomainError("SDPA export needs at least one free variable");
  if (L.infeasible) throw DomainError("SDPA export of a trivially infeasible problem: " + L.reason);

  // Entries keyed by (matno, blkno, i, j) with i ≤ j, 1-based.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, double> entries;
  auto put = [&](std::size_t mat, std::size_t blk, std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    entries[{mat, blk, i + 1, j + 1}] += v;
  };
  std::vector<long long> structure;
  std::size_t blk = 0;
  for (const auto& b : L.blocks) {
    ++blk;
    structure.push_back(static_cast<long long>(b.dim));
    for (const auto& [r, c, j, v] : b.coef) put(static_cast<std::size_t>(j) + 1, blk, r, c, v);
    for (const auto& [r, c, v] : b.constant) put(0, blk, r, c, -v);
  }
  if (L.t_col >= 0) {
    ++blk;
    const std::size_t k = L.purity_cols.size();
    structure.push_back(static_cast<long long>(k + 1));
    for (std::size_t q = 0; q < k; ++q) {
      put(0, blk, q, q, -1.0);
      put(static_cast<std::size_t>(L.purity_cols[q]) + 1, blk, q, k, 1.0);
    }
    put(static_cast<std::size_t>(L.t_col) + 1, blk, k, k, 1.0);
  }
  std::vector<AffineRow> lp;
  for (const auto& e : L.ineq) lp.push_back(e);
  for (const auto& e : L.eq) {
    lp.push_back(e);
    AffineRow neg = e;
    for (auto& [j, v] : neg.a) v = -v;
    neg.b = -neg.b;
    lp.push_back(std::move(neg));
  }
  if (!lp.empty()) {
    ++blk;
    structure.push_back(-static_cast<long long>(lp.size()));
    // b − a·x ≥ 0 on the diagonal.
    for (std::size_t r = 0; r < lp.size(); ++r) {
      for (const auto& [j, v] : lp[r].a) put(static_cast<std::size_t>(j) + 1, blk, r, r, -v);
      put(0, blk, r, r, -lp[r].b);
    }
  }

  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "* qbound sdpa export: value = sign * primal_objective + constant; sign=" << num(L.sign)
      << " constant=" << num(L.sign * L.k) << "\n";
  out << L.num_cols << "\n" << structure.size() << "\n";
  for (std::size_t q = 0; q < structure.size(); ++q) out << (q ? " " : "") << structure[q];
  out << "\n";
  for (std::size_t j = 0; j < L.num_cols; ++j) out << (j ? " " : "") << num(L.c[j]);
  out << "\n";
  for (const auto& [key, v] : entries) {
    if (v == 0.0) continue;
    const auto& [mat, b, i, j] = key;
    out << mat << " " << b << " " << i << " " << j << " " << num(v) << "\n";
  }
  return out.str();
}

void export_sdpa(const ConicProblem& problem, const std::filesystem::path& path) {
  const std::string text = to_sdpa_string(problem);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write SDPA file " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing SDPA file " + path.string());
}

nlohmann::json to_json(const ConicProblem& p) {
  auto finite_or_null = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["num_moments"] = p.num_moments;
  j["sense"] = p.sense == Sense::minimize ? "minimize" : "maximize";
  j["real_reduced"] = p.real_reduced;
  j["confidence"] = p.confidence;
  j["labels"] = p.moment_labels;
  j["objective_constant"] = p.objective_constant;
  j["objective"] = nlohmann::json::array();
  for (const auto& [m, v] : p.objective) j["objective"].push_back({m, v});
  if (p.purity) {
    j["purity"] = {{"moments", p.purity->moments}, {"dimension", p.purity->dimension}};
  }
  j["bounds"] = nlohmann::json::array();
  for (std::size_t m = 0; m < p.num_moments; ++m) {
    j["bounds"].push_back({finite_or_null(p.lower[m]), finite_or_null(p.upper[m])});
  }
  j["rows"] = nlohmann::json::array();
  for (const auto& r : p.rows) {
    j["rows"].push_back(
        {{"terms", r.terms}, {"lower", finite_or_null(r.lower)}, {"upper", finite_or_null(r.upper)}});
  }
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : p.blocks) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& t : b.entries) e.push_back({t.row, t.col, t.moment, t.value});
    j["blocks"].push_back({{"dim", b.dim}, {"entries", e}});
  }
  return j;
}

}  // namespace qbound
