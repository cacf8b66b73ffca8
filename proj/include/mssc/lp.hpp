#pragma once

// Self-contained dense LP machinery: a two-phase primal simplex plus the
// builders for the two linear programs of the pipeline (the Fractional-MTF
// relaxation and the first-position LP) and the per-pair transportation LP
// that defines the matrix FootRule distance (kept as a test oracle for the
// closed form).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mssc/core.hpp"

namespace mssc {

inline constexpr double kEpsLp = 1e-7;  // feasibility tolerance

enum class Relation { Eq, Ge, Le };
enum class VarKind { Mass, Flow };

// Structured variable names: mass variables A[t][e][i], flow variables
// f[t][e][i][j] (j = -1 for mass).
struct VarTag {
  VarKind kind = VarKind::Mass;
  int t = 0;
  int e = 0;
  int i = 0;
  int j = -1;
  bool operator==(const VarTag&) const = default;
};

struct Constraint {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Relation rel = Relation::Eq;
  double rhs = 0.0;
  std::string label;
};

struct LinearProgram {
  std::vector<double> objective;  // minimized
  std::vector<Constraint> constraints;
  std::vector<VarTag> tags;  // one per variable, all distinct

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, Stalled };

struct LpSolution {
  std::vector<double> values;
  double objective_value = 0.0;
  LpStatus status = LpStatus::Stalled;
};

// Raised by callers (e.g. solve_fractional_mtf) when the solver reports
// Stalled; mapped to its own exit code by the CLI.
struct SolverStalled : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-phase dense primal simplex. Dantzig pricing with an automatic switch
// to Bland's rule during degenerate stretches, so cycling cannot occur;
// deterministic for a fixed input. Exceeding 50 * num_vars pivots yields
// status Stalled. Optimal solutions are audited against every constraint
// within kEpsLp before being returned.
LpSolution simplex_solve(const LinearProgram& lp);

std::string var_name(const VarTag& tag);

// Human-readable dump: objective, then one constraint per line, then bounds.
std::string lp_to_text(const LinearProgram& lp);

// Transportation LP between two stochastic matrices (row marginals a, b,
// ground cost |i-j|). Oracle counterpart of footrule_matrix.
LinearProgram build_footrule_lp(const StochasticMatrix& a,
                                const StochasticMatrix& b);

// A built MTF-style LP together with its variable indexing. Rounds t run
// 1..T; A^0 is substituted as constants, never as variables.
struct MtfLp {
  LinearProgram lp;
  int n = 0;
  int T = 0;

  int mass_index(int t, ElementId e, int pos) const;
  int flow_index(int t, ElementId e, int i, int j) const;
};

// Definition of the relaxation: row/column stochasticity per round, full
// request mass at position 1, flow variables realizing d_FR(A^t, A^{t-1}).
MtfLp build_fractional_mtf(const Instance& inst);

// Same structure with the request constraint replaced by the single
// inequality A[t][chosen[t]][1] >= 1/r.
MtfLp build_first_position_lp(const Permutation& pi0,
                              const std::vector<ElementId>& chosen, int r);

FractionalSequence extract_fractional_sequence(const MtfLp& built,
                                               const LpSolution& sol);

// Builds, solves and extracts; throws SolverStalled or std::runtime_error
// on non-optimal outcomes (a valid instance is always feasible).
FractionalSequence solve_fractional_mtf(const Instance& inst);

}  // namespace mssc
