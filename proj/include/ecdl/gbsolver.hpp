#ifndef ECDL_GBSOLVER_HPP
#define ECDL_GBSOLVER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ecdl/curve.hpp"
#include "ecdl/descent.hpp"

namespace ecdl {

struct SolverTelemetry {
    std::vector<int> step_degrees;                      // per elimination step
    std::vector<std::pair<size_t, size_t>> matrix_dims; // rows fed, columns
    std::vector<size_t> new_poly_counts;                // pivots added per step
    int d_max = -1;      // max step degree over steps that produced new polynomials
    uint64_t branch_nodes = 0;
    uint64_t restarts = 0;  // linear-substitution restarts

    void note_step(int degree, size_t rows, size_t cols, size_t fresh);
    void merge(const SolverTelemetry& o);
};

enum class SolveStatus { Solutions, Inconsistent, DegreeCapExceeded };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Inconsistent;
    std::vector<uint64_t> solutions;  // full variable assignments, sorted
    SolverTelemetry telemetry;
};

struct SolverOptions {
    unsigned d_cap = 4;
    uint64_t split_budget = uint64_t(1) << 18;  // branch nodes
    bool auto_raise = false;                    // retry with a higher cap on DegreeCapExceeded
    unsigned max_d_cap = 7;                     // ceiling for auto_raise
    size_t max_columns = 4u << 20;
    size_t max_matrix_mb = 3300;
    unsigned enum_cap_bits = 26;        // free-variable enumeration guard
    unsigned subnode_col_limit = 60000; // branch nodes raise degree only under this
    // A fixpoint run that feeds this many products without an inconsistency or
    // a linear fall is declared stalled and handed to branching; saturating a
    // multi-solution span would pin nothing at many times the cost. The root
    // gets a larger budget: degree-cap information is only derivable there,
    // while branch nodes live off cheap substitution cascades.
    size_t stall_rows = 2000;
    size_t stall_rows_root = 60000;
    std::function<void(const std::string&)> log;  // optional telemetry sink
};

// Degree-bounded XL over the squarefree Boolean ring: extend with products
// m_i * f_j up to the degree bound, row-reduce over GF(2), harvest degree
// falls and repeat to fixpoint; linear harvests are substituted and the
// reduced system is re-solved; branching on an undetermined variable finishes
// anything the bounded matrix leaves open.
SolveOutcome xl_solve(const std::vector<BoolPoly>& polys, unsigned nvars,
                      const SolverOptions& opts = {});
SolveOutcome xl_solve(const BoolSystem& system, const SolverOptions& opts = {});

// Exhaustive reference answer set; throws TooLarge above 24 variables.
std::vector<uint64_t> brute_force_solutions(const std::vector<BoolPoly>& polys,
                                            unsigned nvars);

struct FirstFallReport {
    bool identity_ok = false;        // x1*S3 equals the explicit 5-term expansion
    int allvar_coord_degree = -1;    // max Boolean degree of x1*S3(x1,x2,x3) coords
    int constz_coord_degree = -1;    // same with x3 fixed to a constant
    bool no_fall_at_3 = false;       // descended chain system has no degree-3 fall
    bool fall_at_4 = false;          // and exhibits one at degree 4
    int d_ff = -1;                   // 4 when both hold
};

// Symbolic witness of the degree-4 first fall: expands x1*S3, checks the
// Boolean degrees of its coordinates, and searches degree-1 multiplier
// combinations of a small descended system for the first fall.
FirstFallReport verify_first_fall(const BinaryCurve& curve, uint64_t seed = 1);

} // namespace ecdl

#endif
