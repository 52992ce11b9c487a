#ifndef ECDL_DECOMPOSE_HPP
#define ECDL_DECOMPOSE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "ecdl/curve.hpp"
#include "ecdl/descent.hpp"
#include "ecdl/gbsolver.hpp"
#include "ecdl/rng.hpp"
#include "ecdl/sumpoly.hpp"

namespace ecdl {

// Points whose x-coordinate lies in V. One canonical point per liftable x:
// (x, y_min) with the smaller y; its negative shares x, so signed coefficients
// cover both. x = 0 lifts to the order-2 point, kept separately.
struct FactorBase {
    SubspaceV V;
    std::vector<Point> points;              // canonical points, x != 0
    std::map<uint64_t, uint32_t> index_of;  // x bits -> column
    Point h2;                               // (0, sqrt(B))

    static FactorBase build(const BinaryCurve& curve, const SubspaceV& V);
    // column of x, or -1 when x does not lift rationally (or is 0)
    int32_t column(FieldElement x) const;
};

// One verified decomposition: sum coeffs[i]*F_i + h2_coeff*H + uP + vQ = inf.
struct Relation {
    std::map<uint32_t, int32_t> coeffs;  // factor-base column -> signed count
    int h2_coeff = 0;                    // order-2 point multiplicity mod 2
    uint64_t u = 0, v = 0;
    unsigned t_used = 0;
};

struct DirectSolve {
    uint64_t z;  // R was infinity with invertible v: z = -u/v mod r
};

struct RandomPoint {
    uint64_t u, v;
    Point R;
};

// R = uP + vQ for uniform u, v mod r. Reports a direct solve when R = inf and
// v is invertible; retries degenerate draws internally.
std::variant<RandomPoint, DirectSolve> random_r(const SubgroupCtx& sub, Rng& rng);

bool verify_relation(const SubgroupCtx& sub, const FactorBase& fb, const Relation& rel);

struct DecomposeResult {
    std::vector<Relation> relations;  // all Boolean solutions converted
    SolverTelemetry telemetry;
};

// Algorithm step 3 for one R: build the chain system, Weil-descend, solve,
// lift each solution (extension lifts allowed) and search sign patterns for a
// combination summing to -R; non-rational lifts must pair up into the order-2
// point. Every relation is verified by curve arithmetic before return.
std::optional<DecomposeResult> try_decompose(const SubgroupCtx& sub, SumPolyCache& cache,
                                             const RandomPoint& rp, unsigned t,
                                             const FactorBase& fb,
                                             const SolverOptions& solver_opts = {});

// Ground truth by sweeping S_{t+1} over unordered tuples from V^t.
struct OracleResult {
    bool satisfiable = false;
    std::vector<FieldElement> witness;
};
OracleResult oracle_decompose(const SubgroupCtx& sub, SumPolyCache& cache,
                              FieldElement r_x, unsigned t, const SubspaceV& V,
                              uint64_t class_limit = uint64_t(1) << 20);

enum class Schedule { TEqualsM, Escalate };

struct CollectStats {
    uint64_t trials = 0;
    uint64_t successes = 0;       // trials yielding at least one relation
    uint64_t direct_solves = 0;
    uint64_t t1_relations = 0;
    int d_max = -1;
};

struct CollectResult {
    std::vector<Relation> relations;
    CollectStats stats;
    std::optional<uint64_t> direct_z;  // early win: R drawn as infinity
};

// Repeat random_r + try_decompose until `target` verified relations are
// banked (or the trial budget runs out). Trials are seeded per index, so the
// outcome is a pure function of (sub, seed, config).
CollectResult collect(const SubgroupCtx& sub, SumPolyCache& cache, const FactorBase& fb,
                      unsigned m, Schedule schedule, size_t target, uint64_t seed,
                      uint64_t trial_budget, const SolverOptions& solver_opts = {});

// Relation log line: "u v t h2 x-list coeffs", hex fields; replayable.
std::string relation_to_line(const Relation& rel, const FactorBase& fb);
Relation relation_from_line(const std::string& line, const FactorBase& fb);

} // namespace ecdl

#endif
