#include "ecdl/decompose.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ecdl {

FactorBase FactorBase::build(const BinaryCurve& curve, const SubspaceV& V) {
    FactorBase fb;
    fb.V = V;
    fb.h2 = curve.order2_point();
    for (FieldElement x : V.enumerate()) {
        if (x.is_zero()) continue;
        if (curve.count_lifts(x) == 0) continue;
        auto lifts = curve.lift_x(x);  // sorted, smaller y first
        fb.index_of.emplace(x.bits(), uint32_t(fb.points.size()));
        fb.points.push_back(lifts[0]);
    }
    return fb;
}

int32_t FactorBase::column(FieldElement x) const {
    auto it = index_of.find(x.bits());
    return it == index_of.end() ? -1 : int32_t(it->second);
}

std::variant<RandomPoint, DirectSolve> random_r(const SubgroupCtx& sub, Rng& rng) {
    while (true) {
        uint64_t u = rng.below(sub.r), v = rng.below(sub.r);
        Point R = sub.curve.add(sub.curve.mul(u, sub.P), sub.curve.mul(v, sub.Q));
        if (R.is_inf()) {
            if (v == 0) continue;  // u = 0 too: degenerate draw
            // uP + vQ = inf  =>  u + vz = 0 mod r
            uint64_t vinv = 1, base = v % sub.r, e = sub.r - 2;
            while (e) {
                if (e & 1) vinv = uint64_t((unsigned __int128)(vinv)*base % sub.r);
                base = uint64_t((unsigned __int128)(base)*base % sub.r);
                e >>= 1;
            }
            uint64_t z = uint64_t((unsigned __int128)(sub.r - u % sub.r) * vinv % sub.r);
            return DirectSolve{z};
        }
        return RandomPoint{u, v, R};
    }
}

bool verify_relation(const SubgroupCtx& sub, const FactorBase& fb, const Relation& rel) {
    Point acc = Point::infinity();
    for (const auto& [col, c] : rel.coeffs) {
        if (col >= fb.points.size()) return false;
        Point f = fb.points[col];
        int n = c;
        if (n < 0) {
            f = sub.curve.neg(f);
            n = -n;
        }
        for (int i = 0; i < n; ++i) acc = sub.curve.add(acc, f);
    }
    if (rel.h2_coeff & 1) acc = sub.curve.add(acc, fb.h2);
    acc = sub.curve.add(acc, sub.curve.mul(rel.u, sub.P));
    acc = sub.curve.add(acc, sub.curve.mul(rel.v, sub.Q));
    return acc.is_inf();
}

namespace {

// Turn one chosen lift combination into factor-base bookkeeping. Non-rational
// lifts must pair up into the order-2 point (Lemma-2 shape); anything else is
// an internal error.
bool combination_to_relation(const SubgroupCtx& sub, const FactorBase& fb,
                             const std::vector<ExtPoint>& chosen, uint64_t u, uint64_t v,
                             unsigned t, Relation& out) {
    Relation rel;
    rel.u = u;
    rel.v = v;
    rel.t_used = t;
    ExtPoint conj_sum = ExtPoint::infinity();
    for (const ExtPoint& p : chosen) {
        if (p.x.in_base_field() && p.y.in_base_field()) {
            Point q = BinaryCurve::project(p);
            if (q.x.is_zero()) {
                rel.h2_coeff ^= 1;  // the order-2 point itself
                continue;
            }
            int32_t col = fb.column(q.x);
            if (col < 0) return false;
            const Point& canon = fb.points[size_t(col)];
            rel.coeffs[uint32_t(col)] += (q == canon) ? 1 : -1;
            if (rel.coeffs[uint32_t(col)] == 0) rel.coeffs.erase(uint32_t(col));
        } else {
            conj_sum = sub.curve.add_ext(conj_sum, p);
        }
    }
    if (!conj_sum.is_inf()) {
        if (conj_sum != BinaryCurve::embed(fb.h2))
            throw LiftMismatch("non-rational lift subsum is not the order-2 point");
        rel.h2_coeff ^= 1;
    }
    out = std::move(rel);
    return true;
}

} // namespace

std::optional<DecomposeResult> try_decompose(const SubgroupCtx& sub, SumPolyCache& cache,
                                             const RandomPoint& rp, unsigned t,
                                             const FactorBase& fb,
                                             const SolverOptions& solver_opts) {
    (void)cache;
    FieldElement r_x = rp.R.x;
    auto eqs = build_system(sub.curve, r_x, t);
    BoolSystem sys = weil_descend(eqs, fb.V, t);
    SolveOutcome out = xl_solve(sys, solver_opts);
    if (out.status == SolveStatus::DegreeCapExceeded)
        throw ResourceLimit("solver exceeded its degree cap and branch budget");

    DecomposeResult res;
    res.telemetry = out.telemetry;
    if (out.status == SolveStatus::Inconsistent) return std::nullopt;

    ExtPoint target = BinaryCurve::embed(sub.curve.neg(rp.R));
    std::set<std::pair<std::vector<std::pair<uint32_t, int32_t>>, int>> seen;
    for (uint64_t assignment : out.solutions) {
        std::vector<FieldElement> xs = decode_x(sys, fb.V, assignment);
        std::vector<std::vector<ExtPoint>> lifts;
        lifts.reserve(t);
        for (FieldElement x : xs) lifts.push_back(sub.curve.lift_x_ext(x));
        unsigned combos = 1;
        for (const auto& l : lifts) combos *= unsigned(l.size());
        for (unsigned mask = 0; mask < combos; ++mask) {
            unsigned mm = mask;
            ExtPoint acc = ExtPoint::infinity();
            std::vector<ExtPoint> chosen;
            chosen.reserve(t);
            for (unsigned i = 0; i < t; ++i) {
                unsigned pick = mm % unsigned(lifts[i].size());
                mm /= unsigned(lifts[i].size());
                chosen.push_back(lifts[i][pick]);
                acc = sub.curve.add_ext(acc, lifts[i][pick]);
            }
            if (acc != target) continue;
            Relation rel;
            if (!combination_to_relation(sub, fb, chosen, rp.u, rp.v, t, rel)) continue;
            if (!verify_relation(sub, fb, rel))
                throw LiftMismatch("relation failed exact curve verification");
            std::vector<std::pair<uint32_t, int32_t>> key(rel.coeffs.begin(), rel.coeffs.end());
            if (seen.emplace(std::move(key), rel.h2_coeff).second)
                res.relations.push_back(std::move(rel));
        }
    }
    if (res.relations.empty() && !out.solutions.empty())
        throw LiftMismatch("no lift combination matched a solver solution");
    if (res.relations.empty()) return std::nullopt;
    return res;
}

OracleResult oracle_decompose(const SubgroupCtx& sub, SumPolyCache& cache,
                              FieldElement r_x, unsigned t, const SubspaceV& V,
                              uint64_t class_limit) {
    (void)sub;
    const MultiPoly<FieldElement>& s = cache.get(t + 1);
    std::vector<FieldElement> elems = V.enumerate();
    uint64_t nclasses = 1;
    for (unsigned i = 0; i < t; ++i) nclasses = nclasses * (elems.size() + i) / (i + 1);
    if (nclasses > class_limit) throw TooLarge("oracle sweep class count over limit");

    std::vector<unsigned> idx(t, 0);  // nondecreasing index tuples
    std::vector<FieldElement> assign(t + 1, r_x);
    while (true) {
        for (unsigned i = 0; i < t; ++i) assign[i] = elems[idx[i]];
        assign[t] = r_x;
        if (s.eval(assign).is_zero()) {
            OracleResult res;
            res.satisfiable = true;
            res.witness.assign(assign.begin(), assign.begin() + long(t));
            return res;
        }
        int i = int(t) - 1;
        while (i >= 0 && idx[size_t(i)] == elems.size() - 1) --i;
        if (i < 0) break;
        unsigned next = idx[size_t(i)] + 1;
        for (unsigned j = unsigned(i); j < t; ++j) idx[j] = next;
    }
    return {};
}

namespace {

std::optional<Relation> t1_relation(const SubgroupCtx& sub, const FactorBase& fb,
                                    const RandomPoint& rp) {
    // R_X in V: -R itself is a factor-base combination
    Point negR = sub.curve.neg(rp.R);
    Relation rel;
    rel.u = rp.u;
    rel.v = rp.v;
    rel.t_used = 1;
    if (negR.x.is_zero()) {
        rel.h2_coeff = 1;
    } else {
        int32_t col = fb.column(negR.x);
        if (col < 0) return std::nullopt;
        rel.coeffs[uint32_t(col)] = (negR == fb.points[size_t(col)]) ? 1 : -1;
    }
    if (!verify_relation(sub, fb, rel)) throw LiftMismatch("t=1 relation failed verification");
    return rel;
}

bool x_in_subspace(const SubspaceV& V, FieldElement x) {
    uint64_t target = x.bits();
    std::vector<uint64_t> rows;
    for (const FieldElement& b : V.basis) rows.push_back(b.bits());
    for (size_t i = 0; i < rows.size(); ++i) {
        uint64_t best = 0;
        size_t bi = i;
        for (size_t j = i; j < rows.size(); ++j)
            if (rows[j] > best) {
                best = rows[j];
                bi = j;
            }
        if (best == 0) break;
        std::swap(rows[i], rows[bi]);
        int hb = 63 - __builtin_clzll(rows[i]);
        for (size_t j = 0; j < rows.size(); ++j)
            if (j != i && ((rows[j] >> hb) & 1)) rows[j] ^= rows[i];
        if ((target >> hb) & 1) target ^= rows[i];
    }
    return target == 0;
}

} // namespace

CollectResult collect(const SubgroupCtx& sub, SumPolyCache& cache, const FactorBase& fb,
                      unsigned m, Schedule schedule, size_t target, uint64_t seed,
                      uint64_t trial_budget, const SolverOptions& solver_opts) {
    CollectResult res;
    for (uint64_t trial = 0; trial < trial_budget; ++trial) {
        if (res.relations.size() >= target) return res;
        Rng rng = Rng::for_trial(seed, trial);
        auto draw = random_r(sub, rng);
        ++res.stats.trials;
        if (std::holds_alternative<DirectSolve>(draw)) {
            ++res.stats.direct_solves;
            res.direct_z = std::get<DirectSolve>(draw).z;
            return res;
        }
        const RandomPoint& rp = std::get<RandomPoint>(draw);
        if (x_in_subspace(fb.V, rp.R.x)) {
            auto rel = t1_relation(sub, fb, rp);
            if (rel) {
                res.relations.push_back(*rel);
                ++res.stats.t1_relations;
                ++res.stats.successes;
            }
            continue;
        }
        bool success = false;
        unsigned t_lo = schedule == Schedule::Escalate ? 2 : m;
        for (unsigned t = t_lo; t <= m && !success; ++t) {
            std::optional<DecomposeResult> dec;
            try {
                dec = try_decompose(sub, cache, rp, t, fb, solver_opts);
            } catch (const ResourceLimit&) {
                continue;  // lost trial, never a wrong verdict
            }
            if (!dec) continue;
            res.stats.d_max = std::max(res.stats.d_max, dec->telemetry.d_max);
            for (Relation& rel : dec->relations) res.relations.push_back(std::move(rel));
            success = true;
        }
        if (success) ++res.stats.successes;
    }
    if (res.relations.size() < target)
        throw BudgetExhausted("relation collection budget exhausted");
    return res;
}

std::string relation_to_line(const Relation& rel, const FactorBase& fb) {
    std::ostringstream os;
    os << std::hex << rel.u << " " << rel.v << " " << std::dec << rel.t_used << " ";
    bool first = true;
    for (const auto& [col, c] : rel.coeffs) {
        (void)c;
        os << (first ? "" : ",") << std::hex << fb.points[col].x.bits() << std::dec;
        first = false;
    }
    if (first) os << "-";
    os << " " << (rel.h2_coeff & 1) << " ";
    first = true;
    for (const auto& [col, c] : rel.coeffs) {
        os << (first ? "" : ",") << col << ":" << c;
        first = false;
    }
    if (first) os << "-";
    return os.str();
}

Relation relation_from_line(const std::string& line, const FactorBase& fb) {
    (void)fb;
    std::istringstream is(line);
    std::string xs, coeffs;
    Relation rel;
    int h2 = 0;
    unsigned t = 0;
    is >> std::hex >> rel.u >> rel.v >> std::dec >> t >> xs >> h2 >> coeffs;
    if (!is) throw ConfigError("malformed relation line");
    rel.t_used = t;
    rel.h2_coeff = h2;
    if (coeffs != "-") {
        std::istringstream cs(coeffs);
        std::string item;
        while (std::getline(cs, item, ',')) {
            size_t colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("malformed coefficient");
            rel.coeffs[uint32_t(std::stoul(item.substr(0, colon)))] =
                int32_t(std::stol(item.substr(colon + 1)));
        }
    }
    return rel;
}

} // namespace ecdl
