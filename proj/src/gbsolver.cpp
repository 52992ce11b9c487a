#include "ecdl/gbsolver.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>

namespace ecdl {

void SolverTelemetry::note_step(int degree, size_t rows, size_t cols, size_t fresh) {
    step_degrees.push_back(degree);
    matrix_dims.emplace_back(rows, cols);
    new_poly_counts.push_back(fresh);
    if (fresh > 0) d_max = std::max(d_max, degree);
}

void SolverTelemetry::merge(const SolverTelemetry& o) {
    step_degrees.insert(step_degrees.end(), o.step_degrees.begin(), o.step_degrees.end());
    matrix_dims.insert(matrix_dims.end(), o.matrix_dims.begin(), o.matrix_dims.end());
    new_poly_counts.insert(new_poly_counts.end(), o.new_poly_counts.begin(),
                           o.new_poly_counts.end());
    d_max = std::max(d_max, o.d_max);
    branch_nodes += o.branch_nodes;
    restarts += o.restarts;
}

namespace {

int mono_deg(uint64_t m) { return __builtin_popcountll(m); }

// ---------------------------------------------------------------------------
// Packed GF(2) Macaulay rows over a growable monomial dictionary.
//
// Columns are grouped by total degree, highest degree first, so a row's first
// set bit is a maximal-degree monomial: its degree is the row degree and falls
// are visible directly. Within one degree, columns sit in first-seen order
// (deterministic); the user-facing graded order with mask tie-break applies to
// everything the solver reports, not to the internal column layout.
// ---------------------------------------------------------------------------
class Macaulay {
public:
    Macaulay(unsigned nvars, unsigned maxdeg, size_t max_columns, size_t max_mb)
        : maxdeg_(maxdeg), max_columns_(max_columns), max_bytes_(max_mb << 20) {
        (void)nvars;
        segs_.resize(maxdeg + 1);
        rebase();
    }

    size_t columns() const {
        size_t c = 0;
        for (const Seg& s : segs_) c += s.monos.size();
        return c;
    }
    size_t rows() const { return rows_.size(); }
    size_t bytes() const { return bytes_; }

    void register_monos(const BoolPoly& p) {
        bool grew = false;
        for (uint64_t m : p.monomials()) {
            unsigned d = unsigned(mono_deg(m));
            Seg& s = segs_.at(d);
            if (s.idx.emplace(m, uint32_t(s.monos.size())).second) {
                s.monos.push_back(m);
                grew = true;
            }
        }
        if (grew) ensure_capacity();
    }

    enum class Ins { Zero, Pivot, Inconsistent };

    struct InsertResult {
        Ins kind;
        int lead_deg = -1;
        uint32_t row_index = 0;
    };

    // Reduce against the echelon; insert as a new pivot if independent.
    InsertResult insert(const BoolPoly& p) {
        if (p.is_zero()) return {Ins::Zero, -1, 0};
        scratch_.assign(total_words_, 0);
        for (uint64_t m : p.monomials()) scratch_[word_of(m)] |= bit_of(m);
        size_t w = 0;
        while (true) {
            while (w < total_words_ && scratch_[w] == 0) ++w;
            if (w == total_words_) return {Ins::Zero, -1, 0};
            unsigned bit = unsigned(__builtin_ctzll(scratch_[w]));
            size_t col = w * 64 + bit;
            int32_t r = pivot_[col];
            if (r < 0) {
                size_t add = (total_words_ - w) * 8;
                if (bytes_ + add > max_bytes_)
                    throw ResourceLimit("matrix memory bound exceeded");
                bytes_ += add;
                pivot_[col] = int32_t(rows_.size());
                rows_.emplace_back(scratch_.begin() + long(w), scratch_.end());
                row_off_.push_back(uint32_t(w));
                int deg = deg_of_word(uint32_t(w));
                row_deg_.push_back(int8_t(deg));
                if (deg == 0) return {Ins::Inconsistent, 0, uint32_t(rows_.size() - 1)};
                return {Ins::Pivot, deg, uint32_t(rows_.size() - 1)};
            }
            const std::vector<uint64_t>& pr = rows_[size_t(r)];
            size_t off = row_off_[size_t(r)];
            uint64_t* dst = scratch_.data() + off;
            const uint64_t* src = pr.data();
            size_t len = pr.size();
            for (size_t i = 0; i < len; ++i) dst[i] ^= src[i];
        }
    }

    BoolPoly extract(uint32_t row_index) const {
        std::vector<uint64_t> monos;
        const std::vector<uint64_t>& r = rows_[row_index];
        size_t off = row_off_[row_index];
        for (size_t i = 0; i < r.size(); ++i) {
            uint64_t w = r[i];
            while (w) {
                unsigned bit = unsigned(__builtin_ctzll(w));
                w &= w - 1;
                monos.push_back(mono_of_position((off + i) * 64 + bit));
            }
        }
        return BoolPoly(std::move(monos));
    }

private:
    struct Seg {
        std::vector<uint64_t> monos;
        std::unordered_map<uint64_t, uint32_t> idx;
        uint32_t cap_words = 1;
        uint32_t base_word = 0;
    };

    void rebase() {
        uint32_t base = 0;
        for (int d = int(maxdeg_); d >= 0; --d) {
            segs_[size_t(d)].base_word = base;
            base += segs_[size_t(d)].cap_words;
        }
        total_words_ = base;
        pivot_.assign(size_t(total_words_) * 64, -1);
    }

    void ensure_capacity() {
        if (columns() > max_columns_) throw ResourceLimit("column bound exceeded");
        bool need = false;
        for (Seg& s : segs_)
            if (s.monos.size() > size_t(s.cap_words) * 64) need = true;
        if (!need) return;
        std::vector<uint32_t> old_base(maxdeg_ + 1), old_cap(maxdeg_ + 1);
        for (unsigned d = 0; d <= maxdeg_; ++d) {
            old_base[d] = segs_[d].base_word;
            old_cap[d] = segs_[d].cap_words;
        }
        for (Seg& s : segs_) {
            uint32_t want = uint32_t((s.monos.size() + 63) / 64);
            if (want > s.cap_words) s.cap_words = want + want / 4 + 2;
        }
        rebase();
        bytes_ = 0;
        for (size_t ri = 0; ri < rows_.size(); ++ri) {
            std::vector<uint64_t> nw(total_words_, 0);
            const std::vector<uint64_t>& old = rows_[ri];
            uint32_t ooff = row_off_[ri];
            for (unsigned d = 0; d <= maxdeg_; ++d) {
                uint32_t ob = old_base[d], nb = segs_[d].base_word;
                uint32_t lim = std::min(old_cap[d], segs_[d].cap_words);
                for (uint32_t wd = 0; wd < lim; ++wd) {
                    uint32_t ow = ob + wd;
                    if (ow < ooff || size_t(ow - ooff) >= old.size()) continue;
                    nw[nb + wd] = old[ow - ooff];
                }
            }
            size_t lead = 0;
            while (lead < nw.size() && nw[lead] == 0) ++lead;
            rows_[ri].assign(nw.begin() + long(lead), nw.end());
            row_off_[ri] = uint32_t(lead);
            bytes_ += rows_[ri].size() * 8;
        }
        std::fill(pivot_.begin(), pivot_.end(), -1);
        for (size_t ri = 0; ri < rows_.size(); ++ri) {
            const std::vector<uint64_t>& r = rows_[ri];
            size_t w = 0;
            while (w < r.size() && r[w] == 0) ++w;
            size_t col = (row_off_[ri] + w) * 64 + unsigned(__builtin_ctzll(r[w]));
            pivot_[col] = int32_t(ri);
        }
    }

    size_t word_of(uint64_t m) const {
        const Seg& s = segs_[size_t(mono_deg(m))];
        return s.base_word + s.idx.at(m) / 64;
    }
    uint64_t bit_of(uint64_t m) const {
        const Seg& s = segs_[size_t(mono_deg(m))];
        return uint64_t(1) << (s.idx.at(m) % 64);
    }
    int deg_of_word(uint32_t w) const {
        for (int d = int(maxdeg_); d >= 0; --d) {
            const Seg& s = segs_[size_t(d)];
            if (w >= s.base_word && w < s.base_word + s.cap_words) return d;
        }
        throw Error("column word out of range");
    }
    uint64_t mono_of_position(size_t col) const {
        uint32_t w = uint32_t(col / 64);
        for (int d = int(maxdeg_); d >= 0; --d) {
            const Seg& s = segs_[size_t(d)];
            if (w >= s.base_word && w < s.base_word + s.cap_words) {
                size_t seq = size_t(w - s.base_word) * 64 + col % 64;
                return s.monos.at(seq);
            }
        }
        throw Error("column position out of range");
    }

    unsigned maxdeg_;
    size_t max_columns_, max_bytes_;
    std::vector<Seg> segs_;
    uint32_t total_words_ = 0;
    std::vector<std::vector<uint64_t>> rows_;  // trimmed at the leading word
    std::vector<uint32_t> row_off_;
    std::vector<int8_t> row_deg_;
    std::vector<int32_t> pivot_;
    std::vector<uint64_t> scratch_;
    size_t bytes_ = 0;
};

// squarefree multiplier monomials over scope with exact degree d
void enumerate_multipliers(uint64_t scope, unsigned d, std::vector<uint64_t>& out) {
    std::vector<unsigned> bits;
    for (unsigned v = 0; v < 64; ++v)
        if ((scope >> v) & 1) bits.push_back(v);
    if (d == 0 || d > bits.size()) return;
    std::vector<unsigned> idx(d);
    for (unsigned i = 0; i < d; ++i) idx[i] = i;
    while (true) {
        uint64_t m = 0;
        for (unsigned i : idx) m |= uint64_t(1) << bits[i];
        out.push_back(m);
        int i = int(d) - 1;
        while (i >= 0 && idx[size_t(i)] == bits.size() - d + unsigned(i)) --i;
        if (i < 0) break;
        ++idx[size_t(i)];
        for (size_t j = size_t(i) + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct FixpointReport {
    enum Kind { Inconsistent, NewLinear, Unresolved } kind = Unresolved;
    std::vector<BoolPoly> linear;
    std::vector<BoolPoly> carry;  // strong (degree <= 2) falls worth keeping
};

// One XL fixpoint at bound D. Seeds the bare system, then feeds products of
// the generators (originals plus harvested falls) by multipliers over a
// widening scope: own support, then the shared-variable neighborhood, then
// every variable. Newest falls are expanded first; their products are what
// cascades toward a contradiction. Linear falls end the run: the caller
// substitutes them and solves the shrunken system afresh, which keeps every
// matrix small. A run that feeds stall_budget products without deriving a
// linear is declared stalled and left to branching.
FixpointReport run_fixpoint(const std::vector<BoolPoly>& polys, unsigned nvars,
                            unsigned D, const SolverOptions& opts,
                            size_t stall_budget, SolverTelemetry& tel) {
    Macaulay mat(nvars, D, opts.max_columns, opts.max_matrix_mb);
    FixpointReport rep;

    std::vector<uint64_t> var_nbhd(nvars, 0);
    for (const BoolPoly& p : polys) {
        uint64_t s = p.support();
        uint64_t ss = s;
        while (ss) {
            unsigned v = unsigned(__builtin_ctzll(ss));
            ss &= ss - 1;
            var_nbhd[v] |= s;
        }
    }
    uint64_t all_mask = nvars == 64 ? ~0ULL : ((uint64_t(1) << nvars) - 1);
    auto neighborhood = [&](uint64_t support) {
        uint64_t s = support, acc = support;
        while (s) {
            unsigned v = unsigned(__builtin_ctzll(s));
            s &= s - 1;
            acc |= var_nbhd[v];
        }
        return acc;
    };

    struct Gen {
        BoolPoly poly;
        int deg;
        uint64_t emitted_scope = 0;
        bool is_fall = false;
    };
    std::vector<Gen> gens;

    size_t fed = 0, fresh = 0, fed_since_progress = 0;
    int step_deg = 0;
    auto flush_step = [&]() {
        if (fed == 0) return;
        if (opts.log) {
            std::ostringstream os;
            os << "step=" << tel.step_degrees.size() << " degree=" << step_deg
               << " rows=" << fed << " cols=" << mat.columns() << " new=" << fresh
               << " rank=" << mat.rows() << " gens=" << gens.size()
               << " mb=" << (mat.bytes() >> 20);
            opts.log(os.str());
        }
        tel.note_step(step_deg, fed, mat.columns(), fresh);
        fed = 0;
        fresh = 0;
        step_deg = 0;
    };
    auto finish = [&](FixpointReport::Kind kind) {
        flush_step();
        rep.kind = kind;
        if (kind != FixpointReport::Inconsistent)
            for (const Gen& g : gens)
                if (g.is_fall && g.deg <= 2) rep.carry.push_back(g.poly);
        return rep;
    };

    // feed one row; returns false when the run must stop
    auto feed = [&](const BoolPoly& p, int nominal) {
        mat.register_monos(p);
        ++fed;
        ++fed_since_progress;
        step_deg = std::max(step_deg, nominal);
        auto r = mat.insert(p);
        if (r.kind == Macaulay::Ins::Inconsistent) {
            ++fresh;
            return false;
        }
        if (r.kind == Macaulay::Ins::Pivot) {
            ++fresh;
            if (r.lead_deg <= 1) {
                rep.linear.push_back(mat.extract(r.row_index));
                fed_since_progress = 0;
                return false;
            }
            if (r.lead_deg < nominal && unsigned(r.lead_deg) < D)
                gens.push_back({mat.extract(r.row_index), r.lead_deg, 0, true});
        }
        return true;
    };

    // seed: the bare system; the bare polynomials are generators too
    for (const BoolPoly& p : polys) {
        if (p.is_zero()) continue;
        if (!feed(p, p.degree()))
            return finish(rep.linear.empty() ? FixpointReport::Inconsistent
                                             : FixpointReport::NewLinear);
    }
    for (const BoolPoly& p : polys)
        if (!p.is_zero() && unsigned(p.degree()) < D)
            gens.push_back({p, p.degree(), 0, false});
    flush_step();
    if (!rep.linear.empty()) return finish(FixpointReport::NewLinear);

    std::vector<uint64_t> mults;
    for (int tier = 0; tier < 3; ++tier) {
        std::vector<size_t> stack(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) stack[i] = i;
        while (!stack.empty()) {
            size_t gi = stack.back();
            stack.pop_back();
            uint64_t scope = tier == 0 ? gens[gi].poly.support()
                             : tier == 1 ? neighborhood(gens[gi].poly.support())
                                         : all_mask;
            uint64_t skip = gens[gi].emitted_scope;
            if ((scope & ~skip) == 0) continue;
            unsigned dmax = D - unsigned(gens[gi].deg);
            mults.clear();
            for (unsigned d = 1; d <= dmax; ++d) enumerate_multipliers(scope, d, mults);
            size_t before = gens.size();
            bool stop = false;
            for (uint64_t m : mults) {
                if (skip && (m & ~skip) == 0) continue;
                BoolPoly prod = gens[gi].poly * BoolPoly({m});
                if (prod.is_zero()) continue;
                if (!feed(prod, mono_deg(m) + gens[gi].deg)) {
                    stop = true;
                    break;
                }
                if (fed >= 8192) flush_step();
            }
            if (stop)
                return finish(rep.linear.empty() ? FixpointReport::Inconsistent
                                                 : FixpointReport::NewLinear);
            gens[gi].emitted_scope |= scope;
            for (size_t ni = gens.size(); ni > before; --ni) stack.push_back(ni - 1);
            if (fed_since_progress > stall_budget)
                return finish(FixpointReport::Unresolved);
        }
        flush_step();
    }
    return finish(FixpointReport::Unresolved);
}

size_t projected_columns(unsigned nvars, unsigned D) {
    long double total = 0, c = 1;
    for (unsigned d = 0; d <= D; ++d) {
        total += c;
        c = c * (nvars > d ? nvars - d : 0) / (d + 1);
        if (total > 1e18L) return size_t(1) << 62;
    }
    return size_t(total);
}

struct RecState {
    const SolverOptions* opts;
    uint64_t budget;
};

std::vector<uint64_t> enumerate_free(uint64_t free_mask, const SolverOptions& opts) {
    unsigned bits = unsigned(__builtin_popcountll(free_mask));
    if (bits > opts.enum_cap_bits)
        throw ResourceLimit("free-variable enumeration too large");
    std::vector<unsigned> vars;
    for (unsigned v = 0; v < 64; ++v)
        if ((free_mask >> v) & 1) vars.push_back(v);
    std::vector<uint64_t> out;
    out.reserve(size_t(1) << bits);
    for (uint64_t m = 0; m < (uint64_t(1) << bits); ++m) {
        uint64_t a = 0;
        for (unsigned i = 0; i < bits; ++i)
            if ((m >> i) & 1) a |= uint64_t(1) << vars[i];
        out.push_back(a);
    }
    return out;
}

// Solve polys over the variables in active_mask. Solutions are full
// assignments; `proven` reports whether the answer set is complete (false
// once the branch budget runs out).
std::vector<uint64_t> solve_rec(std::vector<BoolPoly> polys, unsigned nvars,
                                uint64_t active_mask, RecState& st,
                                SolverTelemetry& tel, unsigned depth, bool try_fixpoint,
                                bool& proven) {
    proven = true;
    const SolverOptions& opts = *st.opts;

    std::vector<std::pair<unsigned, BoolPoly>> elim;  // var := expr, undone on exit

    auto finish = [&](std::vector<uint64_t> sols) {
        for (auto it = elim.rbegin(); it != elim.rend(); ++it)
            for (uint64_t& s : sols)
                if (it->second.eval(s)) s |= uint64_t(1) << it->first;
        return sols;
    };

    while (true) {
        std::vector<BoolPoly> live;
        live.reserve(polys.size());
        bool contradiction = false;
        for (BoolPoly& p : polys) {
            if (p.is_zero()) continue;
            if (p.is_one()) { contradiction = true; break; }
            live.push_back(std::move(p));
        }
        if (contradiction) return finish({});
        polys = std::move(live);

        // affine elimination: Gauss the degree-1 polynomials together, then
        // substitute the whole solved block in one pass
        std::vector<BoolPoly> lins;
        for (const BoolPoly& p : polys)
            if (p.degree() == 1) lins.push_back(p);
        if (!lins.empty()) {
            // echelonize over (vars | constant); monomials are single bits
            std::vector<std::pair<unsigned, BoolPoly>> solved;  // var := expr
            bool contra = false;
            for (BoolPoly l : lins) {
                for (const auto& [v, e] : solved) l = l.substitute_expr(v, e);
                if (l.is_zero()) continue;
                if (l.is_one()) { contra = true; break; }
                unsigned var = unsigned(__builtin_ctzll(l.support()));
                BoolPoly expr = l.substitute(var, false);
                for (auto& [v, e] : solved) e = e.substitute_expr(var, expr);
                solved.emplace_back(var, expr);
            }
            if (contra) return finish({});
            std::vector<BoolPoly> next;
            next.reserve(polys.size());
            for (BoolPoly& p : polys) {
                if (p.degree() == 1) continue;
                for (const auto& [v, e] : solved)
                    p = p.substitute_expr(v, e);
                next.push_back(std::move(p));
            }
            polys = std::move(next);
            for (auto& [v, e] : solved) {
                elim.emplace_back(v, e);
                active_mask &= ~(uint64_t(1) << v);
            }
            continue;
        }

        if (polys.empty()) return finish(enumerate_free(active_mask, opts));

        if (!elim.empty()) try_fixpoint = true;  // propagation revealed structure

        int sysdeg = 0;
        for (const BoolPoly& p : polys) sysdeg = std::max(sysdeg, p.degree());
        unsigned D = unsigned(sysdeg);
        FixpointReport rep;
        while (try_fixpoint) {
            rep = run_fixpoint(polys, nvars, D, opts,
                               depth == 0 ? opts.stall_rows_root : opts.stall_rows, tel);
            if (rep.kind != FixpointReport::Unresolved) break;
            bool may_raise =
                D < opts.d_cap &&
                (depth == 0 ||
                 projected_columns(unsigned(__builtin_popcountll(active_mask)), D + 1) <=
                     opts.subnode_col_limit);
            if (!may_raise) break;
            ++D;
        }
        if (rep.kind == FixpointReport::Inconsistent) return finish({});
        if (rep.kind == FixpointReport::NewLinear) {
            ++tel.restarts;
            for (BoolPoly& l : rep.linear) polys.push_back(std::move(l));
            for (BoolPoly& c : rep.carry) polys.push_back(std::move(c));
            continue;
        }


        // branch on the most frequent variable in minimal-degree polynomials
        int dmin = polys[0].degree();
        for (const BoolPoly& p : polys) dmin = std::min(dmin, p.degree());
        std::vector<uint32_t> freq(nvars, 0);
        for (const BoolPoly& p : polys) {
            if (p.degree() != dmin) continue;
            for (uint64_t m : p.monomials()) {
                uint64_t mm = m;
                while (mm) {
                    unsigned v = unsigned(__builtin_ctzll(mm));
                    mm &= mm - 1;
                    ++freq[v];
                }
            }
        }
        unsigned best = 64;
        uint32_t best_count = 0;
        for (unsigned v = 0; v < nvars; ++v)
            if (((active_mask >> v) & 1) && freq[v] > best_count) {
                best = v;
                best_count = freq[v];
            }
        if (best == 64) {
            for (unsigned v = 0; v < nvars; ++v)
                if ((active_mask >> v) & 1) { best = v; break; }
            if (best == 64) return finish({});  // nothing left to assign
        }

        std::vector<uint64_t> merged;
        for (int val = 0; val <= 1; ++val) {
            if (st.budget == 0) {
                proven = false;
                return finish(std::move(merged));
            }
            --st.budget;
            ++tel.branch_nodes;
            std::vector<BoolPoly> sub;
            sub.reserve(polys.size());
            bool degree_dropped = false;
            for (const BoolPoly& p : polys) {
                sub.push_back(p.substitute(best, val != 0));
                if (sub.back().degree() < p.degree()) degree_dropped = true;
            }
            bool sub_proven = false;
            std::vector<uint64_t> sols =
                solve_rec(std::move(sub), nvars, active_mask & ~(uint64_t(1) << best), st,
                          tel, depth + 1, degree_dropped, sub_proven);
            for (uint64_t s : sols) {
                if (val) s |= uint64_t(1) << best;
                merged.push_back(s);
            }
            if (!sub_proven) {
                proven = false;
                return finish(std::move(merged));
            }
        }
        return finish(std::move(merged));
    }
}

} // namespace

SolveOutcome xl_solve(const std::vector<BoolPoly>& polys, unsigned nvars,
                      const SolverOptions& opts) {
    if (nvars > 64) throw TooLarge("solver handles at most 64 variables");
    SolverOptions o = opts;
    while (true) {
        SolveOutcome out;
        RecState st{&o, o.split_budget};
        uint64_t active = nvars == 64 ? ~0ULL : ((uint64_t(1) << nvars) - 1);
        bool proven = false;
        std::vector<uint64_t> sols;
        bool resource_hit = false;
        try {
            sols = solve_rec(polys, nvars, active, st, out.telemetry, 0, true, proven);
        } catch (const ResourceLimit&) {
            if (!o.auto_raise || o.d_cap >= o.max_d_cap) throw;
            resource_hit = true;
        }
        if (!resource_hit && proven) {
            for (uint64_t s : sols)
                for (const BoolPoly& p : polys)
                    if (p.eval(s)) throw Error("solver produced a non-solution");
            std::sort(sols.begin(), sols.end());
            sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
            out.solutions = std::move(sols);
            out.status = out.solutions.empty() ? SolveStatus::Inconsistent
                                               : SolveStatus::Solutions;
            if (o.log) {
                for (size_t i = 0; i < out.telemetry.step_degrees.size(); ++i) {
                    std::ostringstream os;
                    os << "step=" << i << " degree=" << out.telemetry.step_degrees[i]
                       << " rows=" << out.telemetry.matrix_dims[i].first
                       << " cols=" << out.telemetry.matrix_dims[i].second
                       << " new=" << out.telemetry.new_poly_counts[i];
                    o.log(os.str());
                }
            }
            return out;
        }
        if (o.d_cap < o.max_d_cap && o.auto_raise) {
            ++o.d_cap;
            continue;
        }
        out.status = SolveStatus::DegreeCapExceeded;
        return out;
    }
}

SolveOutcome xl_solve(const BoolSystem& system, const SolverOptions& opts) {
    return xl_solve(system.polys, system.layout.total(), opts);
}

std::vector<uint64_t> brute_force_solutions(const std::vector<BoolPoly>& polys,
                                            unsigned nvars) {
    if (nvars > 24) throw TooLarge("brute force capped at 24 variables");
    std::vector<uint64_t> out;
    for (uint64_t a = 0; a < (uint64_t(1) << nvars); ++a) {
        bool ok = true;
        for (const BoolPoly& p : polys)
            if (p.eval(a)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(a);
    }
    return out;
}

FirstFallReport verify_first_fall(const BinaryCurve& curve, uint64_t seed) {
    const BinaryFieldCtx* ctx = curve.ctx();
    unsigned n = ctx->degree();
    FirstFallReport rep;

    // x1 * S3 == x1^3 x2^2 + x1^3 x3^2 + x1 x2^2 x3^2 + x1^2 x2 x3 + B x1
    MultiPoly<FieldElement> s3p = s3(curve);
    MultiPoly<FieldElement> x1 = MultiPoly<FieldElement>::variable(3, 0, ctx->one());
    MultiPoly<FieldElement> prod = x1 * s3p;
    MultiPoly<FieldElement> expect(3);
    expect.add_term({3, 2, 0}, ctx->one());
    expect.add_term({3, 0, 2}, ctx->one());
    expect.add_term({1, 2, 2}, ctx->one());
    expect.add_term({2, 1, 1}, ctx->one());
    expect.add_term({1, 0, 0}, curve.B());
    rep.identity_ok = (prod == expect);

    std::vector<FieldElement> alpha_basis;
    for (unsigned j = 0; j < n; ++j) alpha_basis.push_back(ctx->element(1ULL << j));
    std::vector<VarSpec> full3{{0, alpha_basis}, {n, alpha_basis}, {2 * n, alpha_basis}};
    rep.allvar_coord_degree = -1;
    for (const BoolPoly& c : descend_poly(prod, full3, ctx))
        rep.allvar_coord_degree = std::max(rep.allvar_coord_degree, c.degree());

    Rng rng(seed);
    FieldElement z = ctx->element(rng.bits(n));
    MultiPoly<FieldElement> prod_z = prod.substitute(2, z);
    std::vector<VarSpec> full2{{0, alpha_basis}, {n, alpha_basis}, {2 * n, {}}};
    rep.constz_coord_degree = -1;
    for (const BoolPoly& c : descend_poly(prod_z, full2, ctx))
        rep.constz_coord_degree = std::max(rep.constz_coord_degree, c.degree());

    // first fall of a small descended chain system by direct multiplier search
    unsigned t = 3, k = (n + t - 1) / t;
    SubspaceV V = SubspaceV::low_degree(ctx, k);
    BoolSystem sys = weil_descend(build_system(curve, z, t), V, t);
    unsigned nvars = sys.layout.total();

    Macaulay mat(nvars, 4, size_t(1) << 22, 512);
    std::vector<std::pair<BoolPoly, int>> base;
    for (const BoolPoly& p : sys.polys) {
        if (p.is_zero()) continue;
        mat.register_monos(p);
        mat.insert(p);
        base.emplace_back(p, p.degree());
    }
    uint64_t all_mask = nvars == 64 ? ~0ULL : ((uint64_t(1) << nvars) - 1);
    std::vector<uint64_t> singles, pairs;
    enumerate_multipliers(all_mask, 1, singles);
    enumerate_multipliers(all_mask, 2, pairs);

    bool fall3 = false, fall4 = false;
    // nominal degree 3: single variables on the quadratics
    for (const auto& [p, d] : base) {
        if (d != 2) continue;
        for (uint64_t m : singles) {
            BoolPoly pr = p * BoolPoly({m});
            if (pr.is_zero()) continue;
            mat.register_monos(pr);
            auto r = mat.insert(pr);
            if (r.kind == Macaulay::Ins::Pivot && r.lead_deg < 3) fall3 = true;
        }
    }
    rep.no_fall_at_3 = !fall3;
    // nominal degree 4: singles on the cubics, pairs on the quadratics
    for (const auto& [p, d] : base) {
        const std::vector<uint64_t>& mults = (d == 3) ? singles : pairs;
        for (uint64_t m : mults) {
            if (mono_deg(m) + d != 4) continue;
            BoolPoly pr = p * BoolPoly({m});
            if (pr.is_zero()) continue;
            mat.register_monos(pr);
            auto r = mat.insert(pr);
            if (r.kind == Macaulay::Ins::Pivot && r.lead_deg < 4) fall4 = true;
        }
    }
    rep.fall_at_4 = fall4;
    rep.d_ff = (!fall3 && fall4) ? 4 : (fall3 ? 3 : -1);
    return rep;
}

} // namespace ecdl
