#include "ecdl/descent.hpp"

#include <algorithm>
#include <sstream>

namespace ecdl {

SubspaceV SubspaceV::low_degree(const BinaryFieldCtx* ctx, unsigned k) {
    if (k == 0 || k > ctx->degree()) throw BadArity("subspace dimension out of range");
    SubspaceV v;
    v.ctx = ctx;
    v.k = k;
    for (unsigned i = 0; i < k; ++i) v.basis.push_back(ctx->element(1ULL << i));
    return v;
}

SubspaceV SubspaceV::random_subspace(const BinaryFieldCtx* ctx, unsigned k, Rng& rng) {
    if (k == 0 || k > ctx->degree()) throw BadArity("subspace dimension out of range");
    SubspaceV v;
    v.ctx = ctx;
    v.k = k;
    // draw until linearly independent (checked by incremental elimination)
    std::vector<uint64_t> echelon;
    while (v.basis.size() < k) {
        uint64_t cand = rng.bits(ctx->degree());
        uint64_t red = cand;
        for (uint64_t e : echelon)
            if ((red ^ e) < red) red ^= e;
        if (red == 0) continue;
        echelon.push_back(red);
        std::sort(echelon.rbegin(), echelon.rend());
        v.basis.push_back(ctx->element(cand));
    }
    return v;
}

FieldElement SubspaceV::element(uint64_t mask) const {
    FieldElement acc = ctx->zero();
    for (unsigned i = 0; i < k; ++i)
        if ((mask >> i) & 1) acc += basis[i];
    return acc;
}

std::vector<FieldElement> SubspaceV::enumerate() const {
    std::vector<FieldElement> out;
    out.reserve(size_t(1) << k);
    for (uint64_t m = 0; m < (1ULL << k); ++m) out.push_back(element(m));
    return out;
}

void BoolPoly::canon() {
    std::sort(m_.begin(), m_.end());
    // XOR semantics: pairs cancel
    std::vector<uint64_t> out;
    out.reserve(m_.size());
    for (size_t i = 0; i < m_.size();) {
        size_t j = i;
        while (j < m_.size() && m_[j] == m_[i]) ++j;
        if ((j - i) % 2) out.push_back(m_[i]);
        i = j;
    }
    m_ = std::move(out);
}

int BoolPoly::degree() const {
    int d = -1;
    for (uint64_t m : m_) d = std::max(d, __builtin_popcountll(m));
    return d;
}

uint64_t BoolPoly::support() const {
    uint64_t s = 0;
    for (uint64_t m : m_) s |= m;
    return s;
}

BoolPoly BoolPoly::operator+(const BoolPoly& o) const {
    // merge of sorted sequences, dropping equal pairs
    std::vector<uint64_t> out;
    out.reserve(m_.size() + o.m_.size());
    size_t i = 0, j = 0;
    while (i < m_.size() && j < o.m_.size()) {
        if (m_[i] < o.m_[j]) out.push_back(m_[i++]);
        else if (m_[i] > o.m_[j]) out.push_back(o.m_[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), m_.begin() + i, m_.end());
    out.insert(out.end(), o.m_.begin() + j, o.m_.end());
    BoolPoly r;
    r.m_ = std::move(out);
    return r;
}

BoolPoly BoolPoly::operator*(const BoolPoly& o) const {
    std::vector<uint64_t> prods;
    prods.reserve(m_.size() * o.m_.size());
    for (uint64_t a : m_)
        for (uint64_t b : o.m_) prods.push_back(a | b);  // x^2 = x
    return BoolPoly(std::move(prods));
}

bool BoolPoly::eval(uint64_t assignment) const {
    int parity = 0;
    for (uint64_t m : m_)
        if ((m & ~assignment) == 0) parity ^= 1;
    return parity;
}

BoolPoly BoolPoly::substitute(unsigned var, bool value) const {
    uint64_t bit = uint64_t(1) << var;
    if (!(support() & bit)) return *this;
    std::vector<uint64_t> out;
    out.reserve(m_.size());
    for (uint64_t m : m_) {
        if (m & bit) {
            if (value) out.push_back(m & ~bit);
        } else {
            out.push_back(m);
        }
    }
    return BoolPoly(std::move(out));
}

BoolPoly BoolPoly::substitute_expr(unsigned var, const BoolPoly& expr) const {
    uint64_t bit = uint64_t(1) << var;
    if (!(support() & bit)) return *this;
    std::vector<uint64_t> keep_m, repl_m;
    for (uint64_t m : m_) {
        if (m & bit) repl_m.push_back(m & ~bit);
        else keep_m.push_back(m);
    }
    BoolPoly keep(std::move(keep_m)), repl(std::move(repl_m));
    return keep + repl * expr;
}

std::vector<MultiPoly<FieldElement>> build_system(const BinaryCurve& curve,
                                                  FieldElement r_x, unsigned t) {
    if (t < 2) throw BadArity("decomposition chain needs t >= 2");
    MultiPoly<FieldElement> s3p = s3(curve);
    unsigned vars = 2 * t - 2;  // x_1..x_t then u_1..u_{t-2}
    auto xv = [&](unsigned i) { return i; };      // 0-based x_i
    auto uv = [&](unsigned j) { return t + j; };  // 0-based u_j
    std::vector<MultiPoly<FieldElement>> eqs;

    if (t == 2) {
        // single equation S_3(x1, x2, r_x)
        eqs.push_back(s3p.substitute(2, r_x).remap(vars, {xv(0), xv(1), 0}));
        return eqs;
    }
    // S_3(u1, x1, x2)
    eqs.push_back(s3p.remap(vars, {uv(0), xv(0), xv(1)}));
    // S_3(u_i, u_{i+1}, x_{i+2}), 1 <= i <= t-3
    for (unsigned i = 1; i + 3 <= t; ++i)
        eqs.push_back(s3p.remap(vars, {uv(i - 1), uv(i), xv(i + 1)}));
    // S_3(u_{t-2}, x_t, r_x)
    eqs.push_back(s3p.substitute(2, r_x).remap(vars, {uv(t - 3), xv(t - 1), 0}));
    return eqs;
}

namespace {

// Element of F_{2^n} whose coordinates are Boolean polynomials: the workhorse
// of coordinate-wise descent. Multiplication expands in the polynomial basis
// and folds overflow powers through the reduction table; squaring permutes
// and folds coordinates without forming any products, which is why descended
// S_3 coordinates stay at degree 3.
struct AnfVec {
    const BinaryFieldCtx* ctx;
    std::vector<BoolPoly> c;  // size n

    explicit AnfVec(const BinaryFieldCtx* ctx_) : ctx(ctx_), c(ctx_->degree()) {}

    static AnfVec constant(const BinaryFieldCtx* ctx, FieldElement v) {
        AnfVec a(ctx);
        for (unsigned j = 0; j < ctx->degree(); ++j)
            if ((v.bits() >> j) & 1) a.c[j] = BoolPoly::one();
        return a;
    }

    static AnfVec symbol(const BinaryFieldCtx* ctx, const VarSpec& spec) {
        AnfVec a(ctx);
        for (unsigned b = 0; b < spec.basis.size(); ++b) {
            uint64_t bits = spec.basis[b].bits();
            BoolPoly vb = BoolPoly::var(spec.offset + b);
            for (unsigned j = 0; j < ctx->degree(); ++j)
                if ((bits >> j) & 1) a.c[j] += vb;
        }
        return a;
    }

    AnfVec operator+(const AnfVec& o) const {
        AnfVec r(ctx);
        for (size_t j = 0; j < c.size(); ++j) r.c[j] = c[j] + o.c[j];
        return r;
    }

    void fold(std::vector<BoolPoly>& wide, AnfVec& out) const {
        unsigned n = ctx->degree();
        for (unsigned j = 0; j < n; ++j) out.c[j] = std::move(wide[j]);
        for (unsigned j = n; j < wide.size(); ++j) {
            if (wide[j].is_zero()) continue;
            uint64_t red = ctx->pow(2, j);  // alpha^j reduced mod f
            for (unsigned b = 0; b < n; ++b)
                if ((red >> b) & 1) out.c[b] += wide[j];
        }
    }

    AnfVec operator*(const AnfVec& o) const {
        unsigned n = ctx->degree();
        std::vector<BoolPoly> wide(2 * n - 1);
        for (unsigned i = 0; i < n; ++i) {
            if (c[i].is_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                if (o.c[j].is_zero()) continue;
                wide[i + j] += c[i] * o.c[j];
            }
        }
        AnfVec r(ctx);
        fold(wide, r);
        return r;
    }

    AnfVec square() const {
        unsigned n = ctx->degree();
        std::vector<BoolPoly> wide(2 * n - 1);
        for (unsigned i = 0; i < n; ++i) wide[2 * i] = c[i];
        AnfVec r(ctx);
        fold(wide, r);
        return r;
    }

    AnfVec pow(unsigned e) const {
        if (e == 0) return constant(ctx, ctx->one());
        if (e == 1) return *this;
        AnfVec h = square().pow(e / 2);
        if (e % 2) h = h * *this;
        return h;
    }
};

} // namespace

std::vector<BoolPoly> descend_poly(const MultiPoly<FieldElement>& poly,
                                   const std::vector<VarSpec>& vars,
                                   const BinaryFieldCtx* ctx) {
    std::vector<AnfVec> sym;
    sym.reserve(vars.size());
    for (const VarSpec& v : vars) sym.push_back(AnfVec::symbol(ctx, v));
    AnfVec acc(ctx);
    for (const auto& [e, coeff] : poly.terms()) {
        AnfVec term = AnfVec::constant(ctx, coeff);
        for (unsigned v = 0; v < poly.arity(); ++v)
            if (e[v]) term = term * sym[v].pow(e[v]);
        acc = acc + term;
    }
    return std::move(acc.c);
}

BoolSystem weil_descend(const std::vector<MultiPoly<FieldElement>>& equations,
                        const SubspaceV& V, unsigned t) {
    const BinaryFieldCtx* ctx = V.ctx;
    unsigned n = ctx->degree();
    BoolSystem sys;
    sys.layout = VarLayout{t, V.k, n};
    if (sys.layout.total() > 64)
        throw TooLarge("descended system exceeds 64 Boolean variables");

    std::vector<VarSpec> specs(2 * t - 2);
    for (unsigned i = 0; i < t; ++i)
        specs[i] = VarSpec{sys.layout.x_offset(i), V.basis};
    std::vector<FieldElement> alpha_basis;
    for (unsigned j = 0; j < n; ++j) alpha_basis.push_back(ctx->element(1ULL << j));
    for (unsigned j = 0; j + 2 < t; ++j)
        specs[t + j] = VarSpec{sys.layout.u_offset(j), alpha_basis};

    for (unsigned e = 0; e < equations.size(); ++e) {
        std::vector<BoolPoly> coords = descend_poly(equations[e], specs, ctx);
        for (unsigned j = 0; j < coords.size(); ++j) {
            sys.polys.push_back(std::move(coords[j]));
            sys.provenance.emplace_back(e, j);
        }
    }
    return sys;
}

std::vector<FieldElement> decode_x(const BoolSystem& sys, const SubspaceV& V,
                                   uint64_t assignment) {
    std::vector<FieldElement> out;
    for (unsigned i = 0; i < sys.layout.t; ++i) {
        uint64_t mask = (assignment >> sys.layout.x_offset(i)) & ((1ULL << sys.layout.k) - 1);
        out.push_back(V.element(mask));
    }
    return out;
}

std::vector<FieldElement> decode_u(const BoolSystem& sys, const BinaryFieldCtx* ctx,
                                   uint64_t assignment) {
    std::vector<FieldElement> out;
    for (unsigned j = 0; j + 2 < sys.layout.t; ++j) {
        uint64_t mask = (assignment >> sys.layout.u_offset(j)) &
                        ((sys.layout.n == 64) ? ~0ULL : ((1ULL << sys.layout.n) - 1));
        out.push_back(ctx->element(mask));
    }
    return out;
}

std::string system_to_text(const BoolSystem& sys) {
    std::ostringstream os;
    auto var_name = [&](unsigned v) {
        if (v < sys.layout.x_bits()) return "b" + std::to_string(v);
        return "c" + std::to_string(v - sys.layout.x_bits());
    };
    for (const BoolPoly& p : sys.polys) {
        if (p.is_zero()) {
            os << "0\n";
            continue;
        }
        bool first_term = true;
        // high-degree terms first, ties by mask
        std::vector<uint64_t> monos = p.monomials();
        std::sort(monos.begin(), monos.end(), [](uint64_t a, uint64_t b) {
            int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
            if (pa != pb) return pa > pb;
            return a < b;
        });
        for (uint64_t m : monos) {
            if (!first_term) os << " + ";
            first_term = false;
            if (m == 0) {
                os << "1";
                continue;
            }
            bool first_var = true;
            for (unsigned v = 0; v < 64; ++v)
                if ((m >> v) & 1) {
                    if (!first_var) os << "*";
                    os << var_name(v);
                    first_var = false;
                }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace ecdl
