#include "ecdl/sumpoly.hpp"

#include <sstream>

namespace ecdl {

namespace {

// Exact division in the polynomial ring (lex leading terms). Throws if the
// division leaves a remainder, which Bareiss elimination guarantees not to.
template <class El>
MultiPoly<El> exact_divide(MultiPoly<El> num, const MultiPoly<El>& den) {
    if (den.is_zero()) throw Error("exact_divide by zero polynomial");
    MultiPoly<El> q(num.arity());
    // constant divisor fast path
    if (den.term_count() == 1 && den.terms().begin()->first ==
            typename MultiPoly<El>::Exp(den.arity(), 0)) {
        El inv = den.terms().begin()->second.inverse();
        for (const auto& [e, c] : num.terms()) q.add_term(e, c * inv);
        return q;
    }
    const auto& dlead = *den.terms().rbegin();
    El dinv = dlead.second.inverse();
    while (!num.is_zero()) {
        const auto& nlead = *num.terms().rbegin();
        typename MultiPoly<El>::Exp e(num.arity());
        for (unsigned i = 0; i < num.arity(); ++i) {
            if (nlead.first[i] < dlead.first[i])
                throw Error("polynomial division is not exact");
            e[i] = uint8_t(nlead.first[i] - dlead.first[i]);
        }
        El c = nlead.second * dinv;
        MultiPoly<El> t(num.arity());
        t.add_term(e, c);
        q.add_term(e, c);
        num = num - t * den;
    }
    return q;
}

// Fraction-free Bareiss determinant; destroys the matrix.
template <class El>
MultiPoly<El> det_bareiss(std::vector<std::vector<MultiPoly<El>>>& m, unsigned arity,
                          size_t term_limit) {
    unsigned d = unsigned(m.size());
    if (d == 0) return MultiPoly<El>(arity);
    MultiPoly<El> prev(arity);
    bool have_prev = false;
    int swaps = 0;
    for (unsigned k = 0; k + 1 < d; ++k) {
        if (m[k][k].is_zero()) {
            unsigned s = k + 1;
            while (s < d && m[s][k].is_zero()) ++s;
            if (s == d) return MultiPoly<El>(arity);  // singular
            std::swap(m[k], m[s]);
            ++swaps;
        }
        for (unsigned i = k + 1; i < d; ++i) {
            for (unsigned j = k + 1; j < d; ++j) {
                MultiPoly<El> t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = have_prev ? exact_divide(std::move(t), prev) : std::move(t);
                if (m[i][j].term_count() > term_limit)
                    throw SizeLimit("resultant term count exceeds configured bound");
            }
            m[i][k] = MultiPoly<El>(arity);
        }
        prev = m[k][k];
        have_prev = true;
    }
    MultiPoly<El> det = m[d - 1][d - 1];
    if (swaps % 2 == 1) det = -det;
    return det;
}

} // namespace

template <class El>
MultiPoly<El> resultant_by_quadratic(const MultiPoly<El>& p, const MultiPoly<El>& q,
                                     unsigned var, size_t term_limit);

template <class El>
MultiPoly<El> resultant(const MultiPoly<El>& p, const MultiPoly<El>& q, unsigned var,
                        size_t term_limit) {
    int dp = p.degree_in(var), dq = q.degree_in(var);
    if (dp <= 0 || dq <= 0) throw BadArity("resultant needs positive degree in var");
    if (p.coeff_of(var, unsigned(dp)).is_zero() || q.coeff_of(var, unsigned(dq)).is_zero())
        throw ZeroLeadingForm("leading coefficient is identically zero");

    if (dq == 2 && dp >= 3) return resultant_by_quadratic(p, q, var, term_limit);
    if (dp == 2 && dq >= 3) return resultant_by_quadratic(q, p, var, term_limit);

    unsigned d = unsigned(dp + dq);
    std::vector<std::vector<MultiPoly<El>>> m(d, std::vector<MultiPoly<El>>(d, MultiPoly<El>(p.arity())));
    // Sylvester layout: dq staggered rows of p's coefficients, dp rows of q's
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) m[i][i + j] = p.coeff_of(var, unsigned(dp - j));
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = q.coeff_of(var, unsigned(dq - j));
    return det_bareiss(m, p.arity(), term_limit);
}

// Res_X(p, q) with deg_X q = 2: generalized Laplace expansion of the Sylvester
// determinant along its two rows of p-coefficients. The remaining minors are
// determinants of small banded matrices of q-coefficients, which stay tiny,
// so the big polynomials are only ever touched in the 2x2 top minors.
template <class El>
MultiPoly<El> resultant_by_quadratic(const MultiPoly<El>& p, const MultiPoly<El>& q,
                                     unsigned var, size_t term_limit) {
    unsigned dp = unsigned(p.degree_in(var));
    unsigned dim = dp + 2;
    std::vector<MultiPoly<El>> pc(dp + 1, MultiPoly<El>(p.arity()));
    for (unsigned j = 0; j <= dp; ++j) pc[j] = p.coeff_of(var, dp - j);  // pc[c] = M[0][c]
    std::vector<MultiPoly<El>> qc(3, MultiPoly<El>(p.arity()));
    for (unsigned j = 0; j <= 2; ++j) qc[j] = q.coeff_of(var, 2 - j);

    auto top0 = [&](unsigned c) {
        return c <= dp ? pc[c] : MultiPoly<El>(p.arity());
    };
    auto top1 = [&](unsigned c) {
        return (c >= 1 && c <= dp + 1) ? pc[c - 1] : MultiPoly<El>(p.arity());
    };

    MultiPoly<El> acc(p.arity());
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = i + 1; j < dim; ++j) {
            MultiPoly<El> top = top0(i) * top1(j) - top0(j) * top1(i);
            if (top.is_zero()) continue;
            // bottom minor: q-band rows (r, c) -> qc[c - r], columns without i, j
            std::vector<unsigned> cols;
            for (unsigned c = 0; c < dim; ++c)
                if (c != i && c != j) cols.push_back(c);
            std::vector<std::vector<MultiPoly<El>>> bm(
                dp, std::vector<MultiPoly<El>>(dp, MultiPoly<El>(p.arity())));
            for (unsigned r = 0; r < dp; ++r)
                for (unsigned c = 0; c < dp; ++c) {
                    unsigned col = cols[c];
                    if (col >= r && col - r <= 2) bm[r][c] = qc[col - r];
                }
            MultiPoly<El> bottom = det_bareiss(bm, p.arity(), term_limit);
            if (bottom.is_zero()) continue;
            MultiPoly<El> contrib = top * bottom;
            // Laplace sign: rows {0,1}, columns {i,j}
            if ((1 + i + j) % 2 == 1) contrib = -contrib;
            acc = acc + contrib;
            if (acc.term_count() > term_limit)
                throw SizeLimit("resultant term count exceeds configured bound");
        }
    }
    return acc;
}

template MultiPoly<FieldElement> resultant(const MultiPoly<FieldElement>&,
                                           const MultiPoly<FieldElement>&, unsigned, size_t);
template MultiPoly<PrimeFieldElement> resultant(const MultiPoly<PrimeFieldElement>&,
                                                const MultiPoly<PrimeFieldElement>&, unsigned,
                                                size_t);

MultiPoly<FieldElement> s3(const BinaryCurve& curve) {
    // (x1x2 + x1x3 + x2x3)^2 + x1x2x3 + B; cross terms of the square vanish
    const BinaryFieldCtx* ctx = curve.ctx();
    MultiPoly<FieldElement> p(3);
    FieldElement one = ctx->one();
    p.add_term({2, 2, 0}, one);
    p.add_term({2, 0, 2}, one);
    p.add_term({0, 2, 2}, one);
    p.add_term({1, 1, 1}, one);
    p.add_term({0, 0, 0}, curve.B());
    return p;
}

MultiPoly<PrimeFieldElement> s3_odd(const PrimeCurve& curve) {
    // (x1-x2)^2 x3^2 - 2[(x1+x2)(x1x2+A) + 2B] x3 + (x1x2-A)^2 - 4B(x1+x2)
    uint32_t p = curve.p();
    using MP = MultiPoly<PrimeFieldElement>;
    PrimeFieldElement one(p, 1), two(p, 2), four(p, 4);
    MP x1 = MP::variable(3, 0, one), x2 = MP::variable(3, 1, one), x3 = MP::variable(3, 2, one);
    MP A = MP::constant(3, curve.A()), B = MP::constant(3, curve.B());
    MP d = x1 - x2;
    MP term1 = d * d * x3 * x3;
    MP inner = (x1 + x2) * (x1 * x2 + A) + MP::constant(3, two) * B;
    MP term2 = MP::constant(3, two) * inner * x3;
    MP e = x1 * x2 - A;
    MP term3 = e * e - MP::constant(3, four) * B * (x1 + x2);
    return term1 - term2 + term3;
}

const MultiPoly<FieldElement>& SumPolyCache::get(unsigned m) {
    std::lock_guard<std::mutex> lock(mu_);
    return get_unlocked(m);
}

const MultiPoly<FieldElement>& SumPolyCache::get_unlocked(unsigned m) {
    if (m < 3 || m > 7) throw BadArity("S_m supported for 3 <= m <= 7 at desk scale");
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    if (m == 3) return memo_.emplace(3, s3(curve_)).first->second;

    const MultiPoly<FieldElement>& prev = get_unlocked(m - 1);

    // S_m(v0..v_{m-1}) = Res_X(S_{m-1}(v0..v_{m-3}, X), S_3(v_{m-2}, v_{m-1}, X))
    unsigned work = m + 1;  // X lives at index m
    std::vector<unsigned> perm_prev(m - 1);
    for (unsigned i = 0; i + 1 < m - 1; ++i) perm_prev[i] = i;
    perm_prev[m - 2] = m;
    MultiPoly<FieldElement> a = prev.remap(work, perm_prev);
    MultiPoly<FieldElement> b = s3(curve_).remap(work, {m - 2, m - 1, m});
    MultiPoly<FieldElement> r = resultant(a, b, m, term_limit_);

    // drop the eliminated X (exponent zero everywhere)
    std::vector<unsigned> shrink(work, 0);
    for (unsigned i = 0; i < m; ++i) shrink[i] = i;
    MultiPoly<FieldElement> sm = r.remap(m, shrink);

    // char 2: a resultant that came out as a perfect square is reduced;
    // squaring is coefficient-wise sqrt and halved exponents
    auto all_even = [](const MultiPoly<FieldElement>& p) {
        if (p.is_zero()) return false;
        for (const auto& [e, c] : p.terms())
            for (uint8_t x : e)
                if (x % 2) return false;
        return true;
    };
    while (all_even(sm)) {
        MultiPoly<FieldElement> half(m);
        for (const auto& [e, c] : sm.terms()) {
            std::vector<uint8_t> e2(e);
            for (auto& x : e2) x = uint8_t(x / 2);
            half.add_term(e2, c.sqrt());
        }
        sm = half;
    }
    int want = 1 << (m - 2);
    for (unsigned v = 0; v < m; ++v)
        if (sm.degree_in(v) != want)
            throw Error("S_m construction degree check failed");
    return memo_.emplace(m, std::move(sm)).first->second;
}

std::string poly_to_text(const MultiPoly<FieldElement>& p,
                         const std::vector<std::string>& var_names) {
    std::ostringstream os;
    for (const auto& [e, c] : p.terms()) {
        os << c.to_hex();
        bool any = false;
        for (unsigned v = 0; v < p.arity(); ++v) {
            if (!e[v]) continue;
            os << (any ? "*" : " ") << var_names.at(v);
            if (e[v] > 1) os << "^" << int(e[v]);
            any = true;
        }
        if (!any) os << " 1";
        os << "\n";
    }
    return os.str();
}

} // namespace ecdl
