#ifndef ECDL_SUMPOLY_HPP
#define ECDL_SUMPOLY_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ecdl/curve.hpp"
#include "ecdl/field.hpp"

namespace ecdl {

// Sparse multivariate polynomial over a field element type El.
// Terms map exponent vectors (one entry per variable) to nonzero coefficients.
template <class El>
class MultiPoly {
public:
    using Exp = std::vector<uint8_t>;
    using Terms = std::map<Exp, El>;

    explicit MultiPoly(unsigned arity = 0) : arity_(arity) {}

    static MultiPoly constant(unsigned arity, El c) {
        MultiPoly p(arity);
        if (!c.is_zero()) p.terms_[Exp(arity, 0)] = c;
        return p;
    }
    static MultiPoly variable(unsigned arity, unsigned var, El one) {
        MultiPoly p(arity);
        Exp e(arity, 0);
        e[var] = 1;
        p.terms_[e] = one;
        return p;
    }

    unsigned arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Exp& e, El c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r(arity_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exp e(arity_);
                for (unsigned i = 0; i < arity_; ++i) e[i] = uint8_t(e1[i] + e2[i]);
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    int degree_in(unsigned var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, int(e[var]));
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (uint8_t x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    // coefficient of var^k, kept at the same arity with exponent zeroed
    MultiPoly coeff_of(unsigned var, unsigned k) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_)
            if (e[var] == k) {
                Exp e2 = e;
                e2[var] = 0;
                r.terms_[e2] = c;
            }
        return r;
    }

    MultiPoly substitute(unsigned var, El value) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            El cc = c;
            for (unsigned i = 0; i < e[var]; ++i) cc *= value;
            Exp e2 = e;
            e2[var] = 0;
            r.add_term(e2, cc);
        }
        return r;
    }

    // reindex variables: new_var = perm[old_var]; target arity may be larger
    MultiPoly remap(unsigned new_arity, const std::vector<unsigned>& perm) const {
        MultiPoly r(new_arity);
        for (const auto& [e, c] : terms_) {
            Exp e2(new_arity, 0);
            for (unsigned i = 0; i < arity_; ++i) e2[perm[i]] = uint8_t(e2[perm[i]] + e[i]);
            r.add_term(e2, c);
        }
        return r;
    }

    El eval(const std::vector<El>& assignment) const {
        El acc = assignment.at(0).zero_like();
        // power-table evaluation
        std::vector<std::vector<El>> pw(arity_);
        for (unsigned v = 0; v < arity_; ++v) {
            int d = degree_in(v);
            if (d >= 0) {
                pw[v].resize(size_t(d) + 1);
                pw[v][0] = assignment[v].one_like();
                for (int i = 1; i <= d; ++i) pw[v][i] = pw[v][i - 1] * assignment[v];
            }
        }
        for (const auto& [e, c] : terms_) {
            El t = c;
            for (unsigned v = 0; v < arity_; ++v)
                if (e[v]) t *= pw[v][e[v]];
            acc += t;
        }
        return acc;
    }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

private:
    unsigned arity_;
    Terms terms_;
};

// Sylvester resultant of p and q with respect to var, fraction-free Bareiss
// elimination over the polynomial ring. Throws ZeroLeadingForm if either
// leading coefficient in var is the zero polynomial.
template <class El>
MultiPoly<El> resultant(const MultiPoly<El>& p, const MultiPoly<El>& q, unsigned var,
                        size_t term_limit = (size_t(1) << 22));

// The explicit trivariate S_3 for the two supported curve shapes.
MultiPoly<FieldElement> s3(const BinaryCurve& curve);
MultiPoly<PrimeFieldElement> s3_odd(const PrimeCurve& curve);

// S_m over the curve's field, m >= 3, built by chaining resultants with r = 1.
// Symmetric of degree 2^(m-2) in each variable; memoized per cache object.
class SumPolyCache {
public:
    explicit SumPolyCache(const BinaryCurve& curve, size_t term_limit = (size_t(1) << 22))
        : curve_(curve), term_limit_(term_limit) {}

    const MultiPoly<FieldElement>& get(unsigned m);
    const BinaryCurve& curve() const { return curve_; }

private:
    const MultiPoly<FieldElement>& get_unlocked(unsigned m);

    BinaryCurve curve_;
    size_t term_limit_;
    std::map<unsigned, MultiPoly<FieldElement>> memo_;
    std::mutex mu_;
};

// Stable sorted text form: one term per line as hex-coefficient * powers.
std::string poly_to_text(const MultiPoly<FieldElement>& p,
                         const std::vector<std::string>& var_names);

} // namespace ecdl

#endif
