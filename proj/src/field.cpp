#include "ecdl/field.hpp"

#include <array>
#include <cstdio>

namespace ecdl {

namespace {

int poly_degree(uint64_t p) {
    if (p == 0) return -1;
    return 63 - __builtin_clzll(p);
}

// carry-less product of two <= 32-bit polynomials (fits in 63 bits)
uint64_t clmul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        uint64_t low = b & (~b + 1);
        r ^= a * low;  // multiplying by a power of two is a shift
        b ^= low;
    }
    return r;
}

uint64_t poly_mod(uint64_t a, uint64_t f) {
    int df = poly_degree(f);
    int da = poly_degree(a);
    while (da >= df) {
        a ^= f << (da - df);
        da = poly_degree(a);
    }
    return a;
}

uint64_t poly_gcd(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

uint64_t poly_mulmod(uint64_t a, uint64_t b, uint64_t f) {
    return poly_mod(clmul(a, b), f);
}

} // namespace

bool BinaryFieldCtx::is_irreducible(uint64_t f, unsigned n) {
    if (n == 0 || poly_degree(f) != int(n)) return false;
    if (n == 1) return true;
    if ((f & 1) == 0) return false;  // divisible by x
    // f of degree n is irreducible iff it has no irreducible factor of degree
    // <= n/2; x^(2^i) - x is the product of all irreducibles of degree dividing i.
    uint64_t t = 2;  // x
    for (unsigned i = 1; i <= n / 2; ++i) {
        t = poly_mulmod(t, t, f);  // t = x^(2^i) mod f
        if (poly_gcd(t ^ 2ULL, f) != 1) return false;
    }
    return true;
}

uint64_t BinaryFieldCtx::default_modulus(unsigned n) {
    if (n == 0 || n > 32) throw ConfigError("field degree out of desk range [1,32]");
    if (n == 1) return 2;  // X, so F_2 itself; arithmetic degenerates gracefully
    for (uint64_t rest = 1; rest < (1ULL << n); rest += 2) {
        uint64_t f = (1ULL << n) | rest;
        if (is_irreducible(f, n)) return f;
    }
    throw Error("no irreducible polynomial found");  // unreachable
}

BinaryFieldCtx::BinaryFieldCtx(unsigned n, uint64_t f) : n_(n), f_(f) {
    if (n == 0 || n > 32) throw ConfigError("field degree out of desk range [1,32]");
    if (!is_irreducible(f, n)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "f=0x%llx is not irreducible of degree %u",
                      (unsigned long long)f, n);
        throw ReducibleModulus(buf);
    }
    // reduction table: alpha^(n+i) mod f for the overflow bits of a product
    alpha_powers_.resize(n);
    for (unsigned i = 0; i < n; ++i)
        alpha_powers_[i] = poly_mod(1ULL << (n + i), f);

    // least element with trace 1
    delta_ = 0;
    for (uint64_t c = 1; c < order(); ++c) {
        if (trace(c) == 1) {
            delta_ = c;
            break;
        }
    }

    // Echelonize the F_2-linear map L(w) = w^2 + w so artin_schreier_root can
    // solve L(w) = c for any n (the half-trace shortcut only covers odd n).
    {
        // columns of L in basis coords
        std::vector<uint64_t> col(n);
        for (unsigned j = 0; j < n; ++j) {
            uint64_t e = 1ULL << j;
            col[j] = sqr(e) ^ e;
        }
        // Gauss: find, for each target basis vector (restricted to the image),
        // some w with L(w) = e_i + (possibly) correction. We row-reduce the
        // n x n system [L | I] over F_2.
        std::vector<uint64_t> m(n), w(n);
        for (unsigned j = 0; j < n; ++j) {
            m[j] = col[j];
            w[j] = 1ULL << j;
        }
        // eliminate to echelon over rows=bit positions
        std::vector<int> pivot_of_bit(n, -1);
        for (unsigned j = 0; j < n; ++j) {
            uint64_t cur = m[j], curw = w[j];
            for (int b = int(n) - 1; b >= 0; --b) {
                if (!((cur >> b) & 1)) continue;
                if (pivot_of_bit[b] >= 0) {
                    cur ^= m[pivot_of_bit[b]];
                    curw ^= w[pivot_of_bit[b]];
                } else {
                    pivot_of_bit[b] = int(j);
                    m[j] = cur;
                    w[j] = curw;
                    break;
                }
            }
        }
        // store reduced pivots for on-demand solving
        as_m_ = m;
        as_w_ = w;
        as_pivot_ = pivot_of_bit;
    }
}

uint64_t BinaryFieldCtx::mul(uint64_t a, uint64_t b) const {
    uint64_t prod = clmul(a, b);
    uint64_t r = prod & mask();
    uint64_t hi = prod >> n_;
    while (hi) {
        int b2 = poly_degree(hi);
        r ^= alpha_powers_[b2] & mask();
        // alpha_powers entries are already reduced below degree n
        hi ^= 1ULL << b2;
    }
    return r;
}

uint64_t BinaryFieldCtx::sqr(uint64_t a) const { return mul(a, a); }

uint64_t BinaryFieldCtx::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint64_t BinaryFieldCtx::inv(uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero field element");
    // Fermat: a^(2^n - 2)
    return pow(a, order() - 2);
}

uint64_t BinaryFieldCtx::sqrt(uint64_t a) const {
    uint64_t r = a;
    for (unsigned i = 0; i + 1 < n_; ++i) r = sqr(r);
    return r;
}

int BinaryFieldCtx::trace(uint64_t a) const {
    uint64_t t = 0, v = a;
    for (unsigned i = 0; i < n_; ++i) {
        t ^= v;
        v = sqr(v);
    }
    // t is 0 or 1 as a field element
    return int(t & 1);
}

uint64_t BinaryFieldCtx::artin_schreier_root(uint64_t c) const {
    if (trace(c) != 0) throw NoSolution("w^2 + w = c has no root: trace(c) = 1");
    if (n_ % 2 == 1) {
        // half-trace: w = sum c^(2^(2i)), i = 0..(n-1)/2
        uint64_t w = 0, v = c;
        for (unsigned i = 0; i <= (n_ - 1) / 2; ++i) {
            w ^= v;
            v = sqr(sqr(v));
        }
        return w;
    }
    // even n: solve L(w) = c with the precomputed echelon of L
    uint64_t cur = c, w = 0;
    for (int b = int(n_) - 1; b >= 0; --b) {
        if (!((cur >> b) & 1)) continue;
        int piv = as_pivot_[b];
        if (piv < 0) throw NoSolution("Artin-Schreier solve failed");  // cannot happen for trace 0
        cur ^= as_m_[piv];
        w ^= as_w_[piv];
    }
    // w or w+1 is the root; L(w) = c by construction
    return w;
}

FieldElement BinaryFieldCtx::element(uint64_t bits) const { return {this, bits & mask()}; }
FieldElement BinaryFieldCtx::zero() const { return {this, 0}; }
FieldElement BinaryFieldCtx::one() const { return {this, 1}; }
FieldElement BinaryFieldCtx::alpha() const { return {this, n_ > 1 ? 2ULL : 0ULL}; }

std::string FieldElement::to_hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)bits_);
    return buf;
}

QuadExtElement QuadExtElement::operator*(const QuadExtElement& o) const {
    // (a1 + b*b1)(a2 + b*b2) = a1a2 + delta b1b2 + beta (a1b2 + a2b1 + b1b2)
    const BinaryFieldCtx* ctx = a_.ctx();
    FieldElement delta = ctx->element(ctx->ext_delta());
    FieldElement aa = a_ * o.a_;
    FieldElement bb = b_ * o.b_;
    FieldElement cross = a_ * o.b_ + o.a_ * b_;
    return {aa + delta * bb, cross + bb};
}

QuadExtElement QuadExtElement::square() const {
    const BinaryFieldCtx* ctx = a_.ctx();
    FieldElement delta = ctx->element(ctx->ext_delta());
    FieldElement b2 = b_.square();
    return {a_.square() + delta * b2, b2};
}

FieldElement QuadExtElement::norm() const {
    const BinaryFieldCtx* ctx = a_.ctx();
    FieldElement delta = ctx->element(ctx->ext_delta());
    return a_.square() + a_ * b_ + delta * b_.square();
}

QuadExtElement QuadExtElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero extension element");
    FieldElement nrm_inv = norm().inverse();
    QuadExtElement c = conj();
    return {c.re() * nrm_inv, c.im() * nrm_inv};
}

QuadExtElement QuadExtElement::artin_schreier_root_ext(FieldElement c) {
    const BinaryFieldCtx* ctx = c.ctx();
    // (w0 + beta)^2 + (w0 + beta) = w0^2 + w0 + delta, so we need
    // w0^2 + w0 = c + delta, solvable since trace(c + delta) = 0.
    FieldElement target = c + ctx->element(ctx->ext_delta());
    FieldElement w0 = ctx->element(ctx->artin_schreier_root(target.bits()));
    return {w0, ctx->one()};
}

PrimeFieldElement PrimeFieldElement::inverse() const {
    if (v_ == 0) throw DivisionByZero("inverse of zero mod p");
    // extended Euclid
    int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b) {
        int64_t q = a / b;
        int64_t t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return {p_, x0};
}

PrimeFieldElement PrimeFieldElement::pow(uint64_t e) const {
    PrimeFieldElement r(p_, 1), base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string PrimeFieldElement::to_hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)v_);
    return buf;
}

} // namespace ecdl
