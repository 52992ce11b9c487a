#ifndef ECDL_FIELD_HPP
#define ECDL_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ecdl/errors.hpp"

namespace ecdl {

class FieldElement;

// Context for F_2[X]/(f), deg f = n, desk scale n <= 32.
// Elements are bit masks over the basis 1, alpha, ..., alpha^(n-1).
// Immutable after construction; safe to share across threads.
class BinaryFieldCtx {
public:
    // Throws ReducibleModulus unless f is irreducible of exact degree n.
    BinaryFieldCtx(unsigned n, uint64_t f);

    unsigned degree() const { return n_; }
    uint64_t modulus() const { return f_; }
    uint64_t order() const { return 1ULL << n_; }  // field size 2^n
    uint64_t mask() const { return (n_ == 64) ? ~0ULL : ((1ULL << n_) - 1); }

    // delta with trace 1 defining the quadratic extension beta^2 + beta = delta
    uint64_t ext_delta() const { return delta_; }

    FieldElement element(uint64_t bits) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement alpha() const;  // the class of X

    uint64_t add(uint64_t a, uint64_t b) const { return a ^ b; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t sqr(uint64_t a) const;
    uint64_t inv(uint64_t a) const;  // throws DivisionByZero on 0
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t sqrt(uint64_t a) const;  // Frobenius inverse: a^(2^(n-1))
    int trace(uint64_t a) const;

    // Root of w^2 + w = c when trace(c) = 0; throws NoSolution otherwise.
    // Uses the half-trace for odd n and a basis-wise linear solve for even n.
    uint64_t artin_schreier_root(uint64_t c) const;

    // Lexicographically least irreducible of degree n (mask order).
    static uint64_t default_modulus(unsigned n);
    static bool is_irreducible(uint64_t f, unsigned n);

    bool operator==(const BinaryFieldCtx& o) const { return n_ == o.n_ && f_ == o.f_; }

private:
    unsigned n_;
    uint64_t f_;       // (n+1)-bit mask of the defining polynomial
    uint64_t delta_;   // least trace-1 element
    std::vector<uint64_t> alpha_powers_;  // alpha^(n+i) reduced, i in [0, n-1]
    // echelonized map L(w) = w^2 + w for the even-n Artin-Schreier solve
    std::vector<uint64_t> as_m_, as_w_;
    std::vector<int> as_pivot_;
};

// Value type: n-bit coefficient mask plus its (borrowed) context.
class FieldElement {
public:
    FieldElement() : ctx_(nullptr), bits_(0) {}
    FieldElement(const BinaryFieldCtx* ctx, uint64_t bits) : ctx_(ctx), bits_(bits) {}

    const BinaryFieldCtx* ctx() const { return ctx_; }
    uint64_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool is_one() const { return bits_ == 1; }

    FieldElement operator+(const FieldElement& o) const { return {ctx_, bits_ ^ o.bits_}; }
    FieldElement operator-(const FieldElement& o) const { return {ctx_, bits_ ^ o.bits_}; }
    FieldElement operator*(const FieldElement& o) const { return {ctx_, ctx_->mul(bits_, o.bits_)}; }
    FieldElement& operator+=(const FieldElement& o) { bits_ ^= o.bits_; return *this; }
    FieldElement& operator*=(const FieldElement& o) { bits_ = ctx_->mul(bits_, o.bits_); return *this; }
    FieldElement operator-() const { return *this; }

    FieldElement square() const { return {ctx_, ctx_->sqr(bits_)}; }
    FieldElement sqrt() const { return {ctx_, ctx_->sqrt(bits_)}; }
    FieldElement inverse() const { return {ctx_, ctx_->inv(bits_)}; }
    FieldElement pow(uint64_t e) const { return {ctx_, ctx_->pow(bits_, e)}; }
    int trace() const { return ctx_->trace(bits_); }

    bool operator==(const FieldElement& o) const { return bits_ == o.bits_; }
    bool operator!=(const FieldElement& o) const { return bits_ != o.bits_; }
    bool operator<(const FieldElement& o) const { return bits_ < o.bits_; }

    FieldElement one_like() const { return {ctx_, 1}; }
    FieldElement zero_like() const { return {ctx_, 0}; }

    std::string to_hex() const;

private:
    const BinaryFieldCtx* ctx_;
    uint64_t bits_;
};

// a + beta*b with beta^2 + beta = delta, Tr(delta) = 1, so F_{2^(2n)} over the base.
// The nontrivial automorphism over F_{2^n} is conj: a + beta*b -> (a+b) + beta*b.
class QuadExtElement {
public:
    QuadExtElement() = default;
    QuadExtElement(FieldElement a, FieldElement b) : a_(a), b_(b) {}
    static QuadExtElement embed(FieldElement a) {
        return {a, FieldElement(a.ctx(), 0)};
    }

    const FieldElement& re() const { return a_; }
    const FieldElement& im() const { return b_; }
    bool in_base_field() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadExtElement operator+(const QuadExtElement& o) const { return {a_ + o.a_, b_ + o.b_}; }
    QuadExtElement operator*(const QuadExtElement& o) const;
    QuadExtElement square() const;
    QuadExtElement inverse() const;
    QuadExtElement conj() const { return {a_ + b_, b_}; }
    // Norm down to the base field: x * conj(x) = a^2 + ab + delta b^2.
    FieldElement norm() const;

    bool operator==(const QuadExtElement& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadExtElement& o) const { return !(*this == o); }

    // Root of w^2 + w = c for c in the base field with trace 1:
    // w = H(c + delta) + beta, where H is the base-field Artin-Schreier solver.
    static QuadExtElement artin_schreier_root_ext(FieldElement c);

private:
    FieldElement a_, b_;
};

// Small prime field for the char >= 5 summation-polynomial cross-check.
class PrimeFieldElement {
public:
    PrimeFieldElement() : p_(2), v_(0) {}
    PrimeFieldElement(uint32_t p, int64_t v) : p_(p) {
        int64_t r = v % int64_t(p);
        if (r < 0) r += p;
        v_ = uint32_t(r);
    }

    uint32_t modulus() const { return p_; }
    uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    PrimeFieldElement operator+(const PrimeFieldElement& o) const {
        return raw(p_, (v_ + o.v_) % p_);
    }
    PrimeFieldElement operator-(const PrimeFieldElement& o) const {
        return raw(p_, (v_ + p_ - o.v_) % p_);
    }
    PrimeFieldElement operator*(const PrimeFieldElement& o) const {
        return raw(p_, uint32_t((uint64_t(v_) * o.v_) % p_));
    }
    PrimeFieldElement operator-() const { return raw(p_, v_ == 0 ? 0 : p_ - v_); }
    PrimeFieldElement& operator+=(const PrimeFieldElement& o) { *this = *this + o; return *this; }
    PrimeFieldElement& operator*=(const PrimeFieldElement& o) { *this = *this * o; return *this; }

    PrimeFieldElement inverse() const;
    PrimeFieldElement square() const { return *this * *this; }
    PrimeFieldElement pow(uint64_t e) const;

    bool operator==(const PrimeFieldElement& o) const { return v_ == o.v_; }
    bool operator!=(const PrimeFieldElement& o) const { return v_ != o.v_; }
    bool operator<(const PrimeFieldElement& o) const { return v_ < o.v_; }

    PrimeFieldElement one_like() const { return {p_, 1}; }
    PrimeFieldElement zero_like() const { return {p_, 0}; }

    std::string to_hex() const;

private:
    static PrimeFieldElement raw(uint32_t p, uint32_t v) {
        PrimeFieldElement e;
        e.p_ = p;
        e.v_ = v;
        return e;
    }
    uint32_t p_, v_;
};

} // namespace ecdl

#endif
