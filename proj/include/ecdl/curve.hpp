#ifndef ECDL_CURVE_HPP
#define ECDL_CURVE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ecdl/field.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

// Affine point or infinity; El is FieldElement or QuadExtElement.
template <class El>
struct Pt {
    El x, y;
    bool inf = true;

    Pt() = default;
    Pt(El px, El py) : x(px), y(py), inf(false) {}
    static Pt infinity() { return Pt(); }
    bool is_inf() const { return inf; }
    bool operator==(const Pt& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    bool operator!=(const Pt& o) const { return !(*this == o); }
};

using Point = Pt<FieldElement>;
using ExtPoint = Pt<QuadExtElement>;

// Y^2 + XY = X^3 + A X^2 + B over F_{2^n}; B != 0 keeps the curve nonsingular.
class BinaryCurve {
public:
    BinaryCurve(const BinaryFieldCtx* ctx, FieldElement A, FieldElement B);

    const BinaryFieldCtx* ctx() const { return ctx_; }
    FieldElement A() const { return A_; }
    FieldElement B() const { return B_; }

    bool on_curve(const Point& p) const;
    bool on_curve_ext(const ExtPoint& p) const;

    Point add(const Point& p, const Point& q) const { return add_t(p, q, A_); }
    Point neg(const Point& p) const { return neg_t(p); }
    Point mul(uint64_t k, const Point& p) const { return mul_t(k, p, A_); }

    ExtPoint add_ext(const ExtPoint& p, const ExtPoint& q) const {
        return add_t(p, q, QuadExtElement::embed(A_));
    }
    ExtPoint neg_ext(const ExtPoint& p) const { return neg_t(p); }
    ExtPoint mul_ext(uint64_t k, const ExtPoint& p) const {
        return mul_t(k, p, QuadExtElement::embed(A_));
    }
    static ExtPoint embed(const Point& p) {
        if (p.is_inf()) return ExtPoint::infinity();
        return {QuadExtElement::embed(p.x), QuadExtElement::embed(p.y)};
    }
    // Projection of an extension point with base-field coordinates.
    static Point project(const ExtPoint& p);

    // Rational lifts of x: 0, 1 (x = 0) or 2 points; throws NoRationalPoint
    // when y^2 + xy = x^3 + Ax^2 + B has no root over F_{2^n}.
    std::vector<Point> lift_x(FieldElement x) const;
    // Lifts with coordinates in F_{2^(2n)}; always nonempty. Rational lifts
    // come back embedded (imaginary part zero).
    std::vector<ExtPoint> lift_x_ext(FieldElement x) const;
    // Number of rational lifts without materializing them.
    int count_lifts(FieldElement x) const;

    // The unique order-2 point (0, sqrt(B)).
    Point order2_point() const;

private:
    template <class E>
    static Pt<E> neg_t(const Pt<E>& p) {
        if (p.is_inf()) return p;
        return {p.x, p.x + p.y};
    }

    template <class E>
    static Pt<E> add_t(const Pt<E>& p, const Pt<E>& q, const E& a) {
        if (p.is_inf()) return q;
        if (q.is_inf()) return p;
        if (p.x == q.x) {
            if (q.y == p.x + p.y) return Pt<E>::infinity();  // q == -p
            // doubling; x = 0 is the order-2 point
            if (p.x.is_zero()) return Pt<E>::infinity();
            E lam = p.x + p.y * p.x.inverse();
            E x3 = lam.square() + lam + a;
            E y3 = p.x.square() + (lam + one_like(a)) * x3;
            return {x3, y3};
        }
        E lam = (p.y + q.y) * (p.x + q.x).inverse();
        E x3 = lam.square() + lam + p.x + q.x + a;
        E y3 = lam * (p.x + x3) + x3 + p.y;
        return {x3, y3};
    }

    template <class E>
    static Pt<E> mul_t(uint64_t k, const Pt<E>& p, const E& a) {
        Pt<E> acc = Pt<E>::infinity();
        Pt<E> base = p;
        while (k) {
            if (k & 1) acc = add_t(acc, base, a);
            base = add_t(base, base, a);
            k >>= 1;
        }
        return acc;
    }

    static FieldElement one_like(const FieldElement& a) { return a.ctx()->one(); }
    static QuadExtElement one_like(const QuadExtElement& a) {
        return QuadExtElement::embed(a.re().ctx()->one());
    }

    const BinaryFieldCtx* ctx_;
    FieldElement A_, B_;
};

// Exhaustive count for n <= 24, baby-step giant-step beyond.
uint64_t group_order(const BinaryCurve& curve);

// Largest prime factor via trial division (N < 2^34 at desk scale).
uint64_t largest_prime_factor(uint64_t n);
bool is_prime_u64(uint64_t n);

struct SubgroupCtx {
    std::shared_ptr<const BinaryFieldCtx> ctx;
    BinaryCurve curve;
    Point P;       // base point of prime order r
    uint64_t r;    // prime order of P
    uint64_t N;    // #E(F_q)
    uint64_t cofactor;
    Point Q;       // target
    std::optional<uint64_t> z_true;  // planted logarithm for test instances
};

enum class BMode { One, Random };

// Deterministic instance from a 64-bit seed: random A (and B when requested),
// P of the largest prime order r, Q = zP with z recorded. Internal redraws on
// degenerate curves keep the result a pure function of the seed; throws
// DegenerateGroup only if every attempt fails.
SubgroupCtx make_instance(unsigned n, BMode bmode, uint64_t seed,
                          uint64_t f_override = 0);

// --- small odd-characteristic curve, used by the S_3 cross-checks ---

struct PrimePoint {
    PrimeFieldElement x, y;
    bool inf = true;
    PrimePoint() = default;
    PrimePoint(PrimeFieldElement px, PrimeFieldElement py) : x(px), y(py), inf(false) {}
    static PrimePoint infinity() { return PrimePoint(); }
    bool operator==(const PrimePoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

// y^2 = x^3 + Ax + B over F_p, p >= 5.
class PrimeCurve {
public:
    PrimeCurve(uint32_t p, PrimeFieldElement A, PrimeFieldElement B);
    uint32_t p() const { return p_; }
    PrimeFieldElement A() const { return A_; }
    PrimeFieldElement B() const { return B_; }
    bool on_curve(const PrimePoint& pt) const;
    PrimePoint add(const PrimePoint& a, const PrimePoint& b) const;
    PrimePoint neg(const PrimePoint& a) const;
    std::vector<PrimePoint> points() const;  // full enumeration

private:
    uint32_t p_;
    PrimeFieldElement A_, B_;
};

} // namespace ecdl

#endif
