#include "ecdl/curve.hpp"

#include <algorithm>

namespace ecdl {

BinaryCurve::BinaryCurve(const BinaryFieldCtx* ctx, FieldElement A, FieldElement B)
    : ctx_(ctx), A_(A), B_(B) {
    if (B.is_zero()) throw UnsupportedCurveForm("B = 0 gives a singular curve");
}

bool BinaryCurve::on_curve(const Point& p) const {
    if (p.is_inf()) return true;
    FieldElement lhs = p.y.square() + p.x * p.y;
    FieldElement rhs = p.x.square() * p.x + A_ * p.x.square() + B_;
    return lhs == rhs;
}

bool BinaryCurve::on_curve_ext(const ExtPoint& p) const {
    if (p.is_inf()) return true;
    QuadExtElement a = QuadExtElement::embed(A_), b = QuadExtElement::embed(B_);
    QuadExtElement lhs = p.y.square() + p.x * p.y;
    QuadExtElement rhs = p.x.square() * p.x + a * p.x.square() + b;
    return lhs == rhs;
}

Point BinaryCurve::project(const ExtPoint& p) {
    if (p.is_inf()) return Point::infinity();
    if (!p.x.in_base_field() || !p.y.in_base_field())
        throw LiftMismatch("projection of a non-rational point");
    return {p.x.re(), p.y.re()};
}

int BinaryCurve::count_lifts(FieldElement x) const {
    if (x.is_zero()) return 1;
    // y = xw turns the curve equation into w^2 + w = x + A + B/x^2
    FieldElement c = x + A_ + B_ * x.square().inverse();
    return c.trace() == 0 ? 2 : 0;
}

std::vector<Point> BinaryCurve::lift_x(FieldElement x) const {
    if (x.is_zero()) return {Point{x, B_.sqrt()}};
    FieldElement c = x + A_ + B_ * x.square().inverse();
    if (c.trace() != 0) throw NoRationalPoint("no rational lift for this x");
    FieldElement w = ctx_->element(ctx_->artin_schreier_root(c.bits()));
    FieldElement y = x * w;
    Point p1{x, y}, p2{x, y + x};
    if (p2.y < p1.y) std::swap(p1, p2);
    return {p1, p2};
}

std::vector<ExtPoint> BinaryCurve::lift_x_ext(FieldElement x) const {
    if (x.is_zero())
        return {ExtPoint{QuadExtElement::embed(x), QuadExtElement::embed(B_.sqrt())}};
    FieldElement c = x + A_ + B_ * x.square().inverse();
    if (c.trace() == 0) {
        auto rational = lift_x(x);
        return {embed(rational[0]), embed(rational[1])};
    }
    QuadExtElement w = QuadExtElement::artin_schreier_root_ext(c);
    QuadExtElement xe = QuadExtElement::embed(x);
    QuadExtElement y = xe * w;
    return {ExtPoint{xe, y}, ExtPoint{xe, y + xe}};
}

Point BinaryCurve::order2_point() const {
    return {ctx_->zero(), B_.sqrt()};
}

uint64_t group_order(const BinaryCurve& curve) {
    const BinaryFieldCtx* ctx = curve.ctx();
    unsigned n = ctx->degree();
    if (n <= 24) {
        uint64_t count = 2;  // infinity and (0, sqrt(B))
        for (uint64_t x = 1; x < ctx->order(); ++x)
            count += curve.count_lifts(ctx->element(x));
        return count;
    }
    // Shanks: for random points G, find all M in the Hasse interval with
    // M*G = infinity; intersect candidate sets until one remains.
    uint64_t q = ctx->order();
    uint64_t s = 1;
    while (s * s < q) ++s;
    uint64_t lo = q + 1 - 2 * s, hi = q + 1 + 2 * s;
    Rng rng(0x5eedULL ^ q);
    std::vector<uint64_t> candidates;
    for (int tries = 0; tries < 64; ++tries) {
        FieldElement x = ctx->element(rng.bits(n));
        if (curve.count_lifts(x) == 0) continue;
        Point g = curve.lift_x(x)[0];
        // baby steps j*g for j in [0, L); giants stride L
        uint64_t span = hi - lo + 1;
        uint64_t L = 1;
        while (L * L < span) ++L;
        Point bj = Point::infinity();
        std::vector<Point> baby_pts(L);
        for (uint64_t j = 0; j < L; ++j) {
            baby_pts[j] = bj;
            bj = curve.add(bj, g);
        }
        Point stride = curve.mul(L, g);
        Point w = curve.neg(curve.mul(lo, g));
        std::vector<uint64_t> found;
        for (uint64_t i = 0; lo + i * L <= hi; ++i) {
            for (uint64_t j = 0; j < L; ++j) {
                uint64_t M = lo + i * L + j;
                if (M > hi) break;
                // M*g = 0  <=>  j*g == -(lo + iL)*g
                if (baby_pts[j] == w) found.push_back(M);
            }
            w = curve.add(w, curve.neg(stride));
        }
        if (candidates.empty()) {
            candidates = found;
        } else {
            std::vector<uint64_t> keep;
            for (uint64_t M : candidates)
                if (std::find(found.begin(), found.end(), M) != found.end())
                    keep.push_back(M);
            candidates = keep;
        }
        if (candidates.size() == 1) return candidates[0];
    }
    throw Error("group order not determined by sampling");
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t largest_prime_factor(uint64_t n) {
    uint64_t best = 1;
    for (uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    }
    return n > 1 ? n : best;
}

SubgroupCtx make_instance(unsigned n, BMode bmode, uint64_t seed, uint64_t f_override) {
    uint64_t f = f_override ? f_override : BinaryFieldCtx::default_modulus(n);
    auto ctx = std::make_shared<BinaryFieldCtx>(n, f);
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        FieldElement A = ctx->element(rng.bits(n));
        FieldElement B = bmode == BMode::One ? ctx->one() : ctx->element(rng.bits(n));
        if (B.is_zero()) continue;
        BinaryCurve curve(ctx.get(), A, B);
        uint64_t N = group_order(curve);
        uint64_t r = largest_prime_factor(N);
        if (r <= 4) continue;
        uint64_t cof = N / r;
        Point P = Point::infinity();
        for (int ptry = 0; ptry < 4096 && P.is_inf(); ++ptry) {
            FieldElement x = ctx->element(rng.bits(n));
            if (x.is_zero() || curve.count_lifts(x) == 0) continue;
            auto lifts = curve.lift_x(x);
            P = curve.mul(cof, lifts[rng.bits(1)]);
        }
        if (P.is_inf() || !curve.mul(r, P).is_inf()) continue;
        uint64_t z = rng.below(r);
        Point Q = curve.mul(z, P);
        SubgroupCtx sub{ctx, curve, P, r, N, cof, Q, z};
        return sub;
    }
    throw DegenerateGroup("no usable subgroup after 64 curve draws");
}

PrimeCurve::PrimeCurve(uint32_t p, PrimeFieldElement A, PrimeFieldElement B)
    : p_(p), A_(A), B_(B) {
    if (p < 5) throw UnsupportedCurveForm("PrimeCurve needs characteristic >= 5");
    // nonsingular: 4A^3 + 27B^2 != 0
    PrimeFieldElement four(p, 4), twenty7(p, 27);
    PrimeFieldElement disc = four * A * A * A + twenty7 * B * B;
    if (disc.is_zero()) throw UnsupportedCurveForm("singular prime curve");
}

bool PrimeCurve::on_curve(const PrimePoint& pt) const {
    if (pt.inf) return true;
    return pt.y * pt.y == pt.x * pt.x * pt.x + A_ * pt.x + B_;
}

PrimePoint PrimeCurve::neg(const PrimePoint& a) const {
    if (a.inf) return a;
    return {a.x, -a.y};
}

PrimePoint PrimeCurve::add(const PrimePoint& a, const PrimePoint& b) const {
    if (a.inf) return b;
    if (b.inf) return a;
    PrimeFieldElement lam(p_, 0);
    if (a.x == b.x) {
        if (a.y != b.y || a.y.is_zero()) return PrimePoint::infinity();
        PrimeFieldElement three(p_, 3), two(p_, 2);
        lam = (three * a.x * a.x + A_) * (two * a.y).inverse();
    } else {
        lam = (b.y - a.y) * (b.x - a.x).inverse();
    }
    PrimeFieldElement x3 = lam * lam - a.x - b.x;
    PrimeFieldElement y3 = lam * (a.x - x3) - a.y;
    return {x3, y3};
}

std::vector<PrimePoint> PrimeCurve::points() const {
    std::vector<PrimePoint> out;
    out.push_back(PrimePoint::infinity());
    for (uint32_t x = 0; x < p_; ++x)
        for (uint32_t y = 0; y < p_; ++y) {
            PrimePoint pt{PrimeFieldElement(p_, x), PrimeFieldElement(p_, y)};
            if (on_curve(pt)) out.push_back(pt);
        }
    return out;
}

} // namespace ecdl
