// Quick development smoke checks; the real suites live in the test_* files.
#include <cassert>
#include <cstdio>

#include "ecdl/curve.hpp"
#include "ecdl/field.hpp"
#include "ecdl/sumpoly.hpp"

using namespace ecdl;

int main() {
    // field basics in F_16 with f = x^4 + x + 1
    BinaryFieldCtx ctx(4, 0x13);
    FieldElement a = ctx.alpha();
    assert((a.pow(3) * a).bits() == 0x3);  // alpha^4 = alpha + 1
    assert((a * a.pow(14)).is_one());
    assert(a.sqrt() == a.pow(8));
    assert(BinaryFieldCtx::default_modulus(4) == 0x13);
    bool reducible_caught = false;
    try {
        BinaryFieldCtx bad(4, 0x15);  // x^4 + x^2 + 1 = (x^2+x+1)^2
    } catch (const ReducibleModulus&) {
        reducible_caught = true;
    }
    assert(reducible_caught);

    // trace / Artin-Schreier
    int tr0 = 0;
    for (uint64_t c = 0; c < 16; ++c)
        if (ctx.trace(c) == 0) {
            ++tr0;
            uint64_t w = ctx.artin_schreier_root(c);
            assert((ctx.sqr(w) ^ w) == c);
        }
    assert(tr0 == 8);

    // quad ext: conj is the nontrivial automorphism, fixed field = base
    FieldElement d = ctx.element(ctx.ext_delta());
    QuadExtElement beta(ctx.zero(), ctx.one());
    assert(beta.square() + beta == QuadExtElement::embed(d));
    assert(beta.conj() == beta + QuadExtElement::embed(ctx.one()));
    for (uint64_t x = 1; x < 16; ++x)
        for (uint64_t y = 0; y < 16; ++y) {
            QuadExtElement e(ctx.element(x), ctx.element(y));
            assert(e.conj().conj() == e);
            assert((e * e.inverse()) == QuadExtElement::embed(ctx.one()));
        }

    // curve over F_16, B=1: order-2 point, group law sanity, group order
    BinaryCurve curve(&ctx, ctx.zero(), ctx.one());
    Point h = curve.order2_point();
    assert(curve.on_curve(h));
    assert(curve.add(h, h).is_inf());
    uint64_t N = group_order(curve);
    std::printf("N(F_16, A=0, B=1) = %llu\n", (unsigned long long)N);
    assert(N >= 17 - 8 && N <= 17 + 8);
    for (uint64_t x = 0; x < 16; ++x) {
        if (curve.count_lifts(ctx.element(x)) == 0) continue;
        for (const Point& p : curve.lift_x(ctx.element(x))) {
            assert(curve.on_curve(p));
            assert(curve.mul(N, p).is_inf());
        }
    }

    // S_3 and S_4 degree law
    SumPolyCache cache(curve);
    const auto& s4 = cache.get(4);
    for (unsigned v = 0; v < 4; ++v) assert(s4.degree_in(v) == 4);
    const auto& s5 = cache.get(5);
    for (unsigned v = 0; v < 5; ++v) assert(s5.degree_in(v) == 8);
    std::printf("S_4 terms: %zu, S_5 terms: %zu\n", s4.term_count(), s5.term_count());

    // S_3 vanishes on x-coords of P + Q + (-(P+Q))
    Rng rng(7);
    const auto& s3p = cache.get(3);
    for (int i = 0; i < 50; ++i) {
        FieldElement x1 = ctx.element(rng.bits(4)), x2 = ctx.element(rng.bits(4));
        if (curve.count_lifts(x1) == 0 || curve.count_lifts(x2) == 0) continue;
        Point p = curve.lift_x(x1)[0], q = curve.lift_x(x2)[0];
        Point s = curve.add(p, q);
        if (s.is_inf()) continue;
        FieldElement v = s3p.eval({p.x, q.x, s.x});
        assert(v.is_zero());
    }

    std::printf("smoke ok\n");
    return 0;
}
