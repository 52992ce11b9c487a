#include "ecdl/pollard.hpp"

#include <array>

namespace ecdl {

namespace {

constexpr unsigned kPartitions = 16;

struct Walker {
    const SubgroupCtx* sub;
    std::array<Point, kPartitions> offs;
    std::array<uint64_t, kPartitions> oa, ob;

    unsigned bucket(const Point& p) const {
        if (p.is_inf()) return 0;
        uint64_t h = p.x.bits() * 0x9e3779b97f4a7c15ULL ^ p.y.bits();
        h ^= h >> 29;
        return unsigned(h & (kPartitions - 1));
    }

    void step(Point& x, uint64_t& a, uint64_t& b) const {
        unsigned j = bucket(x);
        x = sub->curve.add(x, offs[j]);
        a = (a + oa[j]) % sub->r;
        b = (b + ob[j]) % sub->r;
    }
};

uint64_t invmod_p(uint64_t a, uint64_t p) {
    uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = uint64_t((unsigned __int128)(r)*base % p);
        base = uint64_t((unsigned __int128)(base)*base % p);
        e >>= 1;
    }
    return r;
}

} // namespace

RhoResult rho_solve(const SubgroupCtx& sub, Rng& rng) {
    RhoResult res;
    while (true) {
        Walker w;
        w.sub = &sub;
        for (unsigned j = 0; j < kPartitions; ++j) {
            w.oa[j] = rng.below(sub.r);
            w.ob[j] = rng.below(sub.r);
            w.offs[j] = sub.curve.add(sub.curve.mul(w.oa[j], sub.P),
                                      sub.curve.mul(w.ob[j], sub.Q));
        }
        uint64_t a0 = rng.below(sub.r), b0 = rng.below(sub.r);
        Point tort = sub.curve.add(sub.curve.mul(a0, sub.P), sub.curve.mul(b0, sub.Q));
        uint64_t ta = a0, tb = b0;
        Point hare = tort;
        uint64_t ha = ta, hb = tb;
        w.step(hare, ha, hb);
        ++res.steps;

        uint64_t power = 1, lam = 1;
        bool found = false;
        uint64_t guard = 64 * (sub.r + 16);  // walks essentially never run this long
        while (res.steps < guard) {
            if (hare == tort) {
                found = true;
                break;
            }
            if (power == lam) {
                tort = hare;
                ta = ha;
                tb = hb;
                power *= 2;
                lam = 0;
            }
            w.step(hare, ha, hb);
            ++lam;
            ++res.steps;
            if ((res.steps & 1023) == 0) {
                // walk invariant: hare = ha P + hb Q
                Point chk = sub.curve.add(sub.curve.mul(ha, sub.P),
                                          sub.curve.mul(hb, sub.Q));
                if (chk != hare) throw Error("rho walk invariant violated");
            }
        }
        if (found) {
            // ta P + tb Q = ha P + hb Q
            uint64_t bd = (hb + sub.r - tb) % sub.r;
            if (bd != 0) {
                uint64_t ad = (ta + sub.r - ha) % sub.r;
                res.z = uint64_t((unsigned __int128)(ad)*invmod_p(bd, sub.r) % sub.r);
                // definitional check
                if (sub.curve.mul(res.z, sub.P) == sub.Q) return res;
            }
        }
        ++res.restarts;  // degenerate collision or guard; fresh offsets
    }
}

} // namespace ecdl
