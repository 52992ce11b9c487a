#include "ecdl/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "ecdl/errors.hpp"

namespace ecdl {

namespace {

// error-free transforms (Dekker/Knuth)
DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

DD renorm(double hi, double lo) {
    double s = hi + lo;
    double err = lo - (s - hi);
    return {s, err};
}

} // namespace

DD DD::operator+(const DD& o) const {
    DD s = two_sum(hi, o.hi);
    double lo2 = s.lo + lo + o.lo;
    return renorm(s.hi, lo2);
}

DD DD::operator-(const DD& o) const { return *this + (-o); }

DD DD::operator*(const DD& o) const {
    DD p = two_prod(hi, o.hi);
    double lo2 = p.lo + hi * o.lo + lo * o.hi;
    return renorm(p.hi, lo2);
}

DD DD::operator/(const DD& o) const {
    double q1 = hi / o.hi;
    DD r = *this - o * DD(q1);
    double q2 = r.hi / o.hi;
    r = r - o * DD(q2);
    double q3 = r.hi / o.hi;
    return renorm(q1, q2) + DD(q3);
}

DD dd_exp(const DD& x) {
    // e^x = 2^k * e^r with |r| <= ln2/2, e^r by Taylor in DD
    double k = std::round(x.to_double() / std::log(2.0));
    static const DD ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
    DD r = x - ln2 * DD(k);
    DD sum(1.0), term(1.0);
    for (int i = 1; i <= 24; ++i) {
        term = term * r / DD(double(i));
        sum = sum + term;
    }
    return sum * dd_exp2(DD(k));
}

DD dd_exp2(const DD& x) {
    double xf = std::floor(x.to_double());
    DD frac = x - DD(xf);
    // integer power of two exactly (split to stay in range)
    DD ip(1.0);
    double remaining = xf;
    while (remaining > 500) {
        ip = ip * DD(std::ldexp(1.0, 500));
        remaining -= 500;
    }
    while (remaining < -500) {
        ip = ip * DD(std::ldexp(1.0, -500));
        remaining += 500;
    }
    ip = ip * DD(std::ldexp(1.0, int(remaining)));
    if (frac.to_double() == 0.0) return ip;
    static const DD ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
    DD r = frac * ln2;
    DD sum(1.0), term(1.0);
    for (int i = 1; i <= 24; ++i) {
        term = term * r / DD(double(i));
        sum = sum + term;
    }
    return ip * sum;
}

DD dd_ln(const DD& x) {
    if (x.to_double() <= 0) throw Error("dd_ln of non-positive value");
    // Newton refinement of the double-precision seed: y += x e^-y - 1, twice
    DD y(std::log(x.to_double()));
    for (int i = 0; i < 2; ++i) {
        DD e = dd_exp(-y);
        y = y + x * e - DD(1.0);
    }
    return y;
}

DD dd_pow(const DD& base, const DD& e) { return dd_exp(e * dd_ln(base)); }

DD dd_factorial(unsigned n) {
    DD r(1.0);
    for (unsigned i = 2; i <= n; ++i) r = r * DD(double(i));
    return r;
}

std::string dd_to_sig(const DD& v, int digits) {
    // truncate toward zero at `digits` significant figures, matching the
    // printed tables
    double d = v.to_double();
    if (d == 0) return "0";
    int exp10 = int(std::floor(std::log10(std::fabs(d))));
    // mantissa in [1, 10) computed in DD to survive 1e86 scales
    DD mant = v / dd_pow(DD(10.0), DD(double(exp10)));
    double m = mant.to_double();
    if (m >= 10.0) {
        m /= 10.0;
        ++exp10;
    }
    if (m < 1.0) {
        m *= 10.0;
        --exp10;
    }
    double scale = std::pow(10.0, digits - 1);
    double trunc = std::floor(m * scale + 1e-9) / scale;  // tiny guard for DD dust
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%+03d", digits - 1, trunc, exp10);
    return buf;
}

Probability success_probability(double q, unsigned m, unsigned t, double size_v) {
    (void)m;
    if (t < 1 || size_v < 2) throw BadArity("success_probability needs t >= 1, |V| >= 2");
    double log_k = t * std::log(size_v);
    for (unsigned i = 2; i <= t; ++i) log_k -= std::log(double(i));
    double k_over_q = std::exp(log_k - std::log(q));
    Probability p;
    p.small_approx = k_over_q;
    p.value = -std::expm1(-k_over_q);
    // 1 - (1 - 1/q)^K with K = |V|^t / t!
    double log1m = std::log1p(-1.0 / q);
    p.exact_form = -std::expm1(std::exp(log_k) * log1m);
    return p;
}

StageCosts stage_costs(unsigned n, unsigned m, const CostModel& model) {
    if (m < 2 || m >= n) throw BadArity("stage_costs needs 2 <= m < n");
    StageCosts sc;
    DD nn{double(n)}, mm{double(m)};
    DD n_over_m = nn / mm;
    DD solve_base = model.default_f4_variant ? nn * DD(double(m - 1)) : nn;
    DD solve_cost = dd_pow(solve_base, DD(4.0 * model.omega));
    sc.stage1 = dd_factorial(m) * dd_exp2(n_over_m) * solve_cost;
    sc.stage2 = dd_exp2(DD(model.omega_sparse) * n_over_m);
    return sc;
}

DD stage1_general(unsigned n, unsigned m, unsigned k, const CostModel& model) {
    if (m < 2 || m >= n) throw BadArity("stage1_general needs 2 <= m < n");
    DD nn{double(n)};
    DD solve_base = model.default_f4_variant ? nn * DD(double(m - 1)) : nn;
    DD solve_cost = dd_pow(solve_base, DD(4.0 * model.omega));
    // m! / 2^(mk - n) * 2^k * n^(4w)
    DD denom = dd_exp2(DD(double(m) * double(k) - double(n)));
    return dd_factorial(m) / denom * dd_exp2(DD(double(k))) * solve_cost;
}

OptimalM optimal_m(unsigned n, const CostModel& model) {
    if (n < 12) throw BadArity("optimal_m expects n >= 12");
    OptimalM res;
    DD best;
    for (unsigned m = 2; m <= 24 && m < n; ++m) {
        DD s1 = stage_costs(n, m, model).stage1;
        if (res.m == 0 || s1 < best) {
            best = s1;
            res.m = m;
        }
    }
    res.asymptotic_m = std::sqrt(2.0 * std::log(2.0) * n / std::log(double(n)));
    res.asymptotic_c = 2.0 / std::sqrt(2.0 * std::log(2.0));
    res.total_cost = stage_costs(n, res.m, model).stage2;
    return res;
}

std::vector<Table3Row> table3(const CostModel& model) {
    static const unsigned rows[] = {100, 150, 200, 250, 300, 310,
                                    350, 400, 409, 450, 500, 571};
    std::vector<Table3Row> out;
    for (unsigned n : rows) {
        Table3Row r;
        r.n = n;
        r.pollard = dd_exp2(DD(double(n) / 2.0));
        r.m = optimal_m(n, model).m;
        StageCosts sc = stage_costs(n, r.m, model);
        r.stage1 = sc.stage1;
        r.stage2 = sc.stage2;
        out.push_back(r);
    }
    return out;
}

Crossover crossover(const CostModel& model) {
    Crossover c;
    c.scan = table3(model);
    for (unsigned n = 100; n <= 700; ++n) {
        unsigned m = optimal_m(n, model).m;
        StageCosts sc = stage_costs(n, m, model);
        DD pollard = dd_exp2(DD(double(n) / 2.0));
        if (sc.stage1 < pollard) {
            c.n = n;
            return c;
        }
    }
    return c;  // n = 0: not found in range
}

} // namespace ecdl
