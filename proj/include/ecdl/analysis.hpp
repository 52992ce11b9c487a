#ifndef ECDL_ANALYSIS_HPP
#define ECDL_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ecdl {

// Double-double arithmetic: an unevaluated sum of two doubles giving ~32
// significant decimal digits, enough to reproduce 1e86-scale table entries
// to full printed precision.
struct DD {
    double hi = 0, lo = 0;

    DD() = default;
    DD(double x) : hi(x), lo(0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    static DD from_int(int64_t v) { return DD(double(v)); }

    DD operator+(const DD& o) const;
    DD operator-(const DD& o) const;
    DD operator*(const DD& o) const;
    DD operator/(const DD& o) const;
    DD operator-() const { return {-hi, -lo}; }
    bool operator<(const DD& o) const { return hi < o.hi || (hi == o.hi && lo < o.lo); }
    bool operator>(const DD& o) const { return o < *this; }

    double to_double() const { return hi + lo; }
};

DD dd_exp(const DD& x);
DD dd_ln(const DD& x);
DD dd_exp2(const DD& x);
DD dd_pow(const DD& base, const DD& e);
DD dd_factorial(unsigned n);

// round to `digits` significant figures toward zero (the tables truncate)
std::string dd_to_sig(const DD& v, int digits);

struct CostModel {
    double omega = 3.0;        // linear algebra exponent, in [2.376, 3]
    double omega_sparse = 2.0; // fixed sparse exponent
    // default F4 variant replaces n^(4w) by [n(m-1)]^(4w): no block structure
    bool default_f4_variant = false;
};

// P(q, m, t, |V|) = 1 - exp(-|V|^t / (q t!)); the small-value approximation
// |V|^t / (q t!) is exposed alongside.
struct Probability {
    double value = 0;           // 1 - e^-K/q
    double exact_form = 0;      // 1 - (1 - 1/q)^K
    double small_approx = 0;    // K/q
};
Probability success_probability(double q, unsigned m, unsigned t, double size_v);

struct StageCosts {
    DD stage1;  // relation collection
    DD stage2;  // sparse linear algebra
};

// Table-form costs: stage1 = m! 2^(n/m) n^12 at omega = 3 (or the general
// omega), stage2 = 2^(2n/m). k is treated as the real n/m here.
StageCosts stage_costs(unsigned n, unsigned m, const CostModel& model = {});

// General form with explicit integer k: m!/2^(mk-n) * 2^k * n^(4w).
DD stage1_general(unsigned n, unsigned m, unsigned k, const CostModel& model = {});

struct OptimalM {
    unsigned m = 0;              // integer argmin of stage1
    double asymptotic_m = 0;     // sqrt(2 ln2 * n / ln n)
    double asymptotic_c = 0;     // 2 / sqrt(2 ln 2)
    DD total_cost;               // 2^(c sqrt(n ln n)) flavoured: stage2 at m*
};
OptimalM optimal_m(unsigned n, const CostModel& model = {});

struct Table3Row {
    unsigned n;
    DD pollard;  // 2^(n/2)
    unsigned m;
    DD stage1;
    DD stage2;
};
std::vector<Table3Row> table3(const CostModel& model = {});

// smallest n in [100, 700] with stage1 < 2^(n/2)
struct Crossover {
    unsigned n = 0;
    std::vector<Table3Row> scan;  // the standard 12-row table
};
Crossover crossover(const CostModel& model = {});

} // namespace ecdl

#endif
