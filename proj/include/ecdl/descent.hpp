#ifndef ECDL_DESCENT_HPP
#define ECDL_DESCENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ecdl/field.hpp"
#include "ecdl/rng.hpp"
#include "ecdl/sumpoly.hpp"

namespace ecdl {

// F_2-subspace of F_{2^n} used as the factor-base x-range.
// Default basis 1, alpha, ..., alpha^(k-1); random mode draws an independent
// set for replicating the randomized-subspace experiment rows.
struct SubspaceV {
    const BinaryFieldCtx* ctx = nullptr;
    unsigned k = 0;
    std::vector<FieldElement> basis;

    static SubspaceV low_degree(const BinaryFieldCtx* ctx, unsigned k);
    static SubspaceV random_subspace(const BinaryFieldCtx* ctx, unsigned k, Rng& rng);

    uint64_t size() const { return 1ULL << k; }
    // Combine basis elements selected by mask bits.
    FieldElement element(uint64_t mask) const;
    // All 2^k elements, in mask order.
    std::vector<FieldElement> enumerate() const;
};

// Boolean polynomial in algebraic normal form: XOR of squarefree monomials.
// A monomial is a bit mask of variable indices; the constant term is mask 0.
// At most 64 variables (desk scale keeps every spec grid point below that).
class BoolPoly {
public:
    BoolPoly() = default;
    explicit BoolPoly(std::vector<uint64_t> monos) : m_(std::move(monos)) { canon(); }

    static BoolPoly zero() { return BoolPoly(); }
    static BoolPoly one() { return BoolPoly({0}); }
    static BoolPoly var(unsigned i) { return BoolPoly({uint64_t(1) << i}); }

    const std::vector<uint64_t>& monomials() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    bool is_one() const { return m_.size() == 1 && m_[0] == 0; }
    int degree() const;
    uint64_t support() const;  // union of variable masks

    BoolPoly operator+(const BoolPoly& o) const;  // XOR
    BoolPoly operator*(const BoolPoly& o) const;  // squarefree product
    BoolPoly& operator+=(const BoolPoly& o) { *this = *this + o; return *this; }

    bool eval(uint64_t assignment) const;
    BoolPoly substitute(unsigned var, bool value) const;
    // substitute var := expr (expr must not involve var)
    BoolPoly substitute_expr(unsigned var, const BoolPoly& expr) const;

    bool operator==(const BoolPoly& o) const { return m_ == o.m_; }

private:
    void canon();
    std::vector<uint64_t> m_;  // sorted unique masks
};

// Variable layout of a descended system: the x-block holds t groups of k bits
// (coefficients of x_i over the V basis), the u-block t-2 groups of n bits.
struct VarLayout {
    unsigned t = 0, k = 0, n = 0;
    unsigned x_bits() const { return t * k; }
    unsigned u_bits() const { return t >= 2 ? (t - 2) * n : 0; }
    unsigned total() const { return x_bits() + u_bits(); }
    unsigned x_offset(unsigned i) const { return i * k; }          // i in [0, t)
    unsigned u_offset(unsigned j) const { return t * k + j * n; }  // j in [0, t-2)
};

struct BoolSystem {
    VarLayout layout;
    std::vector<BoolPoly> polys;
    // provenance[p] = {equation index, coordinate index}
    std::vector<std::pair<unsigned, unsigned>> provenance;
};

// The t-1 field-level equations of the decomposition chain for R with
// x-coordinate r_x: S_3(u1,x1,x2), S_3(u_i,u_{i+1},x_{i+2}), S_3(u_{t-2},x_t,r_x);
// t = 2 degenerates to the single equation S_3(x1,x2,r_x).
// System variables are ordered x_1..x_t, u_1..u_{t-2}.
std::vector<MultiPoly<FieldElement>> build_system(const BinaryCurve& curve,
                                                  FieldElement r_x, unsigned t);

// Per-variable descent spec: which Boolean variables encode it and over which
// basis. Full-field variables use the polynomial basis itself.
struct VarSpec {
    unsigned offset = 0;                // first Boolean variable index
    std::vector<FieldElement> basis;    // width = basis.size()
};

// Coordinate-wise Weil descent of one field polynomial: returns n BoolPolys,
// coordinate j being the alpha^j component in the polynomial basis.
std::vector<BoolPoly> descend_poly(const MultiPoly<FieldElement>& poly,
                                   const std::vector<VarSpec>& vars,
                                   const BinaryFieldCtx* ctx);

// Descend the whole chain; k is taken from V (callers pick k = ceil(n/m)).
BoolSystem weil_descend(const std::vector<MultiPoly<FieldElement>>& equations,
                        const SubspaceV& V, unsigned t);

// Reassemble field elements from a Boolean assignment.
std::vector<FieldElement> decode_x(const BoolSystem& sys, const SubspaceV& V,
                                   uint64_t assignment);
std::vector<FieldElement> decode_u(const BoolSystem& sys, const BinaryFieldCtx* ctx,
                                   uint64_t assignment);

// One ANF polynomial per line, b-prefixed x-block bits and c-prefixed u-block
// bits: "b3*b7*c12 + b1 + 1".
std::string system_to_text(const BoolSystem& sys);

} // namespace ecdl

#endif
