#ifndef ECDL_LINALG_HPP
#define ECDL_LINALG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ecdl/decompose.hpp"

namespace ecdl {

// Relations as rows modulo the full group order N. Relations live in E(F_q),
// not in <P>, so the kernel is taken mod N and the final scalar identity is
// reduced mod r afterwards. The order-2 column is scaled by N/2, which turns
// its mod-2 constraint into an exact mod-N one (2 | N always holds here).
struct RelationMatrix {
    uint64_t modulus = 0;  // N
    size_t width = 0;      // factor-base columns + 1 for the order-2 point
    std::vector<std::vector<uint64_t>> rows;
    std::vector<std::pair<uint64_t, uint64_t>> uv;  // (u_j, v_j) per row

    static RelationMatrix build(const SubgroupCtx& sub, const FactorBase& fb,
                                const std::vector<Relation>& rels);
};

// Nonzero left-kernel vectors: lambda with lambda^T * rows = 0 mod N.
// Weight-1 columns are peeled first; the dense finish pivots on units and
// splits a composite modulus through the exposed gcd, recombining by CRT.
// Throws NoKernel when no vector exists (more relations needed).
std::vector<std::vector<uint64_t>> kernel_vectors(const RelationMatrix& M,
                                                  size_t max_vectors = 8);

// z = -a * b^(-1) mod r from the summed scalars; throws DegenerateB when b
// is not invertible. The full point identity is re-verified with exact curve
// arithmetic before extraction.
uint64_t extract_log(const std::vector<uint64_t>& lambda, const RelationMatrix& M,
                     const SubgroupCtx& sub, const FactorBase& fb,
                     const std::vector<Relation>& rels);

// Kernel + extraction with retry across kernel vectors.
uint64_t solve_linear_system(const SubgroupCtx& sub, const FactorBase& fb,
                             const std::vector<Relation>& rels);

// Coordinate text dump: header with dimensions and modulus, then one
// "row col value" triple per nonzero entry.
std::string matrix_to_text(const RelationMatrix& M);

} // namespace ecdl

#endif
