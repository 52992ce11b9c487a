#include "ecdl/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ecdl {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n) {
    return uint64_t((unsigned __int128)(a)*b % n);
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// inverse mod n of a unit
uint64_t invmod(uint64_t a, uint64_t n) {
    int64_t t = 0, newt = 1;
    int64_t r = int64_t(n), newr = int64_t(a % n);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw Error("invmod of non-unit");
    if (t < 0) t += int64_t(n);
    return uint64_t(t);
}

// split n = a * b with gcd(a, b) = 1, where a collects every prime shared
// with d; a == n means no nontrivial coprime split exists (prime power case)
std::pair<uint64_t, uint64_t> coprime_split(uint64_t n, uint64_t d) {
    uint64_t a = gcd_u64(d % n, n);
    if (a <= 1) return {1, n};
    while (true) {
        uint64_t g = gcd_u64(a, n / a);
        if (g == 1) break;
        a *= g;
    }
    return {a, n / a};
}

struct SplitNeeded {
    uint64_t part;  // nontrivial coprime factor of the modulus
};

// left-kernel vectors of rows (k x w) modulo n
std::vector<std::vector<uint64_t>> left_kernel(std::vector<std::vector<uint64_t>> rows,
                                               uint64_t n, size_t max_vectors);
std::vector<std::vector<uint64_t>> left_kernel_entry(
    const std::vector<std::vector<uint64_t>>& rows, uint64_t n, size_t max_vectors);

std::vector<std::vector<uint64_t>> kernel_crt(const std::vector<std::vector<uint64_t>>& rows,
                                              uint64_t n1, uint64_t n2, size_t max_vectors) {
    auto reduce_rows = [&](uint64_t m) {
        std::vector<std::vector<uint64_t>> r = rows;
        for (auto& row : r)
            for (uint64_t& e : row) e %= m;
        return r;
    };
    std::vector<std::vector<uint64_t>> k1, k2;
    try {
        k1 = left_kernel_entry(reduce_rows(n1), n1, max_vectors);
    } catch (const NoKernel&) {
    }
    try {
        k2 = left_kernel_entry(reduce_rows(n2), n2, max_vectors);
    } catch (const NoKernel&) {
    }
    // lambda = lambda1 mod n1, lambda2 mod n2 (pair them up; a missing side
    // contributes zero, which keeps the combination nonzero via the other)
    uint64_t n = n1 * n2;
    uint64_t m1 = invmod(n2 % n1, n1);  // CRT weights
    uint64_t m2 = invmod(n1 % n2, n2);
    size_t count = std::max(k1.size(), k2.size());
    if (count == 0) throw NoKernel("no kernel modulo either factor");
    std::vector<std::vector<uint64_t>> out;
    for (size_t i = 0; i < count && out.size() < max_vectors; ++i) {
        const std::vector<uint64_t>* a = i < k1.size() ? &k1[i] : nullptr;
        const std::vector<uint64_t>* b = i < k2.size() ? &k2[i] : nullptr;
        size_t w = rows.size();
        std::vector<uint64_t> lam(w, 0);
        for (size_t j = 0; j < w; ++j) {
            uint64_t r1 = a ? (*a)[j] % n1 : 0;
            uint64_t r2 = b ? (*b)[j] % n2 : 0;
            // x = r1 * n2 * m1 + r2 * n1 * m2 mod n
            uint64_t x = (mulmod(mulmod(r1, n2 % n, n), m1, n) +
                          mulmod(mulmod(r2, n1 % n, n), m2, n)) % n;
            lam[j] = x;
        }
        bool nonzero = false;
        for (uint64_t x : lam) nonzero |= (x != 0);
        if (nonzero) out.push_back(std::move(lam));
    }
    if (out.empty()) throw NoKernel("CRT recombination vanished");
    return out;
}

std::vector<std::vector<uint64_t>> left_kernel(std::vector<std::vector<uint64_t>> rows,
                                               uint64_t n, size_t max_vectors) {
    size_t k = rows.size();
    if (k == 0) throw NoKernel("empty matrix");
    size_t w = rows[0].size();
    // transform tracker: lambda combinations of original rows
    std::vector<std::vector<uint64_t>> lam(k, std::vector<uint64_t>(k, 0));
    for (size_t i = 0; i < k; ++i) lam[i][i] = 1;

    std::vector<bool> row_used(k, false);
    for (size_t col = 0; col < w; ++col) {
        // find a pivot with a unit entry
        size_t piv = k;
        for (size_t i = 0; i < k; ++i) {
            if (row_used[i] || rows[i][col] == 0) continue;
            if (gcd_u64(rows[i][col], n) == 1) {
                piv = i;
                break;
            }
        }
        if (piv == k) {
            // only zero-divisor entries (if any): split the modulus
            uint64_t d = 0;
            for (size_t i = 0; i < k; ++i)
                if (!row_used[i] && rows[i][col] != 0) d = rows[i][col];
            if (d == 0) continue;  // column already clear
            auto [n1, n2] = coprime_split(n, d);
            if (n1 > 1 && n2 > 1) throw SplitNeeded{n1};  // caller redoes mod the parts
            // prime-power modulus: pivot on the entry of minimal valuation,
            // every other entry in the column then has at least as many
            // factors of p and eliminates exactly
            uint64_t p = 2;
            while (p * p <= n && n % p) ++p;
            if (n % p) p = n;
            uint64_t best_val = UINT64_MAX;
            for (size_t i = 0; i < k; ++i) {
                if (row_used[i] || rows[i][col] == 0) continue;
                uint64_t val = 0, x = rows[i][col];
                while (x % p == 0) {
                    x /= p;
                    ++val;
                }
                if (val < best_val) {
                    best_val = val;
                    piv = i;
                }
            }
            if (piv == k) continue;
            uint64_t pv = rows[piv][col];
            uint64_t unit = pv;
            uint64_t shift = 1;
            while (unit % p == 0) {
                unit /= p;
                shift *= p;
            }
            uint64_t unit_inv = invmod(unit, n);
            for (size_t i = 0; i < k; ++i) {
                if (i == piv || rows[i][col] == 0) continue;
                if (rows[i][col] % shift != 0)
                    throw NoKernel("valuation pivot failed");  // cannot happen
                uint64_t factor = mulmod(rows[i][col] / shift, unit_inv, n);
                for (size_t c = 0; c < w; ++c)
                    rows[i][c] = (rows[i][c] + n - mulmod(factor, rows[piv][c], n)) % n;
                for (size_t c = 0; c < k; ++c)
                    lam[i][c] = (lam[i][c] + n - mulmod(factor, lam[piv][c], n)) % n;
            }
            row_used[piv] = true;
            continue;
        }
        uint64_t inv = invmod(rows[piv][col], n);
        for (size_t i = 0; i < k; ++i) {
            if (i == piv || rows[i][col] == 0) continue;
            uint64_t factor = mulmod(rows[i][col], inv, n);
            for (size_t c = 0; c < w; ++c)
                rows[i][c] = (rows[i][c] + n - mulmod(factor, rows[piv][c], n)) % n;
            for (size_t c = 0; c < k; ++c)
                lam[i][c] = (lam[i][c] + n - mulmod(factor, lam[piv][c], n)) % n;
        }
        row_used[piv] = true;
    }

    std::vector<std::vector<uint64_t>> out;
    for (size_t i = 0; i < k && out.size() < max_vectors; ++i) {
        if (row_used[i]) continue;
        bool zero_row = std::all_of(rows[i].begin(), rows[i].end(),
                                    [](uint64_t e) { return e == 0; });
        bool lam_nonzero = std::any_of(lam[i].begin(), lam[i].end(),
                                       [](uint64_t e) { return e != 0; });
        if (zero_row && lam_nonzero) out.push_back(lam[i]);
    }
    if (out.empty()) throw NoKernel("no nontrivial left kernel found");
    return out;
}

std::vector<std::vector<uint64_t>> left_kernel_entry(
    const std::vector<std::vector<uint64_t>>& rows, uint64_t n, size_t max_vectors) {
    try {
        return left_kernel(rows, n, max_vectors);
    } catch (const SplitNeeded& s) {
        // a zero-divisor pivot exposed a coprime split of the modulus
        return kernel_crt(rows, s.part, n / s.part, max_vectors);
    }
}

} // namespace

RelationMatrix RelationMatrix::build(const SubgroupCtx& sub, const FactorBase& fb,
                                     const std::vector<Relation>& rels) {
    RelationMatrix M;
    M.modulus = sub.N;
    M.width = fb.points.size() + 1;
    if (sub.N % 2 != 0) throw Error("binary-curve group order must be even");
    uint64_t half = sub.N / 2;  // scales the order-2 column into mod-N form
    for (const Relation& rel : rels) {
        std::vector<uint64_t> row(M.width, 0);
        for (const auto& [col, c] : rel.coeffs) {
            int64_t v = c % int64_t(sub.N);
            if (v < 0) v += int64_t(sub.N);
            row[col] = uint64_t(v);
        }
        row[M.width - 1] = (rel.h2_coeff & 1) ? half : 0;
        M.rows.push_back(std::move(row));
        M.uv.emplace_back(rel.u, rel.v);
    }
    return M;
}

std::vector<std::vector<uint64_t>> kernel_vectors(const RelationMatrix& M,
                                                  size_t max_vectors) {
    if (M.rows.empty()) throw NoKernel("no relations");
    // peel weight-1 columns: their single row cannot participate in a kernel
    // combination when its entry is a unit
    std::vector<bool> dropped(M.rows.size(), false);
    std::vector<bool> col_gone(M.width, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t c = 0; c < M.width; ++c) {
            if (col_gone[c]) continue;
            size_t nz = 0, last = 0;
            for (size_t i = 0; i < M.rows.size(); ++i) {
                if (dropped[i] || M.rows[i][c] == 0) continue;
                ++nz;
                last = i;
            }
            if (nz == 1 && gcd_u64(M.rows[last][c], M.modulus) == 1) {
                dropped[last] = true;
                col_gone[c] = true;
                changed = true;
            }
        }
    }
    std::vector<size_t> live;
    for (size_t i = 0; i < M.rows.size(); ++i)
        if (!dropped[i]) live.push_back(i);
    if (live.empty()) throw NoKernel("all rows consumed by singleton columns");

    std::vector<std::vector<uint64_t>> sub_rows;
    for (size_t i : live) sub_rows.push_back(M.rows[i]);
    auto sub_kernels = left_kernel_entry(sub_rows, M.modulus, max_vectors);

    std::vector<std::vector<uint64_t>> out;
    for (auto& kv : sub_kernels) {
        std::vector<uint64_t> lam(M.rows.size(), 0);
        for (size_t j = 0; j < live.size(); ++j) lam[live[j]] = kv[j];
        out.push_back(std::move(lam));
    }
    return out;
}

uint64_t extract_log(const std::vector<uint64_t>& lambda, const RelationMatrix& M,
                     const SubgroupCtx& sub, const FactorBase& fb,
                     const std::vector<Relation>& rels) {
    uint64_t n = M.modulus;
    // exact verification of the combined point identity before extraction
    std::vector<uint64_t> colsum(M.width, 0);
    for (size_t j = 0; j < M.rows.size(); ++j)
        for (size_t c = 0; c < M.width; ++c)
            colsum[c] = (colsum[c] + mulmod(lambda[j], M.rows[j][c], n)) % n;
    for (uint64_t s : colsum)
        if (s != 0) throw Error("kernel vector does not annihilate the matrix");

    uint64_t a = 0, b = 0, h2sum = 0;
    Point acc = Point::infinity();
    for (size_t j = 0; j < M.rows.size(); ++j) {
        if (lambda[j] == 0) continue;
        a = (a + mulmod(lambda[j] % sub.r, M.uv[j].first % sub.r, sub.r)) % sub.r;
        b = (b + mulmod(lambda[j] % sub.r, M.uv[j].second % sub.r, sub.r)) % sub.r;
        h2sum ^= (lambda[j] & 1) & uint64_t(rels[j].h2_coeff & 1);
        for (const auto& [col, c] : rels[j].coeffs) {
            int64_t v = (int64_t(c) % int64_t(n) + int64_t(n)) % int64_t(n);
            uint64_t scaled = mulmod(lambda[j], uint64_t(v), n);
            Point f = sub.curve.mul(scaled, fb.points[col]);
            acc = sub.curve.add(acc, f);
        }
    }
    if (h2sum & 1) acc = sub.curve.add(acc, fb.h2);
    uint64_t au = 0, av = 0;
    for (size_t j = 0; j < M.rows.size(); ++j) {
        au = (au + mulmod(lambda[j], M.uv[j].first % n, n)) % n;
        av = (av + mulmod(lambda[j], M.uv[j].second % n, n)) % n;
    }
    acc = sub.curve.add(acc, sub.curve.mul(au, sub.P));
    acc = sub.curve.add(acc, sub.curve.mul(av, sub.Q));
    if (!acc.is_inf()) throw Error("combined relation identity failed exact check");

    if (b % sub.r == 0) throw DegenerateB("b is not invertible mod r");
    uint64_t z = mulmod((sub.r - a % sub.r) % sub.r, invmod(b % sub.r, sub.r), sub.r);
    return z;
}

uint64_t solve_linear_system(const SubgroupCtx& sub, const FactorBase& fb,
                             const std::vector<Relation>& rels) {
    RelationMatrix M = RelationMatrix::build(sub, fb, rels);
    auto kernels = kernel_vectors(M, 16);
    std::string last_error = "no kernel vector produced a logarithm";
    for (const auto& lam : kernels) {
        try {
            return extract_log(lam, M, sub, fb, rels);
        } catch (const DegenerateB& e) {
            last_error = e.what();
        }
    }
    throw DegenerateB(last_error);
}

std::string matrix_to_text(const RelationMatrix& M) {
    std::ostringstream os;
    os << "rows " << M.rows.size() << " cols " << M.width << " modulus " << M.modulus
       << "\n";
    for (size_t i = 0; i < M.rows.size(); ++i)
        for (size_t c = 0; c < M.width; ++c)
            if (M.rows[i][c]) os << i << " " << c << " " << M.rows[i][c] << "\n";
    return os.str();
}

} // namespace ecdl
