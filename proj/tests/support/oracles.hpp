#pragma once

// Test-only reference implementations, kept independent of the library
// paths they check.

#include <random>
#include <vector>

#include "msrkit/msrkit.hpp"

namespace oracle {

using namespace msrkit;

// Reference extension-field product: coefficient vectors multiplied as
// polynomials and reduced mod the modulus by long division.
inline felt_t ext_mul_reference(int p, int k, const std::vector<int>& modulus, felt_t a, felt_t b) {
    auto digits = [&](int v) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i) { d[i] = v % p; v /= p; }
        return d;
    };
    auto da = digits(a), db = digits(b);
    std::vector<int> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (int i = int(prod.size()) - 1; i >= k; --i) {
        int c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (int j = 0; j < k; ++j) prod[i - k + j] = ((prod[i - k + j] - c * modulus[j]) % p + p * p) % p;
    }
    int v = 0;
    for (int i = k - 1; i >= 0; --i) v = v * p + prod[i];
    return felt_t(v);
}

// Exhaustive search for the first nontrivial cube root of unity.
inline int first_cube_root_reference(const FieldPtr& f) {
    for (int x = 2; x < f->q(); ++x) {
        felt_t x3 = f->mul(felt_t(x), f->mul(felt_t(x), felt_t(x)));
        if (x3 == 1) return x;
    }
    return -1;
}

// Every square block submatrix of the parity block grid [A_i^j], sizes
// 1..min(k, r), materialized in full and rank-checked. The verifier's
// condition list must agree with this verdict.
inline bool all_block_submatrices_invertible(const ASSet& set) {
    const int k = set.k();
    const int r = set.r;
    const int ell = set.ell;
    std::vector<std::vector<Mat>> powers(k);
    for (int i = 0; i < k; ++i) {
        powers[i].push_back(Mat::identity(set.field, ell));
        for (int j = 1; j < r; ++j) powers[i].push_back(mat_mul(powers[i][j - 1], set.pairs[i].a));
    }
    const int smax = std::min(k, r);
    for (int s = 1; s <= smax; ++s) {
        std::vector<int> rows(s), cols(s);
        for (int i = 0; i < s; ++i) rows[i] = i;
        while (true) {
            for (int i = 0; i < s; ++i) cols[i] = i;
            while (true) {
                Mat block(set.field, s * ell, s * ell);
                for (int br = 0; br < s; ++br)
                    for (int bc = 0; bc < s; ++bc) {
                        const Mat& cell = powers[rows[br]][cols[bc]];
                        for (int x = 0; x < ell; ++x)
                            for (int y = 0; y < ell; ++y)
                                block.at(br * ell + x, bc * ell + y) = cell.at(x, y);
                    }
                if (rank(block) != s * ell) return false;
                int i = s - 1;
                while (i >= 0 && cols[i] == r - (s - i)) --i;
                if (i < 0) break;
                ++cols[i];
                for (int t = i + 1; t < s; ++t) cols[t] = cols[t - 1] + 1;
            }
            int i = s - 1;
            while (i >= 0 && rows[i] == k - (s - i)) --i;
            if (i < 0) break;
            ++rows[i];
            for (int t = i + 1; t < s; ++t) rows[t] = rows[t - 1] + 1;
        }
    }
    return true;
}

inline bool nonsingular_verdict(const std::vector<NonsingularCheck>& checks) {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

inline Mat random_mat(const FieldPtr& f, int rows, int cols, std::mt19937_64& rng) {
    Mat m(f, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = felt_t(rng() % f->q());
    return m;
}

inline Mat random_invertible(const FieldPtr& f, int n, std::mt19937_64& rng) {
    while (true) {
        Mat m = random_mat(f, n, n, rng);
        if (rank(m) == n) return m;
    }
}

inline Subspace random_subspace(const FieldPtr& f, int ambient, int gens, std::mt19937_64& rng) {
    return Subspace::span(random_mat(f, gens, ambient, rng));
}

} // namespace oracle
