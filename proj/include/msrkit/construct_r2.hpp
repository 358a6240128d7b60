#pragma once

#include <utility>

#include "msrkit/aset.hpp"
#include "msrkit/matchings.hpp"
#include "msrkit/verify.hpp"

namespace msrkit {

/// Block-diagonal (A+(lambda), A-(lambda)): 2x2 antidiagonal lambda blocks on
/// the top half, -lambda blocks on the bottom half. Squares to lambda^2 * I.
inline Mat matrix_a_lambda(const FieldPtr& f, int ell, felt_t lambda) {
    if (ell % 4 != 0) throw BadLength("A(lambda) needs 4 | ell");
    if (lambda == 0) throw ZeroLambda("lambda must be nonzero");
    Mat a(f, ell, ell);
    const felt_t neg = f->neg(lambda);
    for (int t = 0; t < ell / 2; ++t) {
        felt_t v = t <= ell / 4 - 1 ? lambda : neg;
        a.at(2 * t, 2 * t + 1) = v;
        a.at(2 * t + 1, 2 * t) = v;
    }
    return a;
}

/// Change matrices of a two-color matching: P_Z interleaves rows z_i and
/// z_i' - z_i; P_Z' interleaves z_i' and z_i + z_i'.
inline std::pair<Mat, Mat> change_matrices(const FieldPtr& f, const Matching& z) {
    if (z.r != 2) throw DimensionMismatch("change_matrices needs a two-color matching");
    const int ell = z.ell;
    Mat pz(f, ell, ell), pzp(f, ell, ell);
    for (int i = 0; i < z.edges(); ++i) {
        const int u = z.colors[0][i], v = z.colors[1][i];
        pz.at(2 * i, u) = 1;
        pz.at(2 * i + 1, v) = 1;
        pz.at(2 * i + 1, u) = f->neg(1);
        pzp.at(2 * i, v) = 1;
        pzp.at(2 * i + 1, u) = 1;
        pzp.at(2 * i + 1, v) = 1;
    }
    return {std::move(pz), std::move(pzp)};
}

/// The size-2 set of one matching: A_Z = P_Z^{-1} A(lambda) P_Z with
/// S_Z = span(Z), and the primed analogue.
inline std::pair<ASPair, ASPair> pair_from_matching(const FieldPtr& f, const Matching& z,
                                                    felt_t lambda, int matching_index) {
    if (lambda == 0) throw ZeroLambda("lambda must be nonzero");
    Mat a = matrix_a_lambda(f, z.ell, lambda);
    auto [pz, pzp] = change_matrices(f, z);
    auto conjugate = [&](const Mat& p) { return mat_mul(mat_mul(invert(p), a), p); };
    auto color_span = [&](const std::vector<int>& color) {
        Mat rows(f, int(color.size()), z.ell);
        for (size_t i = 0; i < color.size(); ++i) rows.at(int(i), color[i]) = 1;
        return Subspace::span(rows);
    };
    ASPair first{conjugate(pz), color_span(z.colors[0]), {matching_index, 0}};
    ASPair second{conjugate(pzp), color_span(z.colors[1]), {matching_index, 1}};
    return {std::move(first), std::move(second)};
}

/// m pairwise-distinct nonzero elements in canonical order. For odd q the
/// adjacent matchings 2t, 2t+1 receive a (lambda, -lambda) pair drawn from a
/// fresh +- class, and an odd trailing matching takes the least element of a
/// class whose negative is still unused.
inline std::vector<felt_t> assign_lambdas_r2(const FieldPtr& f, int m) {
    const int q = f->q();
    if (q < m + 1) throw FieldTooSmall("two-parity construction needs q >= m + 1");
    std::vector<felt_t> out;
    out.reserve(m);
    if (q % 2 == 0) {
        for (int v = 1; v <= m; ++v) out.push_back(felt_t(v));
        return out;
    }
    std::vector<char> used(q, 0);
    auto take_fresh_class = [&]() -> felt_t {
        for (int v = 1; v < q; ++v)
            if (!used[v] && !used[f->neg(felt_t(v))]) return felt_t(v);
        throw FieldTooSmall("no unused +- class left for lambda assignment");
    };
    for (int t = 0; 2 * t + 1 < m; ++t) {
        felt_t v = take_fresh_class();
        felt_t nv = f->neg(v);
        used[v] = used[nv] = 1;
        out.push_back(v);
        out.push_back(nv);
    }
    if (m % 2 == 1) {
        felt_t v = take_fresh_class();
        used[v] = used[f->neg(v)] = 1;
        out.push_back(v);
    }
    return out;
}

/// The full two-parity set: 2m pairs on 2^m x 2^m matrices. Runs the full
/// verifier before returning.
inline ASSet build_r2(int m, const FieldPtr& f) {
    auto matchings = matchings_r2(m);
    auto lambdas = assign_lambdas_r2(f, m);
    ASSet set;
    set.field = f;
    set.r = 2;
    set.ell = 1 << m;
    set.m = m;
    set.variant = kVariantR2;
    for (int i = 0; i < m; ++i) {
        auto [a, b] = pair_from_matching(f, matchings[i], lambdas[i], i);
        set.pairs.push_back(std::move(a));
        set.pairs.push_back(std::move(b));
    }
    if (!full_certificate(set).passed)
        throw VerificationFailed("two-parity set failed verification at q = " + std::to_string(f->q()));
    return set;
}

} // namespace msrkit
