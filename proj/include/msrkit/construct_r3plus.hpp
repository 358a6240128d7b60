#pragma once

#include <array>

#include "msrkit/construct_r3.hpp"

namespace msrkit {

struct HChoice {
    felt_t h = 0;
};

/// 3 x ell block (u+v+w; u+g2*v+g1*w; u+g1*v+g2*w): the rows of (u; v; w)
/// mixed by the order-3 Vandermonde matrix.
inline Mat block_n3(const FieldPtr& f, const CubeRoots& roots, const Mat& u, const Mat& v,
                    const Mat& w) {
    if (u.cols() != v.cols() || u.cols() != w.cols())
        throw DimensionMismatch("block rows must share length");
    Mat out(f, 3, u.cols());
    const felt_t g1 = roots.g1.value(), g2 = roots.g2.value();
    for (int r = 0; r < 3; ++r) detail::add_scaled_row(out, r, u, 0, 1);
    detail::add_scaled_row(out, 0, v, 0, 1);
    detail::add_scaled_row(out, 0, w, 0, 1);
    detail::add_scaled_row(out, 1, v, 0, g2);
    detail::add_scaled_row(out, 1, w, 0, g1);
    detail::add_scaled_row(out, 2, v, 0, g1);
    detail::add_scaled_row(out, 2, w, 0, g2);
    return out;
}

namespace detail {

// Signed unit row: +e_v or -e_v.
inline Mat signed_unit(const FieldPtr& f, int ell, int v, bool negate) {
    Mat m(f, 1, ell);
    m.at(0, v) = negate ? f->neg(1) : felt_t(1);
    return m;
}

inline Mat edge_sum_row(const FieldPtr& f, int ell, int a, int b, int c) {
    Mat m(f, 1, ell);
    m.at(0, a) = 1;
    m.at(0, b) = 1;
    m.at(0, c) = 1;
    return m;
}

} // namespace detail

/// The size-4 set of one matching: A_T = lambda_T * P_T^{-1} A P_T with the
/// geometric multipliers (lambda, lambda*h, lambda*h^2, lambda*h^3) for
/// T = Z, Z', Z'', Z*. The per-edge block arguments are
///   P_Z:   (z + z' + z'', -z', -z'')      P_Z':  (-z'', -z, z + z' + z'')
///   P_Z'': (-z', z + z' + z'', -z)        P_Z*:  (z, z'', z').
/// S_Z* spans the edge sums and is the one subspace without a unit basis.
inline std::array<ASPair, 4> quad_from_matching(const FieldPtr& f, const Matching& z, felt_t lambda_z,
                                                const HChoice& h, int matching_index) {
    if (z.r != 3) throw DimensionMismatch("quad_from_matching needs a three-color matching");
    if (lambda_z == 0) throw ZeroLambda("lambda must be nonzero");
    CubeRoots roots = cube_roots_of_unity(f);
    const int ell = z.ell;
    Mat a = matrix_a_r3(f, ell);

    enum Arg { Z0, Z1, Z2, SUM };
    auto arg_row = [&](Arg which, bool negate, int i) {
        if (which == SUM)
            return detail::edge_sum_row(f, ell, z.colors[0][i], z.colors[1][i], z.colors[2][i]);
        return detail::signed_unit(f, ell, z.colors[int(which)][i], negate);
    };
    auto build = [&](felt_t lambda, Arg u, bool nu, Arg v, bool nv, Arg w, bool nw) {
        Mat p(f, ell, ell);
        for (int i = 0; i < z.edges(); ++i) {
            Mat blk = block_n3(f, roots, arg_row(u, nu, i), arg_row(v, nv, i), arg_row(w, nw, i));
            for (int r = 0; r < 3; ++r) p.set_row(3 * i + r, blk.row(r));
        }
        return scalar_mul(lambda, mat_mul(mat_mul(invert(p), a), p));
    };
    auto color_span = [&](int color) {
        Mat rows(f, z.edges(), ell);
        for (int i = 0; i < z.edges(); ++i) rows.at(i, z.colors[color][i]) = 1;
        return Subspace::span(rows);
    };
    auto sum_span = [&]() {
        Mat rows(f, z.edges(), ell);
        for (int i = 0; i < z.edges(); ++i)
            for (int c = 0; c < 3; ++c) rows.at(i, z.colors[c][i]) = 1;
        return Subspace::span(rows);
    };

    const felt_t l0 = lambda_z;
    const felt_t l1 = f->mul(l0, h.h);
    const felt_t l2 = f->mul(l1, h.h);
    const felt_t l3 = f->mul(l2, h.h);
    return {ASPair{build(l0, SUM, false, Z1, true, Z2, true), color_span(0), {matching_index, 0}},
            ASPair{build(l1, Z2, true, Z0, true, SUM, false), color_span(1), {matching_index, 1}},
            ASPair{build(l2, Z1, true, SUM, false, Z0, true), color_span(2), {matching_index, 2}},
            ASPair{build(l3, Z0, false, Z2, false, Z1, false), sum_span(), {matching_index, 3}}};
}

namespace detail {

// Schur complements whose invertibility is equivalent to the four 3x3
// block conditions within one matching.
inline std::array<Mat, 4> schur_complements(const std::array<ASPair, 4>& quad) {
    const Mat& b0 = quad[0].a;
    const Mat& b1 = quad[1].a;
    const Mat& b2 = quad[2].a;
    const Mat& b3 = quad[3].a;
    auto sq = [](const Mat& m) { return mat_mul(m, m); };
    Mat s0 = sq(b0), s1 = sq(b1), s2 = sq(b2), s3 = sq(b3);
    auto term = [&](const Mat& x2, const Mat& y2, const Mat& x, const Mat& y) {
        return mat_mul(mat_sub(x2, y2), invert(mat_sub(x, y)));
    };
    Mat t01 = term(s0, s1, b0, b1);
    Mat t02 = term(s0, s2, b0, b2);
    Mat t03 = term(s0, s3, b0, b3);
    return {mat_sub(t02, t01), mat_sub(t03, t01), mat_sub(t03, t02),
            mat_sub(term(s1, s3, b1, b3), term(s1, s2, b1, b2))};
}

} // namespace detail

/// Finds the geometric ratio h: the scan keeps the first canonical nonzero
/// element with h^6, h^12, h^18 != 1 whose four within-matching Schur
/// complements are invertible on the first matching, with lambda normalized
/// to 1 (the complements do not depend on lambda or the matching).
inline HChoice find_h(const FieldPtr& f, int m) {
    if (f->characteristic() == 3)
        throw BadCharacteristic("long three-parity construction excludes characteristic 3");
    cube_roots_of_unity(f); // requires 3 | q - 1
    const Matching z = matchings_r3(m)[0];
    for (int v = 1; v < f->q(); ++v) {
        const felt_t h6 = f->pow(felt_t(v), 6);
        if (h6 == 1 || f->mul(h6, h6) == 1 || f->mul(f->mul(h6, h6), h6) == 1) continue;
        try {
            auto quad = quad_from_matching(f, z, 1, HChoice{felt_t(v)}, 0);
            auto ls = detail::schur_complements(quad);
            bool ok = true;
            for (const auto& l : ls) ok = ok && rank(l) == z.ell;
            if (ok) return HChoice{felt_t(v)};
        } catch (const Singular&) {
            // a singular pairwise difference disqualifies this candidate
        }
    }
    throw NoValidH("no valid h in GF(" + std::to_string(f->q()) + ")");
}

/// Greedy per-matching multipliers: repeatedly take the canonical-least
/// feasible element and drop every e with e^6 in { lambda^6 h^{6t} :
/// t in {0, +-1, +-2, +-3} }.
inline std::vector<felt_t> assign_lambda_families(const FieldPtr& f, int m, const HChoice& h) {
    const int q = f->q();
    const felt_t h6 = f->pow(h.h, 6);
    const felt_t h6inv = f->inv(h6);
    std::array<felt_t, 7> ratios{1, h6, f->mul(h6, h6), f->mul(f->mul(h6, h6), h6),
                                 h6inv, f->mul(h6inv, h6inv), f->mul(f->mul(h6inv, h6inv), h6inv)};
    std::vector<char> feasible(q, 1);
    feasible[0] = 0;
    std::vector<felt_t> out;
    for (int picked = 0; picked < m; ++picked) {
        int next = -1;
        for (int v = 1; v < q; ++v)
            if (feasible[v]) { next = v; break; }
        if (next < 0) throw Infeasible("lambda family exhausted the feasible set");
        out.push_back(felt_t(next));
        const felt_t l6 = f->pow(felt_t(next), 6);
        for (int v = 1; v < q; ++v) {
            if (!feasible[v]) continue;
            const felt_t e6 = f->pow(felt_t(v), 6);
            for (felt_t ratio : ratios)
                if (e6 == f->mul(l6, ratio)) { feasible[v] = 0; break; }
        }
    }
    return out;
}

/// The long three-parity set: 4m pairs on 3^m x 3^m matrices, k = 4m, not
/// access-optimal. Runs the full verifier before returning.
inline ASSet build_r3plus(int m, const FieldPtr& f) {
    HChoice h = find_h(f, m);
    auto lambdas = assign_lambda_families(f, m, h);
    auto matchings = matchings_r3(m);
    ASSet set;
    set.field = f;
    set.r = 3;
    set.ell = matchings[0].ell;
    set.m = m;
    set.variant = kVariantR3Long;
    set.h = h.h;
    set.lambda_base = lambdas;
    for (int i = 0; i < m; ++i) {
        auto quad = quad_from_matching(f, matchings[i], lambdas[i], h, i);
        for (auto& pr : quad) set.pairs.push_back(std::move(pr));
    }
    if (!full_certificate(set).passed)
        throw VerificationFailed("long three-parity set failed verification at q = " +
                                 std::to_string(f->q()));
    return set;
}

} // namespace msrkit
