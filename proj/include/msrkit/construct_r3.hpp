#pragma once

#include <array>

#include "msrkit/aset.hpp"
#include "msrkit/matchings.hpp"
#include "msrkit/verify.hpp"

namespace msrkit {

/// Per-edge chosen constants of the three-parity change matrices. The
/// products alpha''*beta, alpha'*beta'', alpha*beta' must avoid the field
/// image of 9.
struct ConstantChoice {
    Felt alpha, alpha_p, alpha_pp;
    Felt beta, beta_p, beta_pp;
};

/// Block diagonal of ell/3 companion blocks of x^3 - 1; cubes to I.
inline Mat matrix_a_r3(const FieldPtr& f, int ell) {
    int n = ell;
    while (n > 1 && n % 3 == 0) n /= 3;
    if (n != 1 || ell < 3) throw BadLength("companion-block matrix needs ell = 3^m");
    Mat a(f, ell, ell);
    for (int b = 0; b < ell / 3; ++b) {
        a.at(3 * b, 3 * b + 2) = 1;
        a.at(3 * b + 1, 3 * b) = 1;
        a.at(3 * b + 2, 3 * b + 1) = 1;
    }
    return a;
}

namespace detail {

inline void add_scaled_row(Mat& dst, int row, const Mat& src, int src_row, felt_t c) {
    const Field& f = dst.field();
    for (int j = 0; j < dst.cols(); ++j)
        dst.at(row, j) = f.add(dst.at(row, j), f.mul(c, src.at(src_row, j)));
}

} // namespace detail

/// 3 x ell block (u; u - a*g1/(g1-1) v + b/(g1-1) w; u + a/(g1-1) v - b*g1/(g1-1) w).
/// Row equivalent to (u; v; w) whenever alpha, beta are nonzero.
inline Mat block_n(const FieldPtr& f, const CubeRoots& roots, const Felt& alpha, const Felt& beta,
                   const Mat& u, const Mat& v, const Mat& w) {
    if (alpha.is_zero() || beta.is_zero()) throw ZeroConstant("alpha and beta must be nonzero");
    if (u.cols() != v.cols() || u.cols() != w.cols())
        throw DimensionMismatch("block rows must share length");
    const felt_t t = (roots.g1 - roots.one).inv().value(); // 1/(g1 - 1)
    const felt_t g1 = roots.g1.value();
    const felt_t cv1 = f->neg(f->mul(alpha.value(), f->mul(g1, t)));
    const felt_t cw1 = f->mul(beta.value(), t);
    const felt_t cv2 = f->mul(alpha.value(), t);
    const felt_t cw2 = f->neg(f->mul(beta.value(), f->mul(g1, t)));
    Mat out(f, 3, u.cols());
    for (int r = 0; r < 3; ++r) detail::add_scaled_row(out, r, u, 0, 1);
    detail::add_scaled_row(out, 1, v, 0, cv1);
    detail::add_scaled_row(out, 1, w, 0, cw1);
    detail::add_scaled_row(out, 2, v, 0, cv2);
    detail::add_scaled_row(out, 2, w, 0, cw2);
    return out;
}

/// Characteristic-dependent constants making all three rank conditions hold.
inline ConstantChoice constants_for_char(const FieldPtr& f) {
    if (f->characteristic() == 3)
        throw BadCharacteristic("three-parity constructions exclude characteristic 3");
    CubeRoots roots = cube_roots_of_unity(f);
    Felt one = roots.one;
    ConstantChoice c{one, one, one, one, one, one};
    if (f->characteristic() == 2) {
        c = {one, roots.g1, roots.g1, one, roots.g2, one};
    } else if (f->characteristic() == 7) {
        c = {roots.g2, one, one, one, roots.g1, one};
    }
    const felt_t nine = f->from_int(9);
    if (c.alpha_pp.value() == 0 || f->mul(c.alpha_pp.value(), c.beta.value()) == nine ||
        f->mul(c.alpha_p.value(), c.beta_pp.value()) == nine ||
        f->mul(c.alpha.value(), c.beta_p.value()) == nine)
        throw Error("constant choice violates the rank conditions");
    return c;
}

/// The size-3 set of one matching: A_T = lambda * P_T^{-1} A P_T for
/// T in {Z, Z', Z''}, with the change matrices stacked from per-edge blocks
/// in the cyclic argument orders (z, z', z''), (z', z'', z), (z'', z, z').
inline std::array<ASPair, 3> triple_from_matching(const FieldPtr& f, const Matching& z, felt_t lambda,
                                                  const ConstantChoice& c, int matching_index) {
    if (z.r != 3) throw DimensionMismatch("triple_from_matching needs a three-color matching");
    if (lambda == 0) throw ZeroLambda("lambda must be nonzero");
    CubeRoots roots = cube_roots_of_unity(f);
    const int ell = z.ell;
    Mat a = matrix_a_r3(f, ell);
    auto build = [&](const Felt& alpha, const Felt& beta, int c0, int c1, int c2) {
        Mat p(f, ell, ell);
        for (int i = 0; i < z.edges(); ++i) {
            Mat blk = block_n(f, roots, alpha, beta, unit_row(f, ell, z.colors[c0][i]),
                              unit_row(f, ell, z.colors[c1][i]), unit_row(f, ell, z.colors[c2][i]));
            for (int r = 0; r < 3; ++r) p.set_row(3 * i + r, blk.row(r));
        }
        return scalar_mul(lambda, mat_mul(mat_mul(invert(p), a), p));
    };
    auto color_span = [&](int color) {
        Mat rows(f, z.edges(), ell);
        for (int i = 0; i < z.edges(); ++i) rows.at(i, z.colors[color][i]) = 1;
        return Subspace::span(rows);
    };
    return {ASPair{build(c.alpha, c.beta, 0, 1, 2), color_span(0), {matching_index, 0}},
            ASPair{build(c.alpha_p, c.beta_p, 1, 2, 0), color_span(1), {matching_index, 1}},
            ASPair{build(c.alpha_pp, c.beta_pp, 2, 0, 1), color_span(2), {matching_index, 2}}};
}

/// Greedy scan of F_q^* keeping elements whose sixth powers are pairwise
/// distinct; exactly m of them exist under the stated field bounds.
inline std::vector<felt_t> assign_lambdas_r3(const FieldPtr& f, int m) {
    const int q = f->q();
    const bool odd = q % 2 == 1;
    if ((odd && q < 6 * m + 1) || (!odd && q < 3 * m + 1))
        throw FieldTooSmall("three-parity construction needs q >= 6m+1 (odd) or 3m+1 (even)");
    std::vector<felt_t> out;
    std::vector<felt_t> sixth;
    for (int v = 1; v < q && int(out.size()) < m; ++v) {
        felt_t s = f->pow(felt_t(v), 6);
        bool fresh = true;
        for (felt_t seen : sixth) fresh = fresh && seen != s;
        if (fresh) {
            out.push_back(felt_t(v));
            sixth.push_back(s);
        }
    }
    if (int(out.size()) < m) throw FieldTooSmall("not enough distinct sixth powers");
    return out;
}

/// The full three-parity access-optimal set: 3m pairs on 3^m x 3^m matrices.
/// Runs the full verifier before returning.
inline ASSet build_r3(int m, const FieldPtr& f) {
    ConstantChoice c = constants_for_char(f);
    auto lambdas = assign_lambdas_r3(f, m);
    auto matchings = matchings_r3(m);
    ASSet set;
    set.field = f;
    set.r = 3;
    set.ell = matchings[0].ell;
    set.m = m;
    set.variant = kVariantR3;
    for (int i = 0; i < m; ++i) {
        auto triple = triple_from_matching(f, matchings[i], lambdas[i], c, i);
        for (auto& pr : triple) set.pairs.push_back(std::move(pr));
    }
    if (!full_certificate(set).passed)
        throw VerificationFailed("three-parity set failed verification at q = " + std::to_string(f->q()));
    return set;
}

} // namespace msrkit
