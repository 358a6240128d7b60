#pragma once

#include <chrono>
#include <string>
#include <tuple>
#include <vector>

#include "msrkit/aset.hpp"

namespace msrkit {

struct NonsingularCheck {
    std::string desc; // e.g. "inv(A2)", "block2(A1,A3)", "block3(A1,A2,A4)"
    bool ok = false;
};

struct IntersectionAudit {
    int i = 0, j = 0;       // pair indices into the set, i < j
    int dim = 0;            // measured dim(S_i n S_j)
    bool cross_matching = false;
    int expected = 0;       // ell/r^2 for cross-matching pairs, 0 otherwise
    bool ok = false;        // cross-matching pairs must hit expected exactly
};

/// Full record of one verification run; `passed` aggregates exactly the
/// independence, invariance, and nonsingular sections.
struct Certificate {
    bool passed = false;
    std::vector<bool> independence;
    std::vector<std::tuple<int, int, bool>> invariance; // ordered (i, j), i != j
    std::vector<NonsingularCheck> nonsingular;
    std::vector<bool> access_optimal;
    std::vector<IntersectionAudit> intersections;
    double timing_seconds = 0.0;
};

/// S_i + S_i A_i + ... + S_i A_i^{r-1} = F_q^ell, for each pair.
inline std::vector<bool> check_independence(const ASSet& set) {
    if (set.r < 1 || set.ell % set.r != 0)
        throw DimensionMismatch("independence check needs r | ell");
    std::vector<bool> out;
    out.reserve(set.pairs.size());
    for (const auto& pr : set.pairs) {
        Subspace acc = pr.s;
        Mat power = pr.a;
        for (int t = 1; t < set.r; ++t) {
            acc = subspace_sum(acc, image_mul(pr.s, power));
            if (t + 1 < set.r) power = mat_mul(power, pr.a);
        }
        out.push_back(acc.dim() == set.ell);
    }
    return out;
}

/// S_i A_j = S_i for every ordered pair i != j.
inline std::vector<std::tuple<int, int, bool>> check_invariance(const ASSet& set) {
    std::vector<std::tuple<int, int, bool>> out;
    const int k = set.k();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            out.emplace_back(i, j, image_mul(set.pairs[i].s, set.pairs[j].a) == set.pairs[i].s);
        }
    return out;
}

namespace detail {

inline Mat block2(const Mat& ai, const Mat& aj) {
    const int ell = ai.rows();
    Mat out(ai.field_ptr(), 2 * ell, 2 * ell);
    for (int r = 0; r < ell; ++r)
        for (int c = 0; c < ell; ++c) {
            out.at(r, c) = r == c ? 1 : 0;
            out.at(ell + r, c) = r == c ? 1 : 0;
            out.at(r, ell + c) = ai.at(r, c);
            out.at(ell + r, ell + c) = aj.at(r, c);
        }
    return out;
}

inline Mat block3(const Mat& ai, const Mat& ai2, const Mat& aj, const Mat& aj2, const Mat& at,
                  const Mat& at2) {
    const int ell = ai.rows();
    Mat out(ai.field_ptr(), 3 * ell, 3 * ell);
    auto put = [&](int br, int bc, const Mat* m) {
        for (int r = 0; r < ell; ++r)
            for (int c = 0; c < ell; ++c)
                out.at(br * ell + r, bc * ell + c) = m ? m->at(r, c) : (r == c ? 1 : 0);
    };
    put(0, 0, nullptr);
    put(0, 1, &ai);
    put(0, 2, &ai2);
    put(1, 0, nullptr);
    put(1, 1, &aj);
    put(1, 2, &aj2);
    put(2, 0, nullptr);
    put(2, 1, &at);
    put(2, 2, &at2);
    return out;
}

} // namespace detail

/// Nonsingularity of the parity block matrix, phrased per r. For r = 2 this
/// is invertibility of each A_i and each A_i - A_j; for r = 3 it is the
/// three-condition list (pairwise 2x2 blocks on A and A^2, plus every
/// distinct-triple 3x3 block, materialized in full).
inline std::vector<NonsingularCheck> check_nonsingular(const ASSet& set) {
    if (set.r != 2 && set.r != 3) throw UnsupportedR("nonsingular check supports r in {2, 3}");
    std::vector<NonsingularCheck> out;
    const int k = set.k();
    const int ell = set.ell;
    auto name = [](int i) { return "A" + std::to_string(i + 1); };
    if (set.r == 2) {
        for (int i = 0; i < k; ++i)
            out.push_back({"inv(" + name(i) + ")", rank(set.pairs[i].a) == ell});
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                out.push_back({"diff(" + name(i) + "," + name(j) + ")",
                               rank(mat_sub(set.pairs[i].a, set.pairs[j].a)) == ell});
        return out;
    }
    std::vector<Mat> sq;
    sq.reserve(k);
    for (const auto& pr : set.pairs) sq.push_back(mat_mul(pr.a, pr.a));
    for (int i = 0; i < k; ++i)
        out.push_back({"inv(" + name(i) + ")", rank(set.pairs[i].a) == ell});
    for (int i = 0; i < k; ++i)
        out.push_back({"inv(" + name(i) + "^2)", rank(sq[i]) == ell});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            out.push_back({"block2(" + name(i) + "," + name(j) + ")",
                           rank(detail::block2(set.pairs[i].a, set.pairs[j].a)) == 2 * ell});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            out.push_back({"block2sq(" + name(i) + "," + name(j) + ")",
                           rank(detail::block2(sq[i], sq[j])) == 2 * ell});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int t = j + 1; t < k; ++t)
                out.push_back({"block3(" + name(i) + "," + name(j) + "," + name(t) + ")",
                               rank(detail::block3(set.pairs[i].a, sq[i], set.pairs[j].a, sq[j],
                                                   set.pairs[t].a, sq[t])) == 3 * ell});
    return out;
}

inline std::vector<bool> check_access_optimal(const ASSet& set) {
    std::vector<bool> out;
    out.reserve(set.pairs.size());
    for (const auto& pr : set.pairs) out.push_back(is_unit_vector_basis(pr.s));
    return out;
}

/// Measures dim(S_i n S_j) for every unordered pair. Cross-matching pairs
/// must land exactly on ell/r^2.
inline std::vector<IntersectionAudit> audit_intersections(const ASSet& set) {
    std::vector<IntersectionAudit> out;
    const int k = set.k();
    const int bound = set.ell / (set.r * set.r);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            IntersectionAudit a;
            a.i = i;
            a.j = j;
            a.dim = intersection_dim(set.pairs[i].s, set.pairs[j].s);
            a.cross_matching = set.pairs[i].label.matching != set.pairs[j].label.matching;
            a.expected = a.cross_matching ? bound : 0;
            a.ok = !a.cross_matching || a.dim == a.expected;
            out.push_back(a);
        }
    return out;
}

inline Certificate full_certificate(const ASSet& set) {
    auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.independence = check_independence(set);
    cert.invariance = check_invariance(set);
    cert.nonsingular = check_nonsingular(set);
    cert.access_optimal = check_access_optimal(set);
    cert.intersections = audit_intersections(set);
    bool ok = true;
    for (bool b : cert.independence) ok = ok && b;
    for (const auto& [i, j, b] : cert.invariance) ok = ok && b;
    for (const auto& c : cert.nonsingular) ok = ok && c.ok;
    cert.passed = ok;
    cert.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace msrkit
