#pragma once

#include <algorithm>
#include <map>

#include "msrkit/aset.hpp"
#include "msrkit/verify.hpp"

namespace msrkit {

/// A usable code: the verified pair set plus its derived parameters.
/// Node indices are 1-based throughout the engine; nodes 1..k are
/// systematic, nodes k+1..k+r hold the parity columns.
struct CodeSpec {
    ASSet aset;
    int k = 0, r = 0, ell = 0, n = 0, q = 0;
    bool access_optimal = false;

    long file_size() const { return long(k) * ell; }
};

inline CodeSpec make_code_spec(ASSet aset) {
    CodeSpec spec;
    spec.k = aset.k();
    spec.r = aset.r;
    spec.ell = aset.ell;
    spec.n = spec.k + spec.r;
    spec.q = aset.q();
    spec.access_optimal = true;
    for (const auto& pr : aset.pairs) spec.access_optimal &= is_unit_vector_basis(pr.s);
    spec.aset = std::move(aset);
    return spec;
}

/// The n stored columns, each of length ell.
struct NodeArray {
    FieldPtr field;
    int ell = 0;
    std::vector<std::vector<felt_t>> columns;
};

struct BandwidthBudget {
    long beta = 0;  // symbols per helper
    long total = 0; // (k + r - 1) * ell / r
};

inline BandwidthBudget bandwidth_budget(const CodeSpec& spec) {
    long beta = spec.ell / spec.r;
    return {beta, beta * (spec.k + spec.r - 1)};
}

namespace detail {

// y = M x for a stored column x.
inline std::vector<felt_t> apply_to_column(const Mat& m, const std::vector<felt_t>& x) {
    const Field& f = m.field();
    std::vector<felt_t> y(m.rows(), 0);
    for (int r = 0; r < m.rows(); ++r) {
        felt_t acc = 0;
        for (int c = 0; c < m.cols(); ++c) {
            felt_t v = m.at(r, c);
            if (v && x[c]) acc = f.add(acc, f.mul(v, x[c]));
        }
        y[r] = acc;
    }
    return y;
}

inline void column_add(const Field& f, std::vector<felt_t>& dst, const std::vector<felt_t>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], src[i]);
}

inline void column_sub(const Field& f, std::vector<felt_t>& dst, const std::vector<felt_t>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = f.sub(dst[i], src[i]);
}

} // namespace detail

/// Systematic encode: columns 1..k copy the file parts, parity column k+j
/// stores sum_i A_i^{j-1} C_i.
inline NodeArray encode(const CodeSpec& spec, const std::vector<felt_t>& file) {
    if (long(file.size()) != spec.file_size())
        throw LengthMismatch("file must hold k * ell symbols");
    for (felt_t v : file)
        if (v >= spec.q) throw MalformedInput("file symbol out of field range");
    const Field& f = *spec.aset.field;
    NodeArray store;
    store.field = spec.aset.field;
    store.ell = spec.ell;
    store.columns.resize(spec.n);
    for (int i = 0; i < spec.k; ++i)
        store.columns[i].assign(file.begin() + long(i) * spec.ell,
                                file.begin() + long(i + 1) * spec.ell);
    for (int j = 0; j < spec.r; ++j) store.columns[spec.k + j].assign(spec.ell, 0);
    for (int i = 0; i < spec.k; ++i) {
        std::vector<felt_t> acc = store.columns[i]; // A_i^0 C_i
        for (int j = 0; j < spec.r; ++j) {
            detail::column_add(f, store.columns[spec.k + j], acc);
            if (j + 1 < spec.r) acc = detail::apply_to_column(spec.aset.pairs[i].a, acc);
        }
    }
    return store;
}

/// Rebuilds the file from any k stored columns, given as (1-based node
/// index, column) pairs. Chosen parity columns are stripped of the known
/// systematic contributions and the remaining block system in the erased
/// parts is solved; it is invertible exactly when the nonsingular property
/// holds for the touched blocks.
inline std::vector<felt_t> reconstruct(const CodeSpec& spec,
                                       const std::vector<std::pair<int, std::vector<felt_t>>>& nodes) {
    if (int(nodes.size()) != spec.k) throw BadSubset("need exactly k columns");
    std::vector<char> chosen(spec.n + 1, 0);
    for (const auto& [idx, col] : nodes) {
        if (idx < 1 || idx > spec.n) throw BadSubset("node index out of range");
        if (chosen[idx]) throw BadSubset("duplicate node index");
        if (int(col.size()) != spec.ell) throw LengthMismatch("column has wrong length");
        for (felt_t v : col)
            if (v >= spec.q) throw MalformedInput("column symbol out of field range");
        chosen[idx] = 1;
    }
    const Field& f = *spec.aset.field;
    std::vector<felt_t> file(spec.file_size(), 0);
    std::vector<int> erased;
    for (int i = 1; i <= spec.k; ++i)
        if (!chosen[i]) erased.push_back(i);
    std::map<int, const std::vector<felt_t>*> by_index;
    for (const auto& [idx, col] : nodes) by_index[idx] = &col;
    for (int i = 1; i <= spec.k; ++i)
        if (chosen[i])
            std::copy(by_index[i]->begin(), by_index[i]->end(),
                      file.begin() + long(i - 1) * spec.ell);
    if (erased.empty()) return file;

    std::vector<int> parities; // exponents j-1 of the chosen parity nodes
    for (int j = 0; j < spec.r; ++j)
        if (chosen[spec.k + 1 + j]) parities.push_back(j);
    const int s = int(erased.size());
    const int ell = spec.ell;

    // rhs_t = C_{k+1+parities[t]} - sum over known systematic parts
    std::vector<std::vector<felt_t>> rhs(s);
    for (int t = 0; t < s; ++t) {
        rhs[t] = *by_index[spec.k + 1 + parities[t]];
        for (int i = 1; i <= spec.k; ++i) {
            if (!chosen[i]) continue;
            Mat power = mat_pow(spec.aset.pairs[i - 1].a, parities[t]);
            detail::column_sub(f, rhs[t], detail::apply_to_column(power, *by_index[i]));
        }
    }
    // block system: row t, column e holds A_{erased[e]}^{parities[t]}
    std::vector<felt_t> aug(size_t(s) * ell * (size_t(s) * ell + 1), 0);
    const size_t width = size_t(s) * ell + 1;
    for (int t = 0; t < s; ++t)
        for (int e = 0; e < s; ++e) {
            Mat power = mat_pow(spec.aset.pairs[erased[e] - 1].a, parities[t]);
            for (int r = 0; r < ell; ++r)
                for (int c = 0; c < ell; ++c)
                    aug[(size_t(t) * ell + r) * width + size_t(e) * ell + c] = power.at(r, c);
        }
    for (int t = 0; t < s; ++t)
        for (int r = 0; r < ell; ++r) aug[(size_t(t) * ell + r) * width + size_t(s) * ell] = rhs[t][r];
    detail::rref_in_place(aug, s * ell, int(width), f);
    // the system is solvable iff the coefficient block reduced to the identity
    for (int i = 0; i < s * ell; ++i)
        for (int c = 0; c < s * ell; ++c)
            if (aug[size_t(i) * width + c] != (i == c ? 1 : 0))
                throw Singular("reconstruction system is singular");
    for (int e = 0; e < s; ++e)
        for (int r = 0; r < ell; ++r)
            file[long(erased[e] - 1) * ell + r] = aug[(size_t(e) * ell + r) * width + size_t(s) * ell];
    return file;
}

/// Canonical echelon basis of S_j as an (ell/r) x ell matrix; for
/// access-optimal sets its rows are unit vectors.
inline Mat make_projector(const CodeSpec& spec, int j) {
    if (j < 1 || j > spec.k) throw BadIndex("only systematic nodes are repairable");
    return spec.aset.pairs[j - 1].s.basis();
}

/// Everything about repairing node j that does not depend on the stored
/// data: the projector, the interference matrices M_{i,t} with
/// proj * A_i^t = M_{i,t} * proj, and the inverse of the stacked system
/// [proj; proj A_j; ...; proj A_j^{r-1}].
struct RepairPlan {
    int failed = 0; // 1-based systematic index
    Mat projector;
    std::vector<std::vector<Mat>> interference; // [helper i - 1][t], identity-sized d x d
    Mat solve_inv;                              // ell x ell
    int access_per_helper = 0;
};

inline RepairPlan make_repair_plan(const CodeSpec& spec, int j) {
    RepairPlan plan;
    plan.failed = j;
    plan.projector = make_projector(spec, j);
    const int d = plan.projector.rows();
    const int ell = spec.ell;

    // leading columns of the echelon basis; restriction to them inverts
    // M -> M * proj
    std::vector<int> pivots;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < ell; ++c)
            if (plan.projector.at(r, c)) { pivots.push_back(c); break; }
    plan.interference.assign(spec.k, {});
    for (int i = 1; i <= spec.k; ++i) {
        if (i == j) continue;
        auto& row = plan.interference[i - 1];
        Mat image = plan.projector; // proj * A_i^t, starting at t = 0
        for (int t = 0; t < spec.r; ++t) {
            Mat m(spec.aset.field, d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) m.at(r, c) = image.at(r, pivots[c]);
            if (mat_mul(m, plan.projector) != image)
                throw InterferenceSolveFailed("S_" + std::to_string(j) + " is not invariant under A_" +
                                              std::to_string(i));
            row.push_back(std::move(m));
            if (t + 1 < spec.r) image = mat_mul(image, spec.aset.pairs[i - 1].a);
        }
    }
    Mat stacked(spec.aset.field, ell, ell);
    Mat image = plan.projector;
    for (int t = 0; t < spec.r; ++t) {
        for (int r = 0; r < d; ++r) stacked.set_row(t * d + r, image.row(r));
        if (t + 1 < spec.r) image = mat_mul(image, spec.aset.pairs[j - 1].a);
    }
    plan.solve_inv = invert(stacked);
    for (int c = 0; c < ell; ++c)
        for (int r = 0; r < d; ++r)
            if (plan.projector.at(r, c)) { ++plan.access_per_helper; break; }
    return plan;
}

/// One repair session: who sent what, the bandwidth and access counters,
/// and the recovered column.
struct RepairTranscript {
    int failed = 0;
    Mat projector;
    std::vector<std::pair<int, std::vector<felt_t>>> payloads; // (1-based node, d symbols)
    long symbols_sent = 0;
    std::vector<std::pair<int, int>> symbols_accessed; // (1-based node, coordinates read)
    std::vector<felt_t> recovered;
};

inline RepairTranscript repair_with_plan(const CodeSpec& spec, const RepairPlan& plan,
                                         const NodeArray& store) {
    if (int(store.columns.size()) != spec.n || store.ell != spec.ell ||
        !store.field->same(*spec.aset.field))
        throw MalformedInput("stored array does not match the code parameters");
    for (const auto& col : store.columns) {
        if (int(col.size()) != spec.ell) throw MalformedInput("stored column has wrong length");
        for (felt_t v : col)
            if (v >= spec.q) throw MalformedInput("stored symbol out of field range");
    }
    const Field& f = *spec.aset.field;
    const int d = plan.projector.rows();
    RepairTranscript tr;
    tr.failed = plan.failed;
    tr.projector = plan.projector;
    std::map<int, std::vector<felt_t>> payload_of;
    for (int v = 1; v <= spec.n; ++v) {
        if (v == plan.failed) continue;
        auto payload = detail::apply_to_column(plan.projector, store.columns[v - 1]);
        tr.symbols_sent += long(payload.size());
        tr.symbols_accessed.emplace_back(v, plan.access_per_helper);
        payload_of[v] = payload;
        tr.payloads.emplace_back(v, std::move(payload));
    }
    // strip the interference of every surviving systematic column from the
    // parity payloads, then solve the stacked system for the lost column
    std::vector<felt_t> stacked_rhs(size_t(spec.r) * d, 0);
    for (int t = 0; t < spec.r; ++t) {
        std::vector<felt_t> cleaned = payload_of[spec.k + 1 + t];
        for (int i = 1; i <= spec.k; ++i) {
            if (i == plan.failed) continue;
            auto interference =
                detail::apply_to_column(plan.interference[i - 1][t], payload_of[i]);
            detail::column_sub(f, cleaned, interference);
        }
        std::copy(cleaned.begin(), cleaned.end(), stacked_rhs.begin() + size_t(t) * d);
    }
    tr.recovered = detail::apply_to_column(plan.solve_inv, stacked_rhs);
    return tr;
}

inline RepairTranscript repair(const CodeSpec& spec, const NodeArray& store, int j) {
    return repair_with_plan(spec, make_repair_plan(spec, j), store);
}

} // namespace msrkit
