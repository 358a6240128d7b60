#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msrkit/gf.hpp"

namespace msrkit {

/// Dense row-major matrix over a single field. Entries are raw canonical
/// values; use felt()/set_felt() at API boundaries.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr f, int rows, int cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), d_(size_t(rows) * cols, 0) {}

    static Mat identity(FieldPtr f, int n) {
        Mat m(std::move(f), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }

    felt_t& at(int r, int c) { return d_[size_t(r) * cols_ + c]; }
    felt_t at(int r, int c) const { return d_[size_t(r) * cols_ + c]; }
    Felt felt(int r, int c) const { return {f_, at(r, c)}; }

    const std::vector<felt_t>& data() const { return d_; }
    std::vector<felt_t>& data() { return d_; }

    std::vector<felt_t> row(int r) const {
        return {d_.begin() + size_t(r) * cols_, d_.begin() + size_t(r + 1) * cols_};
    }
    void set_row(int r, const std::vector<felt_t>& v) {
        std::copy(v.begin(), v.end(), d_.begin() + size_t(r) * cols_);
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_ &&
               (!a.f_ || !b.f_ || a.f_->same(*b.f_));
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    FieldPtr f_;
    int rows_ = 0, cols_ = 0;
    std::vector<felt_t> d_;
};

inline void check_same_field(const Mat& a, const Mat& b) {
    if (!a.field().same(b.field())) throw Error("matrices over different fields");
}

inline Mat mat_add(const Mat& a, const Mat& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_add shape mismatch");
    const Field& f = a.field();
    Mat out(a.field_ptr(), a.rows(), a.cols());
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = f.add(a.data()[i], b.data()[i]);
    return out;
}

inline Mat mat_sub(const Mat& a, const Mat& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_sub shape mismatch");
    const Field& f = a.field();
    Mat out(a.field_ptr(), a.rows(), a.cols());
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = f.sub(a.data()[i], b.data()[i]);
    return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul inner dimensions differ");
    const Field& f = a.field();
    Mat out(a.field_ptr(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int t = 0; t < a.cols(); ++t) {
            felt_t v = a.at(i, t);
            if (v == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                felt_t prod = f.mul(v, b.at(t, j));
                if (prod) out.at(i, j) = f.add(out.at(i, j), prod);
            }
        }
    }
    return out;
}

inline Mat operator+(const Mat& a, const Mat& b) { return mat_add(a, b); }
inline Mat operator-(const Mat& a, const Mat& b) { return mat_sub(a, b); }
inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

inline Mat scalar_mul(felt_t s, const Mat& a) {
    const Field& f = a.field();
    Mat out = a;
    for (auto& v : out.data()) v = f.mul(s, v);
    return out;
}
inline Mat scalar_mul(const Felt& s, const Mat& a) { return scalar_mul(s.value(), a); }

inline Mat mat_pow(const Mat& a, std::uint64_t e) {
    if (a.rows() != a.cols()) throw DimensionMismatch("mat_pow needs a square matrix");
    Mat r = Mat::identity(a.field_ptr(), a.rows());
    Mat base = a;
    while (e) {
        if (e & 1) r = mat_mul(r, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return r;
}

namespace detail {

// In-place reduced row echelon form with leading coefficient 1; returns rank.
inline int rref_in_place(std::vector<felt_t>& d, int rows, int cols, const Field& f) {
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (d[size_t(r) * cols + col]) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < cols; ++c)
                std::swap(d[size_t(pivot) * cols + c], d[size_t(rank) * cols + c]);
        felt_t scale = f.inv(d[size_t(rank) * cols + col]);
        if (scale != 1)
            for (int c = col; c < cols; ++c)
                d[size_t(rank) * cols + c] = f.mul(scale, d[size_t(rank) * cols + c]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            felt_t factor = d[size_t(r) * cols + col];
            if (!factor) continue;
            for (int c = col; c < cols; ++c) {
                felt_t delta = f.mul(factor, d[size_t(rank) * cols + c]);
                d[size_t(r) * cols + c] = f.sub(d[size_t(r) * cols + c], delta);
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

inline int rank(const Mat& a) {
    auto d = a.data();
    return detail::rref_in_place(d, a.rows(), a.cols(), a.field());
}

inline Mat invert(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("invert needs a square matrix");
    const int n = a.rows();
    const Field& f = a.field();
    std::vector<felt_t> aug(size_t(n) * 2 * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[size_t(i) * 2 * n + j] = a.at(i, j);
        aug[size_t(i) * 2 * n + n + i] = 1;
    }
    detail::rref_in_place(aug, n, 2 * n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (aug[size_t(i) * 2 * n + j] != (i == j ? 1 : 0)) throw Singular("matrix is singular");
    Mat out(a.field_ptr(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug[size_t(i) * 2 * n + n + j];
    return out;
}

/// Row space in canonical form: basis held as RREF with no zero rows, so
/// equal subspaces compare equal as values.
class Subspace {
public:
    Subspace() = default;

    static Subspace span(const Mat& rows) {
        auto d = rows.data();
        int r = detail::rref_in_place(d, rows.rows(), rows.cols(), rows.field());
        Mat basis(rows.field_ptr(), r, rows.cols());
        std::copy(d.begin(), d.begin() + size_t(r) * rows.cols(), basis.data().begin());
        return Subspace(rows.cols(), std::move(basis));
    }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Subspace(int ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}
    int ambient_ = 0;
    Mat basis_;
};

inline Subspace span(const Mat& rows) { return Subspace::span(rows); }

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) throw DimensionMismatch("subspace_sum ambient mismatch");
    Mat stacked(u.basis().field_ptr(), u.dim() + v.dim(), u.ambient());
    for (int i = 0; i < u.dim(); ++i) stacked.set_row(i, u.basis().row(i));
    for (int i = 0; i < v.dim(); ++i) stacked.set_row(u.dim() + i, v.basis().row(i));
    return Subspace::span(stacked);
}

inline bool subspace_eq(const Subspace& u, const Subspace& v) { return u == v; }

/// dim(U) + dim(V) - dim(U + V).
inline int intersection_dim(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) throw DimensionMismatch("intersection_dim ambient mismatch");
    return u.dim() + v.dim() - subspace_sum(u, v).dim();
}

/// Span of (basis of s) * a.
inline Subspace image_mul(const Subspace& s, const Mat& a) {
    if (s.ambient() != a.rows()) throw DimensionMismatch("image_mul ambient mismatch");
    return Subspace::span(mat_mul(s.basis(), a));
}

inline bool is_unit_vector_basis(const Subspace& s) {
    for (int i = 0; i < s.dim(); ++i) {
        int nonzero = 0;
        felt_t last = 0;
        for (int c = 0; c < s.ambient(); ++c)
            if (s.basis().at(i, c)) { ++nonzero; last = s.basis().at(i, c); }
        if (nonzero != 1 || last != 1) return false;
    }
    return true;
}

/// Unit row vector e_i as a 1 x ell matrix.
inline Mat unit_row(const FieldPtr& f, int ell, int i) {
    Mat m(f, 1, ell);
    m.at(0, i) = 1;
    return m;
}

} // namespace msrkit
