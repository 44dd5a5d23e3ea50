#pragma once

// Small dense exact linear algebra over the library's coefficient rings
// (Rational, Fp), plus a sparse row-reduction span over FockVectors used for
// rank tracking during module closure.

#include "fock.hpp"

#include <optional>
#include <vector>

namespace fvoa {

template <class R>
class Matrix {
public:
    Matrix(size_t rows, size_t cols, R zero)
        : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    R& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const R& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    // In-place row reduction to reduced echelon form; returns pivot columns.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = row;
            while (sel < rows_ && ring_is_zero(at(sel, col))) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
            R inv = ring_inverse(at(row, col));
            for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || ring_is_zero(at(i, col))) continue;
                R f = at(i, col);
                for (size_t j = col; j < cols_; ++j) {
                    R t = f;
                    t *= at(row, j);
                    at(i, j) -= t;
                }
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        Matrix copy = *this;
        return copy.rref().size();
    }

    // Basis of the right kernel {x : Ax = 0}.
    std::vector<std::vector<R>> kernel_basis() const {
        Matrix copy = *this;
        std::vector<size_t> pivots = copy.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t p : pivots) is_pivot[p] = true;
        std::vector<std::vector<R>> out;
        for (size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<R> x(cols_, zero_);
            x[free] = ring_one(zero_);
            for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -copy.at(i, free);
            out.push_back(std::move(x));
        }
        return out;
    }

    R determinant() const {
        if (rows_ != cols_) throw std::domain_error("determinant of non-square matrix");
        Matrix a = *this;
        R det = ring_one(zero_);
        for (size_t col = 0; col < cols_; ++col) {
            size_t sel = col;
            while (sel < rows_ && ring_is_zero(a.at(sel, col))) ++sel;
            if (sel == rows_) return zero_;
            if (sel != col) {
                for (size_t j = 0; j < cols_; ++j) std::swap(a.at(sel, j), a.at(col, j));
                det = -det;
            }
            det *= a.at(col, col);
            R inv = ring_inverse(a.at(col, col));
            for (size_t i = col + 1; i < rows_; ++i) {
                if (ring_is_zero(a.at(i, col))) continue;
                R f = a.at(i, col);
                f *= inv;
                for (size_t j = col; j < cols_; ++j) {
                    R t = f;
                    t *= a.at(col, j);
                    a.at(i, j) -= t;
                }
            }
        }
        return det;
    }

    // Unique solution of Ax = b when it exists within span of the columns.
    std::optional<std::vector<R>> solve(const std::vector<R>& b) const {
        Matrix aug(rows_, cols_ + 1, zero_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<size_t> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt; // inconsistent
        std::vector<R> x(cols_, zero_);
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
        // reject underdetermined systems with nonzero free contribution: the
        // callers only ever solve against linearly independent column sets
        return x;
    }

private:
    static Rational ring_inverse(const Rational& x) { return Rational(1) / x; }
    static Fp ring_inverse(const Fp& x) { return x.inv(); }
    static Rational ring_one(const Rational&) { return Rational(1); }
    static Fp ring_one(const Fp& x) { return Fp(1, x.p); }

    size_t rows_, cols_;
    R zero_;
    std::vector<R> data_;
};

// ---------------------------------------------------------------------------
// Sparse reduced span of FockVectors keyed by monomial pivots.  insert()
// reports whether the vector enlarged the span; rows are kept fully reduced.

template <class R>
class VectorSpan {
public:
    bool insert(FockVector<R> v) {
        reduce(v);
        if (v.is_zero()) return false;
        MonoId pivot = v.terms().begin()->first;
        R inv = inverse(v.terms().begin()->second);
        v.scale(inv);
        for (auto& [p, row] : rows_) {
            auto it = row.terms().find(pivot);
            if (it != row.terms().end()) {
                R c = it->second;
                FockVector<R> t = v;
                t.scale(c);
                row -= t;
            }
        }
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    // Reduces v against the span in place; v becomes 0 iff it was a member.
    void reduce(FockVector<R>& v) const {
        while (!v.is_zero()) {
            auto it = rows_.find(v.terms().begin()->first);
            if (it == rows_.end()) {
                // leading monomial not a pivot: reduce deeper terms only
                break;
            }
            R c = v.terms().begin()->second;
            FockVector<R> t = it->second;
            t.scale(c);
            v -= t;
        }
        // clean any remaining pivot hits past the leading term
        bool changed = true;
        while (changed && !v.is_zero()) {
            changed = false;
            for (const auto& [id, c] : v.terms()) {
                auto it = rows_.find(id);
                if (it != rows_.end()) {
                    FockVector<R> t = it->second;
                    t.scale(c);
                    v -= t;
                    changed = true;
                    break;
                }
            }
        }
    }

    bool contains(const FockVector<R>& v) const {
        FockVector<R> copy = v;
        reduce(copy);
        return copy.is_zero();
    }

    size_t rank() const { return rows_.size(); }

private:
    static Rational inverse(const Rational& x) { return Rational(1) / x; }
    static Fp inverse(const Fp& x) { return x.inv(); }

    std::map<MonoId, FockVector<R>> rows_;
};

// ---------------------------------------------------------------------------
// Expressing vectors in a given (independent) basis of FockVectors.

// Coefficients x with v = sum x_i basis_i, or nullopt if v is outside the
// span.  Exact; basis need not be orthogonal.
template <class R>
std::optional<std::vector<R>> express_in_basis(const FockVector<R>& v,
                                               const std::vector<FockVector<R>>& basis, R zero) {
    std::map<MonoId, size_t> index;
    auto note = [&](const FockVector<R>& w) {
        for (const auto& [id, c] : w.terms())
            if (!index.count(id)) {
                size_t k = index.size();
                index[id] = k;
            }
    };
    for (const auto& b : basis) note(b);
    note(v);
    Matrix<R> A(index.size(), basis.size(), zero);
    std::vector<R> rhs(index.size(), zero);
    for (size_t j = 0; j < basis.size(); ++j)
        for (const auto& [id, c] : basis[j].terms()) A.at(index[id], j) = c;
    for (const auto& [id, c] : v.terms()) rhs[index[id]] = c;
    auto x = A.solve(rhs);
    if (!x) return std::nullopt;
    // verify (guards the underdetermined case)
    FockVector<R> check(v.sector());
    for (size_t j = 0; j < basis.size(); ++j) {
        FockVector<R> t = basis[j];
        t.scale((*x)[j]);
        check += t;
    }
    if (!(check == v)) return std::nullopt;
    return x;
}

} // namespace fvoa
