#pragma once

#include <optional>
#include <vector>

#include "spets/reflection.hpp"

namespace spets::detail {

using Rows = std::vector<Vec>;

inline Rows rows_of(const CMatrix& m) {
    Rows r(m.dim(), Vec(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = m(i, j);
    return r;
}

inline CMatrix from_rows(const Rows& r) {
    CMatrix m(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) m(i, j) = r[i][j];
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Rows& a, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Cyclo inv = a[row][c].inverse();
        for (auto& x : a[row]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c].is_zero()) continue;
            Cyclo f = a[i][c];
            for (std::size_t j = 0; j < a[row].size(); ++j)
                if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

inline std::size_t rank(Rows a) {
    if (a.empty()) return 0;
    return rref(a, a[0].size()).size();
}

inline Cyclo determinant(Rows a) {
    const std::size_t n = a.size();
    Cyclo d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return Cyclo(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        Cyclo inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            Cyclo f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

inline std::optional<Rows> inverse(const Rows& m) {
    const std::size_t n = m.size();
    Rows a(n, Vec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = Cyclo(1);
    }
    auto piv = rref(a, n);
    if (piv.size() != n) return std::nullopt;
    Rows r(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][n + j];
    return r;
}

// Basis of {v : a v = 0}.
inline std::vector<Vec> nullspace(Rows a, std::size_t cols) {
    auto piv = rref(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(cols);
        v[f] = Cyclo(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

// Indices of a maximal independent set of rows (greedy).
inline std::vector<std::size_t> independent_rows(const Rows& a) {
    std::vector<std::size_t> sel;
    Rows cur;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cur.push_back(a[i]);
        if (rank(cur) == cur.size())
            sel.push_back(i);
        else
            cur.pop_back();
    }
    return sel;
}

inline Vec normalize(Vec v) {
    for (const auto& x : v)
        if (!x.is_zero()) {
            Cyclo inv = x.inverse();
            for (auto& y : v) y *= inv;
            break;
        }
    return v;
}

inline Cyclo dot(const Vec& a, const Vec& b) {
    Cyclo s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

inline Vec apply(const CMatrix& m, const Vec& v) {
    Vec r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) r[i] += m(i, j) * v[j];
    return r;
}

inline Vec mat_vec(const Rows& m, const Vec& v) {
    Vec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

}  // namespace spets::detail
