#include "raviolo/linalg.hpp"

#include <algorithm>

namespace rav::la {

namespace {

template <class F> bool fzero(const F& x) { return x == F(0); }
bool fzero(const Rat& x) { return x.is_zero(); }

// Row-reduce in place; returns pivot columns.  Rows end in reduced echelon
// form with unit pivots, zero rows at the bottom.
template <class F> std::vector<int> rref(std::vector<std::vector<F>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && fzero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        F inv = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || fzero(m[i][c])) continue;
            F f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

template <class F> std::vector<std::vector<F>> kernel_of(std::vector<std::vector<F>> m, std::size_t cols) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t freec = 0; freec < cols; ++freec) {
        if (is_piv[freec]) continue;
        std::vector<F> v(cols, F(0));
        v[freec] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F(0) - m[r][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F> std::optional<std::vector<F>> solve_of(std::vector<std::vector<F>> m, const std::vector<F>& b) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    std::vector<int> piv = rref(m);
    if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt; // pivot in the rhs column
    std::vector<F> x(cols, F(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = m[r][cols];
    return x;
}

Mat to_rat(const std::vector<std::vector<BigRat>>& m) {
    Mat out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (const auto& x : m[i]) out[i].push_back(Rat::from_big(x));
    }
    return out;
}

std::vector<std::vector<BigRat>> to_big(const Mat& m) {
    std::vector<std::vector<BigRat>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (const auto& x : m[i]) out[i].push_back(x.to_big());
    }
    return out;
}

std::size_t col_count(const Mat& a) { return a.empty() ? 0 : a[0].size(); }

} // namespace

int rank(const Mat& a) {
    try {
        Mat m = a;
        return static_cast<int>(rref(m).size());
    } catch (const overflow_error&) {
        auto m = to_big(a);
        return static_cast<int>(rref(m).size());
    }
}

std::vector<Vec> kernel_basis(const Mat& a) {
    std::size_t cols = col_count(a);
    if (cols == 0) return {};
    try {
        return kernel_of(a, cols);
    } catch (const overflow_error&) {
        return to_rat(kernel_of(to_big(a), cols));
    }
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    try {
        return solve_of(a, b);
    } catch (const overflow_error&) {
        std::vector<BigRat> bb;
        bb.reserve(b.size());
        for (const auto& x : b) bb.push_back(x.to_big());
        auto x = solve_of(to_big(a), bb);
        if (!x) return std::nullopt;
        Vec out;
        out.reserve(x->size());
        for (const auto& v : *x) out.push_back(Rat::from_big(v));
        return out;
    }
}

std::vector<Vec> row_space_basis(const Mat& a) {
    auto strip = [](auto m, std::size_t npiv) {
        m.resize(npiv);
        return m;
    };
    try {
        Mat m = a;
        auto piv = rref(m);
        return strip(std::move(m), piv.size());
    } catch (const overflow_error&) {
        auto m = to_big(a);
        auto piv = rref(m);
        m.resize(piv.size());
        return to_rat(m);
    }
}

bool in_span(const std::vector<Vec>& rows, const Vec& v) {
    Mat m = rows;
    int base = rank(m);
    m.push_back(v);
    return rank(m) == base;
}

std::vector<std::size_t> complement_in(const std::vector<Vec>& rows, const std::vector<Vec>& candidates) {
    std::vector<std::size_t> chosen;
    Mat m = rows;
    int r = rank(m);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        m.push_back(candidates[i]);
        int r2 = rank(m);
        if (r2 > r) {
            chosen.push_back(i);
            r = r2;
        } else {
            m.pop_back();
        }
    }
    return chosen;
}

} // namespace rav::la
