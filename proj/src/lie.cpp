#include "raviolo/lie.hpp"

#include <utility>

namespace rav::lie {

Mat zeros(int rows, int cols) {
    return Mat(rows, la::Vec(cols, Rat()));
}

Mat identity(int n) {
    Mat m = zeros(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

Mat add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

Mat sub(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
    return r;
}

Mat scale(const Rat& c, const Mat& a) {
    Mat r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat r = zeros(static_cast<int>(n), static_cast<int>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

Mat transpose(const Mat& a) {
    const std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    Mat r = zeros(static_cast<int>(m), static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

Mat commutator(const Mat& a, const Mat& b) {
    return sub(mul(a, b), mul(b, a));
}

Rat trace(const Mat& a) {
    Rat t;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

bool is_zero(const Mat& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Mat traceless(const Mat& a) {
    const int n = static_cast<int>(a.size());
    Rat t = trace(a);
    if (t.is_zero()) return a;
    return sub(a, scale(t / Rat(n), identity(n)));
}

Rat eps2(int a, int b) {
    if (a == 0 && b == 1) return Rat(1);
    if (a == 1 && b == 0) return Rat(-1);
    return Rat();
}

Rat eps4(int i, int j, int k, int l) {
    int idx[4] = {i, j, k, l};
    // Sign of the permutation (0 if any index repeats).
    int sign = 1;
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) {
            if (idx[x] == idx[y]) return Rat();
            if (idx[x] > idx[y]) sign = -sign;
        }
    return Rat(sign);
}

Mat star(const Mat& a) {
    Mat r = zeros(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat s;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    Rat e = eps4(i, j, k, l);
                    if (!e.is_zero()) s += e * a[k][l];
                }
            r[i][j] = s / Rat(2);
        }
    return r;
}

namespace {

Mat unit(int n, int i, int j) {
    Mat m = zeros(n, n);
    m[i][j] = Rat(1);
    return m;
}

} // namespace

const NamedBasis& sl2_basis() {
    static const NamedBasis b = [] {
        NamedBasis nb;
        nb.names = {"e", "h", "f"};
        nb.mats = {unit(2, 0, 1), sub(unit(2, 0, 0), unit(2, 1, 1)), unit(2, 1, 0)};
        return nb;
    }();
    return b;
}

const NamedBasis& sl4_basis() {
    static const NamedBasis b = [] {
        NamedBasis nb;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                nb.names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
                nb.mats.push_back(unit(4, i, j));
            }
        for (int k = 0; k < 3; ++k) {
            nb.names.push_back("H" + std::to_string(k + 1));
            nb.mats.push_back(sub(unit(4, k, k), unit(4, k + 1, k + 1)));
        }
        return nb;
    }();
    return b;
}

const NamedBasis& skew4_basis() {
    static const NamedBasis b = [] {
        NamedBasis nb;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                nb.names.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1));
                nb.mats.push_back(sub(unit(4, i, j), unit(4, j, i)));
            }
        return nb;
    }();
    return b;
}

const NamedBasis& sym4_basis() {
    static const NamedBasis b = [] {
        NamedBasis nb;
        for (int i = 0; i < 4; ++i) {
            nb.names.push_back("D" + std::to_string(i + 1));
            nb.mats.push_back(unit(4, i, i));
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                nb.names.push_back("G" + std::to_string(i + 1) + std::to_string(j + 1));
                nb.mats.push_back(add(unit(4, i, j), unit(4, j, i)));
            }
        return nb;
    }();
    return b;
}

std::vector<Rat> coords_in(const NamedBasis& basis, const Mat& a) {
    const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    // Flatten: one linear equation per matrix entry.
    la::Mat sys(rows * cols, la::Vec(basis.mats.size(), Rat()));
    la::Vec rhs(rows * cols, Rat());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t eq = i * cols + j;
            for (int k = 0; k < basis.size(); ++k) sys[eq][static_cast<std::size_t>(k)] = basis.mats[static_cast<std::size_t>(k)][i][j];
            rhs[eq] = a[i][j];
        }
    auto sol = la::solve(sys, rhs);
    if (!sol) throw math_error("matrix is not in the span of the given basis");
    return *sol;
}

Rat n4_pairing(const Mat& l1, const Mat& l2) {
    Rat s;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int d1 = 0; d1 < 2; ++d1)
                for (int d2 = 0; d2 < 2; ++d2) {
                    Rat e = eps2(a1, a2) * eps2(d1, d2);
                    if (!e.is_zero()) s += e * l1[a1][d1] * l2[a2][d2];
                }
    return s;
}

Mat n4_bracket_plus(const Mat& l1, const Mat& l2) {
    // [l1,l2]_+ ^alpha_beta
    //   = eps_{ad1 ad2} (delta^alpha_{a1} eps_{a2 beta} + delta^alpha_{a2} eps_{a1 beta})
    //     l1^{a1 ad1} l2^{a2 ad2}
    Mat r = zeros(2, 2);
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            Rat s;
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int d1 = 0; d1 < 2; ++d1)
                        for (int d2 = 0; d2 < 2; ++d2) {
                            Rat e = eps2(d1, d2);
                            if (e.is_zero()) continue;
                            Rat w;
                            if (al == a1) w += eps2(a2, be);
                            if (al == a2) w += eps2(a1, be);
                            if (w.is_zero()) continue;
                            s += e * w * l1[a1][d1] * l2[a2][d2];
                        }
            r[al][be] = s;
        }
    return r;
}

Mat n4_bracket_minus(const Mat& l1, const Mat& l2) {
    // Same with dotted and undotted roles exchanged: acts on the second slot.
    Mat r = zeros(2, 2);
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            Rat s;
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int d1 = 0; d1 < 2; ++d1)
                        for (int d2 = 0; d2 < 2; ++d2) {
                            Rat e = eps2(a1, a2);
                            if (e.is_zero()) continue;
                            Rat w;
                            if (al == d1) w += eps2(d2, be);
                            if (al == d2) w += eps2(d1, be);
                            if (w.is_zero()) continue;
                            s += e * w * l1[a1][d1] * l2[a2][d2];
                        }
            r[al][be] = s;
        }
    return r;
}

Mat n4_act_plus(const Mat& A, const Mat& lambda) {
    return mul(A, lambda);
}

Mat n4_act_minus(const Mat& A, const Mat& lambda) {
    return mul(lambda, transpose(A));
}

const NamedBasis& n4_lambda_basis() {
    static const NamedBasis b = [] {
        NamedBasis nb;
        for (int a = 0; a < 2; ++a)
            for (int d = 0; d < 2; ++d) {
                nb.names.push_back("l" + std::to_string(a + 1) + std::to_string(d + 1));
                Mat m = zeros(2, 2);
                m[a][d] = Rat(1);
                nb.mats.push_back(m);
            }
        return nb;
    }();
    return b;
}

} // namespace rav::lie
