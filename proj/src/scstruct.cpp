#include "raviolo/scstruct.hpp"

#include "raviolo/linalg.hpp"

#include <array>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

namespace rav::sc {
namespace {

Rat inv_factorial(int l) {
    return Rat(1, falling(l, l));
}

ff::FockState state_of(const ff::Monomial& m) { return {{m, Rat(1)}}; }

std::map<int, ff::FockState> singular_map(const ff::OpeResult& r) {
    std::map<int, ff::FockState> out;
    for (const auto& [m, st] : r.singular)
        if (!ff::is_zero(st)) out[m] = st;
    return out;
}

// Requires a designated field to be homogeneous of the stated gradings;
// throws before any OPE is computed otherwise.
void require_gradings(const ff::FreeAlgebra& A, const std::string& name,
                      const ff::FockState& v, bool odd, const Rat& r, const Rat& spin,
                      const Rat& s) {
    auto fail = [&](const std::string& what) {
        throw math_error("superconformal structure: " + name + " " + what);
    };
    if (ff::is_zero(v)) fail("is zero");
    const auto po = A.odd(v);
    const auto ro = A.r_charge(v);
    const auto jo = A.spin(v);
    const auto so = A.s_charge(v);
    if (!po || !ro || !jo || !so) fail("is not grading-homogeneous: " + A.str(v));
    if (*po != odd) fail(std::string("must be ") + (odd ? "odd" : "even"));
    if (*ro != r) fail("must have R-charge " + r.str() + ", got " + ro->str());
    if (*jo != spin) fail("must have spin " + spin.str() + ", got " + jo->str());
    if (*so != s) fail("must have S-charge " + s.str() + ", got " + so->str());
}

// The skew transform of a singular part: given the levels of a(z)b, the
// expected levels of b(z)a are
//   b_(m) a = (-1)^{|a||b|} sum_l ((-1)^{m+l} / l!) d^l (a_(m+l) b).
std::map<int, ff::FockState> skew_singular(const ff::FreeAlgebra& A,
                                           const std::map<int, ff::FockState>& fwd,
                                           bool odd_a, bool odd_b) {
    std::map<int, ff::FockState> out;
    const int top = fwd.empty() ? -1 : fwd.rbegin()->first;
    for (int m = 0; m <= top; ++m) {
        ff::FockState acc;
        for (int l = 0; m + l <= top; ++l) {
            const auto it = fwd.find(m + l);
            if (it == fwd.end()) continue;
            Rat c = inv_factorial(l);
            if ((m + l) % 2 != 0) c = -c;
            acc = ff::add(std::move(acc), ff::scale(A.derivative(it->second, l), c));
        }
        if (odd_a && odd_b) acc = ff::scale(std::move(acc), Rat(-1));
        if (!ff::is_zero(acc)) out[m] = std::move(acc);
    }
    return out;
}

void compare_singular(const ff::FreeAlgebra& A, Report& rep, const std::string& a,
                      const std::string& b, const std::map<int, ff::FockState>& expected,
                      const std::map<int, ff::FockState>& got) {
    int top = expected.empty() ? -1 : expected.rbegin()->first;
    if (!got.empty()) top = std::max(top, got.rbegin()->first);
    for (int m = top; m >= 0; --m) {
        const auto ie = expected.find(m);
        const auto ig = got.find(m);
        const ff::FockState& e = ie == expected.end() ? ff::FockState{} : ie->second;
        const ff::FockState& g = ig == got.end() ? ff::FockState{} : ig->second;
        if (ff::is_zero(ff::sub(g, e))) continue;
        std::ostringstream os;
        os << a << " " << b << " OPE at Omega^" << m << ": expected " << A.str(e)
           << ", got " << A.str(g);
        rep.failures.push_back(os.str());
    }
}

const ff::FreeAlgebra& algebra_of(const SCStructure& sc) {
    if (sc.alg == nullptr) throw math_error("superconformal structure has no algebra");
    return *sc.alg;
}

// Monomial-coordinate assembly for the slice-wise linear algebra: rows are
// indexed by (block, target monomial) pairs, columns by slice basis states.
class BlockMatrix {
public:
    explicit BlockMatrix(std::size_t cols) : cols_(cols) {}

    void add_image(int block, std::size_t col, const ff::FockState& image) {
        for (const auto& [mon, c] : image) {
            if (c.is_zero()) continue;
            entry(row_of(block, mon), col) = c;
        }
    }

    // Right-hand side supported on one block (zero elsewhere).
    la::Vec rhs_on_block(int block, const ff::FockState& v) {
        for (const auto& [mon, c] : v)
            if (!c.is_zero()) row_of(block, mon); // force the row to exist
        la::Vec b(rows_.size(), Rat(0));
        for (const auto& [mon, c] : v)
            if (!c.is_zero()) b[static_cast<std::size_t>(row_of(block, mon))] = c;
        return b;
    }

    la::Mat matrix() const {
        la::Mat m(rows_.size(), la::Vec(cols_, Rat(0)));
        for (const auto& [rc, v] : entries_) m[rc.first][rc.second] = v;
        return m;
    }

    bool empty() const { return rows_.empty(); }

private:
    std::size_t row_of(int block, const ff::Monomial& mon) {
        const auto key = std::make_pair(block, mon);
        const auto it = rows_.find(key);
        if (it != rows_.end()) return it->second;
        const std::size_t id = rows_.size();
        rows_.emplace(key, id);
        return id;
    }

    Rat& entry(std::size_t row, std::size_t col) { return entries_[{row, col}]; }

    std::size_t cols_;
    std::map<std::pair<int, ff::Monomial>, std::size_t> rows_;
    std::map<std::pair<std::size_t, std::size_t>, Rat> entries_;
};

} // namespace

SCStructure structure_of(const ff::FreeTheory& th, const Scalar& xi) {
    return {&th.alg, th.gamma, th.sigma, th.q_plus, th.q_minus, xi};
}

Report verify_sc(const SCStructure& sc, const Rat& spin_cutoff) {
    const ff::FreeAlgebra& A = algebra_of(sc);
    if (!sc.xi.is_pure_rational())
        throw math_error("superconformal structure: central value must be rational, got " +
                         sc.xi.str());
    const Rat xi = sc.xi.rat;

    if (sc.s_sign != Rat(1) && sc.s_sign != Rat(-1))
        throw math_error("superconformal structure: S-orientation must be +-1, got " +
                         sc.s_sign.str());
    require_gradings(A, "Gamma", sc.gamma, true, Rat(1), Rat(2), Rat(0));
    require_gradings(A, "sigma", sc.sigma, true, Rat(1), Rat(1), Rat(0));
    require_gradings(A, "Q^+", sc.q_plus, false, Rat(1), Rat(3, 2), sc.s_sign);
    require_gradings(A, "Q^-", sc.q_minus, false, Rat(1), Rat(3, 2), -sc.s_sign);

    const std::array<const ff::FockState*, 4> field = {&sc.gamma, &sc.sigma, &sc.q_plus,
                                                       &sc.q_minus};
    const std::array<std::string, 4> name = {"Gamma", "sigma", "Q^+", "Q^-"};
    const std::array<bool, 4> odd = {true, true, false, false};

    // The seven singular families of the N=2 multiplet, stored for the
    // ordered pairs (i, j) with i <= j; the reversed pairs are compared
    // against the skew transform of these.
    auto put = [](std::map<int, ff::FockState>& m, int level, ff::FockState v) {
        if (!ff::is_zero(v)) m.emplace(level, std::move(v));
    };
    std::map<std::pair<int, int>, std::map<int, ff::FockState>> fwd;
    {
        std::map<int, ff::FockState> e;
        put(e, 3, ff::scale(ff::FreeAlgebra::vacuum(), xi / Rat(2)));
        put(e, 1, ff::scale(sc.gamma, Rat(2)));
        put(e, 0, A.derivative(sc.gamma));
        fwd[{0, 0}] = std::move(e);
    }
    {
        std::map<int, ff::FockState> e;
        put(e, 1, sc.sigma);
        put(e, 0, A.derivative(sc.sigma));
        fwd[{0, 1}] = std::move(e);
    }
    for (int j : {2, 3}) {
        std::map<int, ff::FockState> e;
        put(e, 1, ff::scale(*field[static_cast<std::size_t>(j)], Rat(3, 2)));
        put(e, 0, A.derivative(*field[static_cast<std::size_t>(j)]));
        fwd[{0, j}] = std::move(e);
    }
    {
        std::map<int, ff::FockState> e;
        put(e, 1, ff::scale(ff::FreeAlgebra::vacuum(), xi / Rat(3)));
        fwd[{1, 1}] = std::move(e);
    }
    {
        std::map<int, ff::FockState> e;
        put(e, 0, sc.q_plus);
        fwd[{1, 2}] = std::move(e);
    }
    {
        std::map<int, ff::FockState> e;
        put(e, 0, ff::scale(sc.q_minus, Rat(-1)));
        fwd[{1, 3}] = std::move(e);
    }
    fwd[{2, 2}] = {};
    fwd[{3, 3}] = {};
    {
        std::map<int, ff::FockState> e;
        put(e, 2, ff::scale(ff::FreeAlgebra::vacuum(), -xi / Rat(3)));
        put(e, 1, ff::scale(sc.sigma, Rat(-1)));
        put(e, 0, ff::add(ff::scale(sc.gamma, Rat(-1)),
                          ff::scale(A.derivative(sc.sigma), Rat(-1, 2))));
        fwd[{2, 3}] = std::move(e);
    }

    Report rep;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const auto si = static_cast<std::size_t>(i);
            const auto sj = static_cast<std::size_t>(j);
            const std::map<int, ff::FockState> expected =
                i <= j ? fwd.at({i, j})
                       : skew_singular(A, fwd.at({j, i}), odd[sj], odd[si]);
            const auto got = singular_map(A.ope(*field[si], *field[sj], 0));
            compare_singular(A, rep, name[si], name[sj], expected, got);
        }
    }

    // On every basis state of the window, Gamma_(0) must translate,
    // Gamma_(1) must read off the spin and sigma_(0) the S-charge.
    ff::GradingWindow w;
    w.spin_max = spin_cutoff;
    for (const auto& mon : A.enumerate_basis(w)) {
        const ff::FockState v = state_of(mon);
        if (const auto diff = ff::sub(A.apply_mode(sc.gamma, 0, v), A.derivative(v));
            !ff::is_zero(diff))
            rep.failures.push_back("Gamma_(0) does not translate " + A.str(mon) +
                                   ": off by " + A.str(diff));
        if (const auto diff =
                ff::sub(A.apply_mode(sc.gamma, 1, v), ff::scale(v, A.spin(mon)));
            !ff::is_zero(diff))
            rep.failures.push_back("Gamma_(1) does not read the spin of " + A.str(mon) +
                                   ": off by " + A.str(diff));
        if (const auto diff = ff::sub(A.apply_mode(sc.sigma, 0, v),
                                      ff::scale(v, sc.s_sign * A.s_charge(mon)));
            !ff::is_zero(diff))
            rep.failures.push_back("sigma_(0) does not read the S-charge of " +
                                   A.str(mon) + ": off by " + A.str(diff));
    }
    return rep;
}

BpsReport bps_scan(const SCStructure& sc, const ff::GradingWindow& window) {
    const ff::FreeAlgebra& A = algebra_of(sc);
    BpsReport rep;
    for (const auto& mon : A.enumerate_basis(window)) {
        const Rat j = A.spin(mon);
        const Rat q = A.s_charge(mon);
        const Rat bound = (q.is_negative() ? -q : q) / Rat(2);
        if (j < bound)
            rep.violations.push_back(A.str(mon) + ": spin " + j.str() +
                                     " is below |S|/2 = " + bound.str());
        else if (j == bound)
            rep.saturators.push_back(mon);
    }
    return rep;
}

std::vector<PrimaryRecord> classify_primaries(const SCStructure& sc, Branch branch,
                                              const ff::GradingWindow& window) {
    const ff::FreeAlgebra& A = algebra_of(sc);
    const BpsReport bps = bps_scan(sc, window);
    if (!bps.ok())
        throw math_error("primary classification: the window violates the spin bound: " +
                         bps.violations.front());

    // Group the bound-saturating states on the branch side into exact
    // (R, spin, S) slices; each slice is a finite-dimensional joint-kernel
    // problem.
    std::map<std::tuple<Rat, Rat, Rat>, std::vector<ff::Monomial>> slices;
    for (const auto& mon : bps.saturators) {
        const Rat q = sc.s_sign * A.s_charge(mon);
        const bool on_side = branch == Branch::higgs ? !q.is_negative() : !(-q).is_negative();
        if (!on_side) continue;
        slices[{A.r_charge(mon), A.spin(mon), q}].push_back(mon);
    }

    const ff::FockState& mode0 = branch == Branch::higgs ? sc.q_plus : sc.q_minus;
    const ff::FockState& mode1 = branch == Branch::higgs ? sc.q_minus : sc.q_plus;
    const ff::FockState& partner_charge = branch == Branch::higgs ? sc.q_minus : sc.q_plus;

    std::vector<PrimaryRecord> out;
    for (const auto& [key, mons] : slices) {
        const Rat& r = std::get<0>(key);
        const Rat& j = std::get<1>(key);
        const Rat& q = std::get<2>(key);

        BlockMatrix eqs(mons.size());
        for (std::size_t i = 0; i < mons.size(); ++i) {
            const ff::FockState v = state_of(mons[i]);
            eqs.add_image(0, i, A.apply_mode(mode0, 0, v));
            eqs.add_image(1, i, A.apply_mode(mode1, 1, v));
        }
        std::vector<la::Vec> kernel;
        if (eqs.empty()) {
            kernel.assign(mons.size(), la::Vec(mons.size(), Rat(0)));
            for (std::size_t i = 0; i < mons.size(); ++i) kernel[i][i] = Rat(1);
        } else {
            kernel = la::kernel_basis(eqs.matrix());
        }

        // Images of the branch differential from the adjacent slice, in
        // slice coordinates.  A monomial's gradings alone decide slice
        // membership, so the image lands squarely inside the slice.
        std::map<ff::Monomial, std::size_t> index;
        for (std::size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], i);
        std::vector<la::Vec> exact;
        const Rat pre_spin = j - Rat(1, 2);
        if (!pre_spin.is_negative()) {
            const Rat pre_q = branch == Branch::higgs ? q - Rat(1) : q + Rat(1);
            ff::GradingWindow pre;
            pre.spin_max = pre_spin;
            for (const auto& mon : A.enumerate_basis(pre)) {
                if (A.r_charge(mon) != r || A.spin(mon) != pre_spin ||
                    sc.s_sign * A.s_charge(mon) != pre_q)
                    continue;
                const ff::FockState im = A.apply_mode(mode0, 0, state_of(mon));
                if (ff::is_zero(im)) continue;
                la::Vec coords(mons.size(), Rat(0));
                for (const auto& [target, c] : im) coords[index.at(target)] = c;
                exact.push_back(std::move(coords));
            }
        }

        for (const auto& x : kernel) {
            if (!exact.empty() && la::in_span(exact, x)) continue;
            ff::FockState state;
            for (std::size_t i = 0; i < mons.size(); ++i)
                ff::add_term(state, mons[i], x[i]);
            PrimaryRecord rec;
            rec.state = state;
            rec.branch = branch;
            rec.partner = A.apply_mode(partner_charge, 0, state);
            rec.r = r;
            rec.j = j;
            rec.q = q;
            out.push_back(std::move(rec));
            exact.push_back(x);
        }
    }
    return out;
}

Report detect_flavor_symmetry(const SCStructure& sc,
                              const std::vector<ff::FockState>& currents,
                              const StructureConstants& f,
                              std::vector<ff::FockState>* moments) {
    const ff::FreeAlgebra& A = algebra_of(sc);
    const std::size_t n = currents.size();
    if (f.size() != n)
        throw math_error("flavor detection: structure constants have wrong shape");
    for (const auto& fa : f) {
        if (fa.size() != n)
            throw math_error("flavor detection: structure constants have wrong shape");
        for (const auto& fab : fa)
            if (fab.size() != n)
                throw math_error("flavor detection: structure constants have wrong shape");
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (ff::is_zero(currents[a])) continue; // the zero current passes degenerately
        require_gradings(A, "current " + std::to_string(a), currents[a], true, Rat(1),
                         Rat(1), Rat(0));
    }
    const Rat m_charge = sc.s_sign; // algebra S-charge of a moment operator

    Report rep;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto got = singular_map(A.ope(currents[a], currents[b], 0));
            ff::FockState bracket;
            for (std::size_t c = 0; c < n; ++c)
                bracket = ff::add(std::move(bracket), ff::scale(currents[c], f[a][b][c]));
            for (const auto& [m, st] : got) {
                if (m == 0) continue;
                if (m == 1) {
                    // A level term must be central; a flavor symmetry needs it
                    // to vanish outright.
                    ff::FockState central = st;
                    const auto vac = central.find(ff::Monomial{});
                    const Rat k = vac == central.end() ? Rat(0) : vac->second;
                    if (vac != central.end()) central.erase(vac);
                    if (!ff::is_zero(central))
                        rep.failures.push_back("currents " + std::to_string(a) + ", " +
                                               std::to_string(b) +
                                               ": Omega^1 term is not central: " +
                                               A.str(st));
                    else
                        rep.failures.push_back("currents " + std::to_string(a) + ", " +
                                               std::to_string(b) +
                                               ": the level must vanish, got " + k.str());
                    continue;
                }
                rep.failures.push_back("currents " + std::to_string(a) + ", " +
                                       std::to_string(b) + ": unexpected Omega^" +
                                       std::to_string(m) + " term " + A.str(st));
            }
            const auto it0 = got.find(0);
            const ff::FockState got0 = it0 == got.end() ? ff::FockState{} : it0->second;
            if (!ff::is_zero(ff::sub(got0, bracket)))
                rep.failures.push_back("currents " + std::to_string(a) + ", " +
                                       std::to_string(b) +
                                       ": bracket does not match the structure "
                                       "constants: expected " +
                                       A.str(bracket) + ", got " + A.str(got0));
        }
    }

    // Each current must descend from a moment operator M_a: a state of
    // R-charge 1, spin 1/2, S-charge 1 with Q^+ M_a regular and
    // Q^- M_a ~ Omega^0 mu_a.
    ff::GradingWindow w;
    w.spin_max = Rat(1, 2);
    std::vector<ff::Monomial> slice;
    for (const auto& mon : A.enumerate_basis(w))
        if (A.r_charge(mon) == Rat(1) && A.spin(mon) == Rat(1, 2) &&
            A.s_charge(mon) == m_charge)
            slice.push_back(mon);

    std::vector<ff::FockState> found(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (ff::is_zero(currents[a])) continue;
        BlockMatrix eqs(slice.size());
        for (std::size_t i = 0; i < slice.size(); ++i) {
            const ff::FockState v = state_of(slice[i]);
            eqs.add_image(0, i, A.apply_mode(sc.q_minus, 0, v));
            eqs.add_image(1, i, A.apply_mode(sc.q_minus, 1, v));
            eqs.add_image(2, i, A.apply_mode(sc.q_plus, 0, v));
            eqs.add_image(3, i, A.apply_mode(sc.q_plus, 1, v));
        }
        const la::Vec rhs = eqs.rhs_on_block(0, currents[a]);
        const auto sol = la::solve(eqs.matrix(), rhs);
        if (!sol) {
            rep.failures.push_back("current " + std::to_string(a) +
                                   " has no moment operator with Q^- M ~ Omega^0 mu "
                                   "and Q^+ M regular");
            continue;
        }
        for (std::size_t i = 0; i < slice.size(); ++i)
            ff::add_term(found[a], slice[i], (*sol)[i]);
    }
    if (moments != nullptr) *moments = std::move(found);
    return rep;
}

SCStructure mirror(const SCStructure& sc) {
    return {sc.alg,     sc.gamma, ff::scale(sc.sigma, Rat(-1)),
            sc.q_minus, sc.q_plus, sc.xi,
            -sc.s_sign};
}

} // namespace rav::sc
