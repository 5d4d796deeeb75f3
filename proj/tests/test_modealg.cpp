#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raviolo/lie.hpp"
#include "raviolo/modealg.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

using rav::Rat;
using namespace rav::ma;

namespace {

struct Term {
    std::string g;
    int i;
    Rat c;
};

Combo mk(const ModeAlgebra& A, const std::vector<Term>& ts) {
    Combo out;
    for (const auto& t : ts) {
        if (t.c.is_zero()) continue;
        REQUIRE(t.i >= 0);
        ModeKey k{A.find(t.g), t.i};
        out[k] += t.c;
        if (out[k].is_zero()) out.erase(k);
    }
    return out;
}

const Combo& br(const ModeAlgebra& A, const std::string& a, int m,
                const std::string& b, int n) {
    return A.bracket({A.find(a), m}, {A.find(b), n});
}

void expect(const ModeAlgebra& A, const Combo& got, const std::vector<Term>& want) {
    Combo w = mk(A, want);
    INFO("got " << A.combo_str(got) << ", want " << A.combo_str(w));
    CHECK(got == w);
}

void check_closure(const ModeAlgebra& A,
                   const std::vector<std::pair<std::string, int>>& gens) {
    std::vector<ModeKey> mset;
    for (const auto& [g, i] : gens) mset.push_back({A.find(g), i});
    std::set<ModeKey> allowed(mset.begin(), mset.end());
    for (const auto& x : mset)
        for (const auto& y : mset) {
            const Combo& c = A.bracket(x, y);
            for (const auto& [k, v] : c) {
                INFO("[" << A.mode_str(x) << ", " << A.mode_str(y)
                         << "] contains " << A.mode_str(k));
                CHECK(allowed.count(k) == 1);
            }
        }
}

} // namespace

TEST_CASE("index polynomials evaluate correctly") {
    PolyMN b3 = PolyMN::binom_m(3);
    CHECK(b3.eval(5, 0) == Rat(10));
    CHECK(b3.eval(3, 0) == Rat(1));
    CHECK(b3.eval(2, 0) == Rat(0));
    CHECK(b3.eval(0, 0) == Rat(0));
    PolyMN f = PolyMN::falling_of(Rat(1), Rat(1), Rat(0), 2); // (m+n)(m+n-1)
    CHECK(f.eval(2, 1) == Rat(6));
    CHECK(f.eval(1, 0) == Rat(0));
    PolyMN prod = PolyMN::linear(Rat(1), Rat(0), Rat(0)) *
                  PolyMN::linear(Rat(0), Rat(1), Rat(0));
    CHECK(prod.eval(3, 4) == Rat(12));
    CHECK((b3 + b3).eval(5, 0) == Rat(20));
    CHECK(PolyMN().is_zero());
}

TEST_CASE("individual bracket values") {
    ModeAlgebra V = make_raviolo_virasoro();
    expect(V, br(V, "G", 2, "G", 1), {{"G", 2, Rat(1)}});
    expect(V, br(V, "G", 3, "Gamma", 0), {{"xi", 0, Rat(1, 2)}});
    expect(V, br(V, "G", 2, "Gamma", 0), {});

    ModeAlgebra A = make_svir_n2();
    expect(A, br(A, "theta^+", 1, "theta^-", 0),
           {{"G", 1, Rat(1)}, {"S", 0, Rat(1, 2)}});
}

TEST_CASE("N=2 mode brackets match the superconformal relations") {
    ModeAlgebra A = make_svir_n2();
    const Rat h(1, 2);
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) {
            CAPTURE(m);
            CAPTURE(n);

            expect(A, br(A, "G", m, "G", n), {{"G", m + n - 1, Rat(m - n)}});
            {
                std::vector<Term> w;
                if (n + 3 == m)
                    w.push_back({"xi", 0, Rat(m) * Rat(m - 1) * Rat(m - 2) / Rat(12)});
                if (n + 1 >= m) w.push_back({"Gamma", n - m + 1, Rat(m + n + 1)});
                expect(A, br(A, "G", m, "Gamma", n), w);
            }
            expect(A, br(A, "G", m, "S", n), {{"S", m + n - 1, Rat(-n)}});
            {
                std::vector<Term> w;
                if (n + 1 >= m) w.push_back({"sigma", n - m + 1, Rat(n + 1)});
                expect(A, br(A, "G", m, "sigma", n), w);
            }

            expect(A, br(A, "Gamma", m, "Gamma", n), {});
            expect(A, br(A, "Gamma", m, "sigma", n), {});
            {
                std::vector<Term> w;
                if (n <= m + 1) w.push_back({"sigma", m - n + 1, Rat(-n)});
                expect(A, br(A, "Gamma", m, "S", n), w);
            }

            expect(A, br(A, "S", m, "S", n), {});
            expect(A, br(A, "sigma", m, "sigma", n), {});
            {
                std::vector<Term> w;
                if (n + 1 == m) w.push_back({"xi", 0, Rat(m) / Rat(3)});
                expect(A, br(A, "S", m, "sigma", n), w);
            }

            for (int s : {+1, -1}) {
                const std::string th = s > 0 ? "theta^+" : "theta^-";
                const std::string oth = s > 0 ? "theta^-" : "theta^+";
                const std::string q = s > 0 ? "Q^+" : "Q^-";
                const std::string oq = s > 0 ? "Q^-" : "Q^+";
                CAPTURE(s);

                expect(A, br(A, "G", m, th, n),
                       {{th, m + n - 1, h * Rat(m) - Rat(n)}});
                {
                    std::vector<Term> w;
                    if (n + 1 >= m)
                        w.push_back({q, n - m + 1, h * Rat(m) + Rat(n + 1)});
                    expect(A, br(A, "G", m, q, n), w);
                }
                {
                    std::vector<Term> w;
                    if (n <= m + 1)
                        w.push_back({q, m - n + 1, -(h * Rat(m + 1) + Rat(n))});
                    expect(A, br(A, "Gamma", m, th, n), w);
                }
                expect(A, br(A, "Gamma", m, q, n), {});

                expect(A, br(A, "S", m, th, n), {{th, m + n, Rat(s)}});
                {
                    std::vector<Term> w;
                    if (n >= m) w.push_back({q, n - m, Rat(s)});
                    expect(A, br(A, "S", m, q, n), w);
                }
                {
                    std::vector<Term> w;
                    if (n <= m) w.push_back({q, m - n, Rat(s)});
                    expect(A, br(A, "sigma", m, th, n), w);
                }
                expect(A, br(A, "sigma", m, q, n), {});

                expect(A, br(A, th, m, th, n), {});
                expect(A, br(A, th, m, q, n), {});
                expect(A, br(A, q, m, q, n), {});
                expect(A, br(A, q, m, oq, n), {});

                expect(A, br(A, th, m, oth, n),
                       {{"G", m + n, Rat(1)},
                        {"S", m + n - 1, Rat(s) * h * Rat(m - n)}});
                {
                    std::vector<Term> w;
                    if (n + 2 == m)
                        w.push_back({"xi", 0, Rat(-m) * Rat(m - 1) / Rat(6)});
                    else if (n + 1 == m)
                        w.push_back({"sigma", 0, Rat(-s) * Rat(m)});
                    else if (n >= m) {
                        w.push_back({"Gamma", n - m, Rat(-1)});
                        w.push_back({"sigma", n - m + 1, Rat(-s) * h * Rat(m + n + 1)});
                    }
                    expect(A, br(A, th, m, oq, n), w);
                }
            }

            // the central element brackets to zero in both orders
            expect(A, A.bracket({A.find("xi"), 0}, {A.find("G"), m}), {});
            expect(A, A.bracket({A.find("G"), m}, {A.find("xi"), 0}), {});
        }
}

TEST_CASE("N=1 mode brackets match the superconformal relations") {
    ModeAlgebra A = make_svir_n1();
    const Rat h(1, 2);
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            expect(A, br(A, "G", m, "G", n), {{"G", m + n - 1, Rat(m - n)}});
            {
                std::vector<Term> w;
                if (n + 3 == m)
                    w.push_back({"xi", 0, Rat(m) * Rat(m - 1) * Rat(m - 2) / Rat(12)});
                if (n + 1 >= m) w.push_back({"Gamma", n - m + 1, Rat(m + n + 1)});
                expect(A, br(A, "G", m, "Gamma", n), w);
            }
            expect(A, br(A, "G", m, "theta", n),
                   {{"theta", m + n - 1, h * Rat(m) - Rat(n)}});
            {
                std::vector<Term> w;
                if (n + 1 >= m)
                    w.push_back({"Q", n - m + 1, h * Rat(m) + Rat(n + 1)});
                expect(A, br(A, "G", m, "Q", n), w);
            }
            {
                std::vector<Term> w;
                if (n <= m + 1)
                    w.push_back({"Q", m - n + 1, -(h * Rat(m + 1) + Rat(n))});
                expect(A, br(A, "Gamma", m, "theta", n), w);
            }
            expect(A, br(A, "Gamma", m, "Q", n), {});
            expect(A, br(A, "theta", m, "theta", n), {{"G", m + n, Rat(2)}});
            {
                std::vector<Term> w;
                if (n + 2 == m)
                    w.push_back({"xi", 0, Rat(-m) * Rat(m - 1) / Rat(3)});
                else if (n >= m)
                    w.push_back({"Gamma", n - m, Rat(-2)});
                expect(A, br(A, "theta", m, "Q", n), w);
            }
            expect(A, br(A, "Q", m, "Q", n), {});
        }
}

TEST_CASE("abelian current brackets") {
    ModeAlgebra A = make_current_gl1();
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            expect(A, br(A, "S", m, "S", n), {});
            expect(A, br(A, "sigma", m, "sigma", n), {});
            {
                std::vector<Term> w;
                if (n + 1 == m) w.push_back({"xi", 0, Rat(m) / Rat(3)});
                expect(A, br(A, "S", m, "sigma", n), w);
            }
            {
                // derived through graded antisymmetry
                std::vector<Term> w;
                if (m + 1 == n) w.push_back({"xi", 0, Rat(-n) / Rat(3)});
                expect(A, br(A, "sigma", m, "S", n), w);
            }
        }
}

TEST_CASE("sl(2) current brackets") {
    ModeAlgebra A = make_current_sl2();
    expect(A, br(A, "S[h]", 2, "S[e]", 1), {{"S[e]", 3, Rat(2)}});
    expect(A, br(A, "S[e]", 1, "S[f]", 1), {{"S[h]", 2, Rat(1)}});
    expect(A, br(A, "S[e]", 0, "S[e]", 5), {});
    expect(A, br(A, "S[e]", 1, "sigma[f]", 0), {{"xi", 0, Rat(1, 3)}});
    expect(A, br(A, "S[e]", 0, "sigma[f]", 2), {{"sigma[h]", 2, Rat(1)}});
    expect(A, br(A, "S[h]", 1, "sigma[h]", 0), {{"xi", 0, Rat(2, 3)}});
    expect(A, br(A, "S[h]", 0, "sigma[e]", 1), {{"sigma[e]", 1, Rat(2)}});
}

TEST_CASE("N=3 mode brackets through the structure constants") {
    ModeAlgebra A = make_svir_n3();
    // annihilation half of the supercharges closes onto the stress tower
    expect(A, br(A, "theta[e]", 1, "theta[f]", 0),
           {{"G", 1, Rat(1)}, {"S[h]", 0, Rat(1, 4)}});
    expect(A, br(A, "theta[e]", 0, "theta[e]", 0), {});
    // currents rotate the supercharges
    expect(A, br(A, "S[h]", 0, "theta[e]", 1), {{"theta[e]", 1, Rat(2)}});
    expect(A, br(A, "S[e]", 0, "Q[f]", 2), {{"Q[h]", 2, Rat(1)}});
    // positive current modes reach the singlet spin-1/2 partner
    expect(A, br(A, "S[e]", 1, "theta[f]", 0),
           {{"theta[h]", 1, Rat(1)}, {"pi", 0, Rat(1, 2)}});
    expect(A, br(A, "pi", 0, "theta[e]", 2), {{"S[e]", 2, Rat(1)}});
    expect(A, br(A, "pi", 1, "P", 1), {{"xi", 0, Rat(-4, 3)}});
    // current level doubles the standalone sl(2) normalization
    expect(A, br(A, "S[h]", 1, "sigma[h]", 0), {{"xi", 0, Rat(4, 3)}});
}

TEST_CASE("one-parameter family structure") {
    const Rat p(1, 3);
    ModeAlgebra A = make_svir_n4(p);
    expect(A, br(A, "U", 1, "upsilon", 0), {{"kappa", 0, Rat(-16, 3)}});
    expect(A, br(A, "pi[l11]", 0, "P[l22]", 0), {{"kappa", 0, Rat(8, 3)}});
    expect(A, br(A, "theta[l11]", 0, "P[l22]", 0),
           {{"sigma^+[h]", 0, Rat(-1)},
            {"sigma^-[h]", 0, Rat(1)},
            {"upsilon", 0, Rat(-1, 2)}});
    // the two current levels split as (1 +- p)/3
    expect(A, br(A, "S^+[e]", 1, "sigma^+[f]", 0), {{"kappa", 0, (Rat(1) + p) / Rat(3)}});
    expect(A, br(A, "S^-[e]", 1, "sigma^-[f]", 0), {{"kappa", 0, (Rat(1) - p) / Rat(3)}});
    expect(A, br(A, "S^+[e]", 1, "sigma^-[f]", 0), {});
    // supercharge pairs close onto both current families, weighted by 1 -+ p
    expect(A, br(A, "theta[l11]", 1, "theta[l22]", 0),
           {{"G", 1, Rat(1)},
            {"S^+[h]", 0, (Rat(1) - p) / Rat(4)},
            {"S^-[h]", 0, (Rat(1) + p) / Rat(4)}});
    expect(A, br(A, "S^+[e]", 1, "theta[l21]", 0),
           {{"theta[l11]", 1, Rat(1)}, {"pi[l11]", 0, Rat(-1, 4) * (Rat(1) + p)}});
    // central term of the stress bracket carries (1 - p^2)
    expect(A, br(A, "G", 3, "Gamma", 0), {{"kappa", 0, (Rat(1) - p * p) / Rat(2)}});
    expect(A, br(A, "U", 1, "theta[l12]", 2), {{"pi[l12]", 2, Rat(1)}});
}

TEST_CASE("exceptional algebra structure") {
    ModeAlgebra A = make_evir();
    for (int g = 0; g < A.num_gens(); ++g) CHECK_FALSE(A.gen(g).central);
    // level-zero currents: no central term at the critical index
    expect(A, br(A, "S[E12]", 1, "sigma[E21]", 0), {});
    expect(A, br(A, "S[E12]", 0, "S[E21]", 3), {{"S[H1]", 3, Rat(1)}});
    expect(A, br(A, "S[E12]", 0, "sigma[E21]", 2), {{"sigma[H1]", 2, Rat(1)}});
    // theta against P lands on currents through the star pairing
    expect(A, br(A, "theta[F12]", 0, "P[D3]", 0), {{"sigma[E34]", 0, Rat(-1, 2)}});
    expect(A, br(A, "theta[F12]", 0, "pi[D3]", 0), {{"S[E34]", 0, Rat(1, 2)}});
    // theta theta closes onto currents
    expect(A, br(A, "theta[F12]", 1, "theta[F13]", 0), {{"S[E14]", 0, Rat(-1, 2)}});
    expect(A, br(A, "G", 5, "Gamma", 2), {});
}

TEST_CASE("graded Jacobi, antisymmetry, gradings, and positivity") {
    std::vector<ModeAlgebra> algs;
    algs.push_back(make_raviolo_virasoro());
    algs.push_back(make_current_gl1());
    algs.push_back(make_current_sl2());
    algs.push_back(make_svir_n1());
    algs.push_back(make_svir_n2());
    algs.push_back(make_svir_n3());
    algs.push_back(make_svir_n4(Rat(0)));
    algs.push_back(make_svir_n4(Rat(1, 3)));
    algs.push_back(make_evir());
    for (std::size_t i = 0; i < algs.size(); ++i) {
        const ModeAlgebra& A = algs[i];
        CAPTURE(i);
        CAPTURE(A.name());
        auto j = A.check_jacobi(4);
        INFO("jacobi: " << (j ? j->detail : std::string("ok")));
        CHECK_FALSE(j.has_value());
        auto anti = A.check_antisymmetry(6);
        INFO("antisymmetry: " << (anti ? *anti : std::string("ok")));
        CHECK_FALSE(anti.has_value());
        auto grad = A.check_gradings(6);
        INFO("gradings: " << (grad ? *grad : std::string("ok")));
        CHECK_FALSE(grad.has_value());
        auto pos = A.check_positive_closed(6);
        INFO("positivity: " << (pos ? *pos : std::string("ok")));
        CHECK_FALSE(pos.has_value());
    }
}

TEST_CASE("a wrong relative sign in the stress bracket breaks Jacobi") {
    ModeAlgebra bad("stress-wrong-sign");
    int G = bad.add_gen({"G", false, true, false, Rat(0), Rat(0), Rat(1), Rat(-1)});
    BracketPiece p;
    p.terms.push_back({G, 1, 1, -1, PolyMN::linear(Rat(1), Rat(1), Rat(0))});
    bad.set_bracket(G, G, {p});

    auto fail = bad.check_jacobi(2);
    REQUIRE(fail.has_value());
    expect(bad, jacobiator(bad, {G, 2}, {G, 1}, {G, 0}), {{"G", 1, Rat(12)}});
    CHECK(bad.check_antisymmetry(3).has_value());

    ModeAlgebra good("stress-right-sign");
    int H = good.add_gen({"G", false, true, false, Rat(0), Rat(0), Rat(1), Rat(-1)});
    BracketPiece q;
    q.terms.push_back({H, 1, 1, -1, PolyMN::linear(Rat(1), Rat(-1), Rat(0))});
    good.set_bracket(H, H, {q});
    CHECK_FALSE(good.check_jacobi(3).has_value());
    CHECK_FALSE(good.check_antisymmetry(3).has_value());
}

TEST_CASE("finite superconformal subalgebras close") {
    {
        ModeAlgebra A = make_svir_n1();
        check_closure(A, {{"G", 0}, {"G", 1}, {"G", 2}, {"theta", 0}, {"theta", 1}});
    }
    {
        ModeAlgebra A = make_svir_n2();
        check_closure(A, {{"S", 0},
                          {"G", 0},
                          {"G", 1},
                          {"G", 2},
                          {"theta^+", 0},
                          {"theta^+", 1},
                          {"theta^-", 0},
                          {"theta^-", 1}});
    }
    {
        ModeAlgebra A = make_svir_n3();
        std::vector<std::pair<std::string, int>> g = {{"G", 0}, {"G", 1}, {"G", 2}};
        for (const char* nm : {"e", "h", "f"}) {
            g.push_back({std::string("S[") + nm + "]", 0});
            g.push_back({std::string("theta[") + nm + "]", 0});
            g.push_back({std::string("theta[") + nm + "]", 1});
        }
        check_closure(A, g);
    }
    {
        ModeAlgebra A = make_svir_n4(Rat(1, 3));
        std::vector<std::pair<std::string, int>> g = {{"G", 0}, {"G", 1}, {"G", 2}};
        for (const char* nm : {"e", "h", "f"}) {
            g.push_back({std::string("S^+[") + nm + "]", 0});
            g.push_back({std::string("S^-[") + nm + "]", 0});
        }
        for (const char* nm : {"l11", "l12", "l21", "l22"}) {
            g.push_back({std::string("theta[") + nm + "]", 0});
            g.push_back({std::string("theta[") + nm + "]", 1});
        }
        check_closure(A, g);
    }
}

TEST_CASE("vacuum module of the N=2 algebra at spin cutoff 2") {
    ModeAlgebra A = make_svir_n2();
    VacuumModule M(A, Rat(2), false);

    REQUIRE(M.basis().size() == 6);
    auto word = [&](std::vector<std::pair<std::string, int>> ls) {
        Word w;
        for (const auto& [g, i] : ls) w.push_back({A.find(g), i});
        std::sort(w.begin(), w.end());
        return w;
    };
    CHECK(M.in_basis(word({})));
    CHECK(M.in_basis(word({{"Gamma", 0}})));
    CHECK(M.in_basis(word({{"sigma", 0}})));
    CHECK(M.in_basis(word({{"sigma", 1}})));
    CHECK(M.in_basis(word({{"Q^+", 0}})));
    CHECK(M.in_basis(word({{"Q^-", 0}})));
    CHECK_FALSE(M.in_basis(word({{"Gamma", 1}})));

    CHECK(M.spin_of(word({{"Gamma", 0}})) == Rat(2));
    CHECK(M.spin_of(word({{"Q^+", 0}})) == Rat(3, 2));

    // G_1 acts on Gamma_0 |0> as 2 Gamma_0 |0>
    const ModState v = VacuumModule::vacuum();
    ModState g0 = M.apply(ModeKey{A.find("Gamma"), 0}, v);
    REQUIRE(g0.size() == 1);
    ModState res = M.apply(ModeKey{A.find("G"), 1}, g0);
    ModState want{{word({{"Gamma", 0}}), Rat(2)}};
    CHECK(res == want);

    // positive modes kill the vacuum
    for (const char* g : {"G", "S", "theta^+", "theta^-"})
        for (int i = 0; i <= 3; ++i)
            CHECK(M.apply(ModeKey{A.find(g), i}, v).empty());
    CHECK(M.apply(ModeKey{A.find("xi"), 0}, v).empty());

    // the central element acts by zero on the whole module
    for (const Word& w : M.basis())
        CHECK(M.apply(ModeKey{A.find("xi"), 0}, ModState{{w, Rat(1)}}).empty());

    // ... so the central part of [G_3, Gamma_0] disappears here
    CHECK(M.apply(ModeKey{A.find("G"), 3}, g0).empty());

    // larger cutoff: two-letter words appear, repeated odd letters do not
    VacuumModule M3(A, Rat(3), false);
    CHECK(M3.in_basis(word({{"sigma", 0}, {"sigma", 1}})));
    CHECK_FALSE(M3.in_basis(Word{{A.find("sigma"), 0}, {A.find("sigma"), 0}}));
}

TEST_CASE("universal vacuum module keeps the central letter, squaring to zero") {
    ModeAlgebra A = make_svir_n2();
    VacuumModule M(A, Rat(2), true);
    CHECK(M.basis().size() == 12);

    const ModState v = VacuumModule::vacuum();
    ModState x = M.apply(ModeKey{A.find("xi"), 0}, v);
    REQUIRE(x.size() == 1);
    CHECK(M.in_basis(x.begin()->first));
    CHECK(M.apply(ModeKey{A.find("xi"), 0}, x).empty());

    // [G_3, Gamma_0] |0> = (xi/2) |0> materializes as the central letter
    ModState g = M.apply(ModeKey{A.find("Gamma"), 0}, v);
    ModState r = M.apply(ModeKey{A.find("G"), 3}, g);
    Word xw{{A.find("xi"), 0}};
    ModState want{{xw, Rat(1, 2)}};
    CHECK(r == want);
}

TEST_CASE("module action represents the bracket") {
    ModeAlgebra A = make_svir_n2();
    VacuumModule M(A, Rat(2), true);
    std::vector<ModeKey> modes;
    for (int g = 0; g < A.num_gens(); ++g) {
        const int top = A.gen(g).central ? 0 : 2;
        for (int i = 0; i <= top; ++i) modes.push_back({g, i});
    }
    auto add_scaled = [](ModState& into, const ModState& s, const Rat& f) {
        for (const auto& [w, c] : s) {
            Rat val = f * c;
            if (val.is_zero()) continue;
            auto it = into.find(w);
            if (it == into.end())
                into.emplace(w, val);
            else {
                it->second += val;
                if (it->second.is_zero()) into.erase(it);
            }
        }
    };
    for (const ModeKey& x : modes)
        for (const ModeKey& y : modes) {
            const bool both_odd = A.gen(x.first).odd && A.gen(y.first).odd;
            for (const Word& w : M.basis()) {
                ModState v{{w, Rat(1)}};
                // x (y v) - (-1)^{|x||y|} y (x v) == [x, y] v
                ModState lhs = M.apply(x, M.apply(y, v));
                add_scaled(lhs, M.apply(y, M.apply(x, v)),
                           both_odd ? Rat(1) : Rat(-1));
                ModState rhs = M.apply(A.bracket(x, y), v);
                INFO(A.mode_str(x) << " against " << A.mode_str(y) << " on "
                                   << M.word_str(w));
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("the N=1 algebra embeds into the N=2 algebra") {
    ModeAlgebra n1 = make_svir_n1();
    ModeAlgebra n2 = make_svir_n2();
    ModeMorphism phi = n1_to_n2_morphism(n1, n2);

    expect(n2, phi.map(ModeKey{n1.find("theta"), 0}),
           {{"theta^+", 0, Rat(1)}, {"theta^-", 0, Rat(1)}});
    expect(n2, phi.map(ModeKey{n1.find("G"), 5}), {{"G", 5, Rat(1)}});

    Combo th0 = phi.map(ModeKey{n1.find("theta"), 0});
    expect(n2, bracket_combos(n2, th0, th0), {{"G", 0, Rat(2)}});
    expect(n2, phi.map(n1.bracket({n1.find("theta"), 0}, {n1.find("theta"), 0})),
           {{"G", 0, Rat(2)}});

    auto bad = phi.check_intertwines(5);
    INFO((bad ? *bad : std::string("ok")));
    CHECK_FALSE(bad.has_value());
}

TEST_CASE("the N=2 algebra embeds into the N=3 algebra along the Cartan") {
    ModeAlgebra n2 = make_svir_n2();
    ModeAlgebra n3 = make_svir_n3();
    ModeMorphism phi = n2_to_n3_morphism(n2, n3);

    expect(n3, phi.map(ModeKey{n2.find("S"), 2}), {{"S[h]", 2, Rat(1, 2)}});
    // the halved Cartan current reproduces the abelian level:
    // [S_1, sigma_0] = xi/3 on both sides of the embedding
    expect(n3, phi.map(n2.bracket({n2.find("S"), 1}, {n2.find("sigma"), 0})),
           {{"xi", 0, Rat(1, 3)}});
    Combo s1 = phi.map(ModeKey{n2.find("S"), 1});
    Combo si0 = phi.map(ModeKey{n2.find("sigma"), 0});
    expect(n3, bracket_combos(n3, s1, si0), {{"xi", 0, Rat(1, 3)}});

    auto bad = phi.check_intertwines(5);
    INFO((bad ? *bad : std::string("ok")));
    CHECK_FALSE(bad.has_value());
}

TEST_CASE("mode metadata") {
    ModeAlgebra A = make_svir_n2();
    CHECK(A.spin_of({A.find("G"), 3}) == Rat(-2));
    CHECK(A.spin_of({A.find("Gamma"), 3}) == Rat(5));
    CHECK(A.spin_of({A.find("theta^+"), 0}) == Rat(1, 2));
    CHECK(A.gen(A.find("xi")).central);
    CHECK(A.gen(A.find("xi")).odd);
    CHECK(A.gen(A.find("G")).positive);
    CHECK_FALSE(A.gen(A.find("Gamma")).positive);
    CHECK(A.mode_str({A.find("xi"), 0}) == "xi");
    CHECK(A.mode_str({A.find("G"), 2}) == "G_2");
    CHECK(A.gen(A.find("Q^+")).s == Rat(1));
    CHECK(A.gen(A.find("theta^-")).s == Rat(-1));
}

TEST_CASE("bracket formulas that leave the mode domain are rejected") {
    ModeAlgebra A("toy");
    int g = A.add_gen({"a", false, false, false, Rat(0), Rat(0), Rat(1), Rat(1)});
    BracketPiece p;
    p.terms.push_back({g, 1, 1, -3, PolyMN::constant(Rat(1))});
    A.set_bracket(g, g, {p});
    CHECK_THROWS_AS((void)A.bracket({g, 0}, {g, 0}), rav::math_error);
    CHECK(A.bracket({g, 2}, {g, 1}).size() == 1);
}

TEST_CASE("missing bracket data is an error, except against central elements") {
    ModeAlgebra A("toy2");
    int a = A.add_gen({"a", false, false, false, Rat(0), Rat(0), Rat(1), Rat(1)});
    int b = A.add_gen({"b", false, false, false, Rat(0), Rat(0), Rat(1), Rat(1)});
    int z = A.add_gen({"z", true, true, true, Rat(1), Rat(0), Rat(0), Rat(0)});
    A.set_bracket(a, a, {});
    CHECK_THROWS_AS((void)A.bracket({a, 0}, {b, 0}), rav::math_error);
    CHECK(A.bracket({a, 0}, {z, 0}).empty());
    CHECK(A.bracket({z, 0}, {b, 3}).empty());
}

TEST_CASE("field specs demand complete OPE data and reject duplicates") {
    FieldSpec sp("toy");
    auto mkf = [&](const char* nm, const char* an) {
        FieldSpec::Field x;
        x.name = nm;
        x.ann_name = an;
        x.cre_name = nm;
        x.odd = true;
        x.r = Rat(1);
        x.spin = Rat(1);
        x.s = Rat(0);
        return x;
    };
    int a = sp.add_field(mkf("alpha", "A"));
    int b = sp.add_field(mkf("beta", "B"));
    sp.set_regular(a, a);
    sp.set_regular(a, b);
    CHECK_THROWS_AS(sp.set_ope(a, b, {}), rav::math_error);
    CHECK_THROWS_AS((void)compile_mode_algebra(sp), rav::math_error);
    sp.set_regular(b, b);
    ModeAlgebra A = compile_mode_algebra(sp);
    CHECK(A.num_gens() == 4);
    CHECK_FALSE(A.check_jacobi(3).has_value());
}
