#include "raviolo/lie.hpp"
#include "raviolo/modealg.hpp"

namespace rav::ma {

namespace {

using lie::Mat;
using lie::NamedBasis;

FieldSpec::Field central_field(const std::string& name) {
    FieldSpec::Field f;
    f.name = name;
    f.odd = true;
    f.central = true;
    f.r = Rat(1);
    f.spin = Rat(0);
    f.s = Rat(0);
    return f;
}

FieldSpec::Field stress_field() {
    FieldSpec::Field f;
    f.name = "Gamma";
    f.ann_name = "G";
    f.cre_name = "Gamma";
    f.odd = true;
    f.r = Rat(1);
    f.spin = Rat(2);
    f.s = Rat(0);
    return f;
}

FieldSpec::Field current_field(const std::string& name, const std::string& ann) {
    FieldSpec::Field f;
    f.name = name;
    f.ann_name = ann;
    f.cre_name = name;
    f.odd = true;
    f.r = Rat(1);
    f.spin = Rat(1);
    f.s = Rat(0);
    return f;
}

FieldSpec::Field charge_field(const std::string& name, const std::string& ann,
                              const Rat& spin, const Rat& s) {
    FieldSpec::Field f;
    f.name = name;
    f.ann_name = ann;
    f.cre_name = name;
    f.odd = false;
    f.r = Rat(1);
    f.spin = spin;
    f.s = s;
    return f;
}

// Gamma(z) X(w) ~ j Omega^1 X + Omega^0 dX for a primary of spin j.
OpeSingular primary_ope(int x, const Rat& j) {
    return {{1, {{x, 0, j}}}, {0, {{x, 1, Rat(1)}}}};
}

// Coefficients of M in `basis`, emitted as d-th derivative terms scaled by c.
void add_in_basis(FieldCombo& combo, const Mat& M, const NamedBasis& basis,
                  const std::vector<int>& ids, int d, const Rat& c) {
    if (c.is_zero() || lie::is_zero(M)) return;
    std::vector<Rat> coords = lie::coords_in(basis, M);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        combo.push_back({ids[i], d, c * coords[i]});
    }
}

} // namespace

FieldSpec raviolo_virasoro_spec() {
    FieldSpec sp("raviolo-virasoro");
    int xi = sp.add_field(central_field("xi"));
    int ga = sp.add_field(stress_field());
    sp.set_ope(ga, ga,
               {{3, {{xi, 0, Rat(1, 2)}}},
                {1, {{ga, 0, Rat(2)}}},
                {0, {{ga, 1, Rat(1)}}}});
    return sp;
}

FieldSpec current_gl1_spec() {
    FieldSpec sp("current-gl1");
    int xi = sp.add_field(central_field("xi"));
    int si = sp.add_field(current_field("sigma", "S"));
    sp.set_ope(si, si, {{1, {{xi, 0, Rat(1, 3)}}}});
    return sp;
}

FieldSpec current_sl2_spec() {
    FieldSpec sp("current-sl2");
    const NamedBasis& b = lie::sl2_basis();
    int xi = sp.add_field(central_field("xi"));
    std::vector<int> si;
    for (int i = 0; i < b.size(); ++i)
        si.push_back(sp.add_field(current_field("sigma[" + b.names[static_cast<std::size_t>(i)] + "]",
                                                "S[" + b.names[static_cast<std::size_t>(i)] + "]")));
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            const Mat& A = b.mats[static_cast<std::size_t>(i)];
            const Mat& B = b.mats[static_cast<std::size_t>(j)];
            OpeSingular o;
            Rat level = lie::trace(lie::mul(A, B)) / Rat(3);
            if (!level.is_zero()) o[1] = {{xi, 0, level}};
            FieldCombo c0;
            add_in_basis(c0, lie::commutator(A, B), b, si, 0, Rat(1));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(si[static_cast<std::size_t>(i)], si[static_cast<std::size_t>(j)], std::move(o));
        }
    return sp;
}

FieldSpec svir_n1_spec() {
    FieldSpec sp("svir-n1");
    int xi = sp.add_field(central_field("xi"));
    int ga = sp.add_field(stress_field());
    int q = sp.add_field(charge_field("Q", "theta", Rat(3, 2), Rat(0)));
    sp.set_ope(ga, ga,
               {{3, {{xi, 0, Rat(1, 2)}}},
                {1, {{ga, 0, Rat(2)}}},
                {0, {{ga, 1, Rat(1)}}}});
    sp.set_ope(ga, q, primary_ope(q, Rat(3, 2)));
    sp.set_ope(q, q, {{2, {{xi, 0, Rat(-2, 3)}}}, {0, {{ga, 0, Rat(-2)}}}});
    return sp;
}

FieldSpec svir_n2_spec() {
    FieldSpec sp("svir-n2");
    int xi = sp.add_field(central_field("xi"));
    int ga = sp.add_field(stress_field());
    int si = sp.add_field(current_field("sigma", "S"));
    int qp = sp.add_field(charge_field("Q^+", "theta^+", Rat(3, 2), Rat(1)));
    int qm = sp.add_field(charge_field("Q^-", "theta^-", Rat(3, 2), Rat(-1)));
    sp.set_ope(ga, ga,
               {{3, {{xi, 0, Rat(1, 2)}}},
                {1, {{ga, 0, Rat(2)}}},
                {0, {{ga, 1, Rat(1)}}}});
    sp.set_ope(si, si, {{1, {{xi, 0, Rat(1, 3)}}}});
    sp.set_ope(ga, si, primary_ope(si, Rat(1)));
    sp.set_ope(ga, qp, primary_ope(qp, Rat(3, 2)));
    sp.set_ope(ga, qm, primary_ope(qm, Rat(3, 2)));
    sp.set_ope(si, qp, {{0, {{qp, 0, Rat(1)}}}});
    sp.set_ope(si, qm, {{0, {{qm, 0, Rat(-1)}}}});
    sp.set_regular(qp, qp);
    sp.set_regular(qm, qm);
    sp.set_ope(qp, qm,
               {{2, {{xi, 0, Rat(-1, 3)}}},
                {1, {{si, 0, Rat(-1)}}},
                {0, {{ga, 0, Rat(-1)}, {si, 1, Rat(-1, 2)}}}});
    return sp;
}

FieldSpec svir_n3_spec() {
    FieldSpec sp("svir-n3");
    const NamedBasis& b = lie::sl2_basis();
    int xi = sp.add_field(central_field("xi"));
    int ga = sp.add_field(stress_field());
    std::vector<int> si, qq;
    for (int i = 0; i < b.size(); ++i) {
        const std::string& nm = b.names[static_cast<std::size_t>(i)];
        si.push_back(sp.add_field(current_field("sigma[" + nm + "]", "S[" + nm + "]")));
    }
    for (int i = 0; i < b.size(); ++i) {
        const std::string& nm = b.names[static_cast<std::size_t>(i)];
        qq.push_back(sp.add_field(charge_field("Q[" + nm + "]", "theta[" + nm + "]",
                                               Rat(3, 2), Rat(0))));
    }
    // Singlet spin-1/2 partner required for the tower-extended brackets to
    // close; it decouples from the finite osp(3|2) slice (only positive
    // S-modes reach it).
    int ps = sp.add_field(charge_field("P", "pi", Rat(1, 2), Rat(0)));
    sp.set_ope(ga, ga,
               {{3, {{xi, 0, Rat(1, 2)}}},
                {1, {{ga, 0, Rat(2)}}},
                {0, {{ga, 1, Rat(1)}}}});
    for (int i = 0; i < b.size(); ++i) {
        sp.set_ope(ga, si[static_cast<std::size_t>(i)], primary_ope(si[static_cast<std::size_t>(i)], Rat(1)));
        sp.set_ope(ga, qq[static_cast<std::size_t>(i)], primary_ope(qq[static_cast<std::size_t>(i)], Rat(3, 2)));
    }
    sp.set_ope(ga, ps, primary_ope(ps, Rat(1, 2)));
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            const Mat& A = b.mats[static_cast<std::size_t>(i)];
            const Mat& B = b.mats[static_cast<std::size_t>(j)];
            const Rat tr = lie::trace(lie::mul(A, B));
            const Mat ab = lie::commutator(A, B);
            {
                OpeSingular o;
                if (!tr.is_zero()) o[1] = {{xi, 0, Rat(2, 3) * tr}};
                FieldCombo c0;
                add_in_basis(c0, ab, b, si, 0, Rat(1));
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(si[static_cast<std::size_t>(i)], si[static_cast<std::size_t>(j)], std::move(o));
            }
            {
                OpeSingular o;
                if (!tr.is_zero()) o[1] = {{ps, 0, tr / Rat(2)}};
                FieldCombo c0;
                add_in_basis(c0, ab, b, qq, 0, Rat(1));
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(si[static_cast<std::size_t>(i)], qq[static_cast<std::size_t>(j)], std::move(o));
            }
            {
                OpeSingular o;
                if (!tr.is_zero()) o[2] = {{xi, 0, -tr / Rat(3)}};
                FieldCombo c1, c0;
                add_in_basis(c1, ab, b, si, 0, Rat(-1, 2));
                if (!c1.empty()) o[1] = c1;
                if (!tr.is_zero()) c0.push_back({ga, 0, -tr});
                add_in_basis(c0, ab, b, si, 1, Rat(-1, 4));
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(qq[static_cast<std::size_t>(i)], qq[static_cast<std::size_t>(j)], std::move(o));
            }
        }
    for (int i = 0; i < b.size(); ++i)
        sp.set_regular(si[static_cast<std::size_t>(i)], ps);
    for (int j = 0; j < b.size(); ++j)
        sp.set_ope(ps, qq[static_cast<std::size_t>(j)],
                   {{0, {{si[static_cast<std::size_t>(j)], 0, Rat(-1)}}}});
    sp.set_ope(ps, ps, {{0, {{xi, 0, Rat(-4, 3)}}}});
    return sp;
}

FieldSpec svir_n4_spec(const Rat& p) {
    FieldSpec sp("svir-n4");
    const NamedBasis& sl2 = lie::sl2_basis();
    const NamedBasis& lam = lie::n4_lambda_basis();
    int ka = sp.add_field(central_field("kappa"));
    int ga = sp.add_field(stress_field());
    std::vector<int> sip, sim, qq, pp;
    for (int i = 0; i < sl2.size(); ++i) {
        const std::string& nm = sl2.names[static_cast<std::size_t>(i)];
        sip.push_back(sp.add_field(current_field("sigma^+[" + nm + "]", "S^+[" + nm + "]")));
    }
    for (int i = 0; i < sl2.size(); ++i) {
        const std::string& nm = sl2.names[static_cast<std::size_t>(i)];
        sim.push_back(sp.add_field(current_field("sigma^-[" + nm + "]", "S^-[" + nm + "]")));
    }
    int up = sp.add_field(current_field("upsilon", "U"));
    for (int i = 0; i < lam.size(); ++i) {
        const std::string& nm = lam.names[static_cast<std::size_t>(i)];
        qq.push_back(sp.add_field(charge_field("Q[" + nm + "]", "theta[" + nm + "]",
                                               Rat(3, 2), Rat(0))));
    }
    for (int i = 0; i < lam.size(); ++i) {
        const std::string& nm = lam.names[static_cast<std::size_t>(i)];
        pp.push_back(sp.add_field(charge_field("P[" + nm + "]", "pi[" + nm + "]",
                                               Rat(1, 2), Rat(0))));
    }

    const Rat xi_of_kappa = (Rat(1) - p * p); // xi = (1 - p^2) kappa
    sp.set_ope(ga, ga,
               {{3, {{ka, 0, xi_of_kappa / Rat(2)}}},
                {1, {{ga, 0, Rat(2)}}},
                {0, {{ga, 1, Rat(1)}}}});

    for (int i = 0; i < sl2.size(); ++i) {
        sp.set_ope(ga, sip[static_cast<std::size_t>(i)], primary_ope(sip[static_cast<std::size_t>(i)], Rat(1)));
        sp.set_ope(ga, sim[static_cast<std::size_t>(i)], primary_ope(sim[static_cast<std::size_t>(i)], Rat(1)));
    }
    sp.set_ope(ga, up, primary_ope(up, Rat(1)));
    for (int i = 0; i < lam.size(); ++i) {
        sp.set_ope(ga, qq[static_cast<std::size_t>(i)], primary_ope(qq[static_cast<std::size_t>(i)], Rat(3, 2)));
        sp.set_ope(ga, pp[static_cast<std::size_t>(i)], primary_ope(pp[static_cast<std::size_t>(i)], Rat(1, 2)));
    }

    // The two commuting sl(2) currents and the abelian current.
    for (int sgn = 0; sgn < 2; ++sgn) {
        const std::vector<int>& fam = sgn == 0 ? sip : sim;
        // One third of kappa^{+-} = (1 +- p) kappa.
        const Rat kap_level = (sgn == 0 ? Rat(1) + p : Rat(1) - p) / Rat(3);
        for (int i = 0; i < sl2.size(); ++i)
            for (int j = 0; j < sl2.size(); ++j) {
                const Mat& A = sl2.mats[static_cast<std::size_t>(i)];
                const Mat& B = sl2.mats[static_cast<std::size_t>(j)];
                OpeSingular o;
                Rat lv = kap_level * lie::trace(lie::mul(A, B));
                if (!lv.is_zero()) o[1] = {{ka, 0, lv}};
                FieldCombo c0;
                add_in_basis(c0, lie::commutator(A, B), sl2, fam, 0, Rat(1));
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(fam[static_cast<std::size_t>(i)], fam[static_cast<std::size_t>(j)], std::move(o));
            }
    }
    for (int i = 0; i < sl2.size(); ++i)
        for (int j = 0; j < sl2.size(); ++j)
            sp.set_regular(sip[static_cast<std::size_t>(i)], sim[static_cast<std::size_t>(j)]);
    sp.set_ope(up, up, {{1, {{ka, 0, Rat(-16, 3)}}}});
    for (int i = 0; i < sl2.size(); ++i) {
        sp.set_regular(sip[static_cast<std::size_t>(i)], up);
        sp.set_regular(sim[static_cast<std::size_t>(i)], up);
    }

    // Currents acting on P and Q.
    for (int sgn = 0; sgn < 2; ++sgn) {
        const std::vector<int>& fam = sgn == 0 ? sip : sim;
        const Rat q_level = (sgn == 0 ? Rat(-1, 4) : Rat(1, 4)) *
                            (sgn == 0 ? Rat(1) + p : Rat(1) - p); // -+ 1/4 (1 +- p)
        for (int i = 0; i < sl2.size(); ++i) {
            const Mat& A = sl2.mats[static_cast<std::size_t>(i)];
            for (int l = 0; l < lam.size(); ++l) {
                const Mat& L = lam.mats[static_cast<std::size_t>(l)];
                const Mat AL = sgn == 0 ? lie::n4_act_plus(A, L) : lie::n4_act_minus(A, L);
                {
                    OpeSingular o;
                    FieldCombo c0;
                    add_in_basis(c0, AL, lam, pp, 0, Rat(1));
                    if (!c0.empty()) o[0] = c0;
                    sp.set_ope(fam[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(l)], std::move(o));
                }
                {
                    OpeSingular o;
                    FieldCombo c1, c0;
                    add_in_basis(c1, AL, lam, pp, 0, q_level);
                    if (!c1.empty()) o[1] = c1;
                    add_in_basis(c0, AL, lam, qq, 0, Rat(1));
                    if (!c0.empty()) o[0] = c0;
                    sp.set_ope(fam[static_cast<std::size_t>(i)], qq[static_cast<std::size_t>(l)], std::move(o));
                }
            }
        }
    }
    for (int l = 0; l < lam.size(); ++l) {
        sp.set_regular(up, pp[static_cast<std::size_t>(l)]);
        sp.set_ope(up, qq[static_cast<std::size_t>(l)], {{1, {{pp[static_cast<std::size_t>(l)], 0, Rat(1)}}}});
    }

    // P P, P Q, and Q Q.
    for (int l1 = 0; l1 < lam.size(); ++l1)
        for (int l2 = 0; l2 < lam.size(); ++l2) {
            const Mat& L1 = lam.mats[static_cast<std::size_t>(l1)];
            const Mat& L2 = lam.mats[static_cast<std::size_t>(l2)];
            const Rat pair = lie::n4_pairing(L1, L2);
            const Mat brp = lie::n4_bracket_plus(L1, L2);
            const Mat brm = lie::n4_bracket_minus(L1, L2);
            {
                OpeSingular o;
                if (!pair.is_zero()) o[0] = {{ka, 0, Rat(8, 3) * pair}};
                sp.set_ope(pp[static_cast<std::size_t>(l1)], pp[static_cast<std::size_t>(l2)], std::move(o));
            }
            {
                OpeSingular o;
                FieldCombo c0;
                add_in_basis(c0, brp, sl2, sip, 0, Rat(-1));
                add_in_basis(c0, brm, sl2, sim, 0, Rat(1));
                if (!pair.is_zero()) c0.push_back({up, 0, Rat(-1, 2) * pair});
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(pp[static_cast<std::size_t>(l1)], qq[static_cast<std::size_t>(l2)], std::move(o));
            }
            {
                OpeSingular o;
                if (!pair.is_zero())
                    o[2] = {{ka, 0, Rat(-1, 3) * xi_of_kappa * pair}};
                FieldCombo c1, c0;
                add_in_basis(c1, brp, sl2, sip, 0, Rat(1, 2) * (Rat(1) - p));
                add_in_basis(c1, brm, sl2, sim, 0, Rat(1, 2) * (Rat(1) + p));
                if (!c1.empty()) o[1] = c1;
                if (!pair.is_zero()) c0.push_back({ga, 0, -pair});
                add_in_basis(c0, brp, sl2, sip, 1, Rat(1, 4) * (Rat(1) - p));
                add_in_basis(c0, brm, sl2, sim, 1, Rat(1, 4) * (Rat(1) + p));
                if (!c0.empty()) o[0] = c0;
                sp.set_ope(qq[static_cast<std::size_t>(l1)], qq[static_cast<std::size_t>(l2)], std::move(o));
            }
        }
    return sp;
}

FieldSpec evir_spec() {
    FieldSpec sp("evir");
    const NamedBasis& sl4 = lie::sl4_basis();
    const NamedBasis& skw = lie::skew4_basis();
    const NamedBasis& sym = lie::sym4_basis();
    int ga = sp.add_field(stress_field());
    std::vector<int> si, qq, pp;
    for (int i = 0; i < sl4.size(); ++i) {
        const std::string& nm = sl4.names[static_cast<std::size_t>(i)];
        si.push_back(sp.add_field(current_field("sigma[" + nm + "]", "S[" + nm + "]")));
    }
    for (int i = 0; i < skw.size(); ++i) {
        const std::string& nm = skw.names[static_cast<std::size_t>(i)];
        qq.push_back(sp.add_field(charge_field("Q[" + nm + "]", "theta[" + nm + "]",
                                               Rat(3, 2), Rat(0))));
    }
    for (int i = 0; i < sym.size(); ++i) {
        const std::string& nm = sym.names[static_cast<std::size_t>(i)];
        pp.push_back(sp.add_field(charge_field("P[" + nm + "]", "pi[" + nm + "]",
                                               Rat(1, 2), Rat(0))));
    }

    // Vanishing central charge.
    sp.set_ope(ga, ga, {{1, {{ga, 0, Rat(2)}}}, {0, {{ga, 1, Rat(1)}}}});
    for (int i = 0; i < sl4.size(); ++i)
        sp.set_ope(ga, si[static_cast<std::size_t>(i)], primary_ope(si[static_cast<std::size_t>(i)], Rat(1)));
    for (int i = 0; i < skw.size(); ++i)
        sp.set_ope(ga, qq[static_cast<std::size_t>(i)], primary_ope(qq[static_cast<std::size_t>(i)], Rat(3, 2)));
    for (int i = 0; i < sym.size(); ++i)
        sp.set_ope(ga, pp[static_cast<std::size_t>(i)], primary_ope(pp[static_cast<std::size_t>(i)], Rat(1, 2)));

    // Level-zero sl(4) currents.
    for (int i = 0; i < sl4.size(); ++i)
        for (int j = 0; j < sl4.size(); ++j) {
            OpeSingular o;
            FieldCombo c0;
            add_in_basis(c0, lie::commutator(sl4.mats[static_cast<std::size_t>(i)],
                                             sl4.mats[static_cast<std::size_t>(j)]),
                         sl4, si, 0, Rat(1));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(si[static_cast<std::size_t>(i)], si[static_cast<std::size_t>(j)], std::move(o));
        }

    // Currents acting on P (Sym^2 C^4) and on Q (wedge^2 C^4, modulo P).
    for (int i = 0; i < sl4.size(); ++i) {
        const Mat& A = sl4.mats[static_cast<std::size_t>(i)];
        const Mat At = lie::transpose(A);
        for (int j = 0; j < sym.size(); ++j) {
            const Mat& B = sym.mats[static_cast<std::size_t>(j)];
            OpeSingular o;
            FieldCombo c0;
            add_in_basis(c0, lie::add(lie::mul(A, B), lie::mul(B, At)), sym, pp, 0, Rat(1));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(si[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(j)], std::move(o));
        }
        for (int j = 0; j < skw.size(); ++j) {
            const Mat& B = skw.mats[static_cast<std::size_t>(j)];
            OpeSingular o;
            FieldCombo c1, c0;
            add_in_basis(c1, lie::sub(lie::mul(A, B), lie::mul(B, At)), sym, pp, 0, Rat(1));
            if (!c1.empty()) o[1] = c1;
            add_in_basis(c0, lie::add(lie::mul(A, B), lie::mul(B, At)), skw, qq, 0, Rat(1));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(si[static_cast<std::size_t>(i)], qq[static_cast<std::size_t>(j)], std::move(o));
        }
    }

    // Q Q, P P, and Q P.
    for (int i = 0; i < skw.size(); ++i)
        for (int j = 0; j < skw.size(); ++j) {
            const Mat& A = skw.mats[static_cast<std::size_t>(i)];
            const Mat& B = skw.mats[static_cast<std::size_t>(j)];
            const Mat ab = lie::mul(A, lie::star(B));
            const Rat tr = lie::trace(ab);
            const Mat ab0 = lie::traceless(ab);
            OpeSingular o;
            FieldCombo c1, c0;
            add_in_basis(c1, ab0, sl4, si, 0, Rat(-1));
            if (!c1.empty()) o[1] = c1;
            if (!tr.is_zero()) c0.push_back({ga, 0, Rat(-1, 2) * tr});
            add_in_basis(c0, ab0, sl4, si, 1, Rat(-1, 2));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(qq[static_cast<std::size_t>(i)], qq[static_cast<std::size_t>(j)], std::move(o));
        }
    for (int i = 0; i < sym.size(); ++i)
        for (int j = 0; j < sym.size(); ++j)
            sp.set_regular(pp[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(j)]);
    for (int i = 0; i < skw.size(); ++i)
        for (int j = 0; j < sym.size(); ++j) {
            const Mat& A = skw.mats[static_cast<std::size_t>(i)];
            const Mat& B = sym.mats[static_cast<std::size_t>(j)];
            OpeSingular o;
            FieldCombo c0;
            add_in_basis(c0, lie::mul(B, lie::star(A)), sl4, si, 0, Rat(-1, 2));
            if (!c0.empty()) o[0] = c0;
            sp.set_ope(qq[static_cast<std::size_t>(i)], pp[static_cast<std::size_t>(j)], std::move(o));
        }
    return sp;
}

ModeAlgebra make_raviolo_virasoro() { return compile_mode_algebra(raviolo_virasoro_spec()); }
ModeAlgebra make_current_gl1() { return compile_mode_algebra(current_gl1_spec()); }
ModeAlgebra make_current_sl2() { return compile_mode_algebra(current_sl2_spec()); }
ModeAlgebra make_svir_n1() { return compile_mode_algebra(svir_n1_spec()); }
ModeAlgebra make_svir_n2() { return compile_mode_algebra(svir_n2_spec()); }
ModeAlgebra make_svir_n3() { return compile_mode_algebra(svir_n3_spec()); }
ModeAlgebra make_svir_n4(const Rat& p) { return compile_mode_algebra(svir_n4_spec(p)); }
ModeAlgebra make_evir() { return compile_mode_algebra(evir_spec()); }

ModeMorphism n1_to_n2_morphism(const ModeAlgebra& n1, const ModeAlgebra& n2) {
    ModeMorphism phi;
    phi.src = &n1;
    phi.dst = &n2;
    phi.images.resize(static_cast<std::size_t>(n1.num_gens()));
    auto img = [&](const std::string& from, std::vector<std::string> to) {
        std::vector<std::pair<int, Rat>> targets;
        for (const auto& t : to) targets.emplace_back(n2.find(t), Rat(1));
        phi.images[static_cast<std::size_t>(n1.find(from))] = std::move(targets);
    };
    img("xi", {"xi"});
    img("G", {"G"});
    img("Gamma", {"Gamma"});
    img("theta", {"theta^+", "theta^-"});
    img("Q", {"Q^+", "Q^-"});
    return phi;
}

ModeMorphism n2_to_n3_morphism(const ModeAlgebra& n2, const ModeAlgebra& n3) {
    ModeMorphism phi;
    phi.src = &n2;
    phi.dst = &n3;
    phi.images.resize(static_cast<std::size_t>(n2.num_gens()));
    auto img = [&](const std::string& from, const std::string& to, const Rat& c) {
        phi.images[static_cast<std::size_t>(n2.find(from))] = {{n3.find(to), c}};
    };
    img("xi", "xi", Rat(1));
    img("G", "G", Rat(1));
    img("Gamma", "Gamma", Rat(1));
    img("S", "S[h]", Rat(1, 2));
    img("sigma", "sigma[h]", Rat(1, 2));
    img("theta^+", "theta[e]", Rat(1));
    img("Q^+", "Q[e]", Rat(1));
    img("theta^-", "theta[f]", Rat(1));
    img("Q^-", "Q[f]", Rat(1));
    return phi;
}

} // namespace rav::ma
