#pragma once
#include "raviolo/freefield.hpp"
#include "raviolo/scalar.hpp"

#include <string>
#include <vector>

namespace rav::sc {

// Pass/fail outcome with human-readable witnesses for every failure.
struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// An N=2 superconformal structure on a free-field algebra: a designated
// stress tensor Gamma (R=1, spin 2), superconformal current sigma (R=1,
// spin 1), supercharges Q^+- (R=1, spin 3/2, S=+-1), and the central value
// the multiplet is expected to close on.
struct SCStructure {
    const ff::FreeAlgebra* alg = nullptr;
    ff::FockState gamma, sigma, q_plus, q_minus;
    Scalar xi;
    // Sign relating sigma_(0) to the algebra's S-grading; the mirror flips
    // it along with sigma, so S-charges quoted by the structure (slices,
    // records, designated gradings) are s_sign times the algebra's.
    Rat s_sign = Rat(1);
};

// Bundles the designated composites of a free theory into a structure.
SCStructure structure_of(const ff::FreeTheory& th, const Scalar& xi = Scalar(Rat(0)));

enum class Branch { higgs, coulomb };

struct PrimaryRecord {
    ff::FockState state;
    Branch branch = Branch::higgs;
    // Q^-_(0) state for a Higgs primary, Q^+_(0) state for a Coulomb one.
    ff::FockState partner;
    Rat r, j, q;
};

// Verifies the structure: designated gradings (grading mismatches and a
// symbolic central value throw before any OPE is computed), the seven N=2
// OPE families among {Gamma, sigma, Q^+, Q^-} at the stored central value
// (all sixteen ordered pairs; the reversed ones through the skew
// transform), and on every basis state up to spin_cutoff that Gamma_(0)
// translates, Gamma_(1) reads off the spin, and sigma_(0) the S-charge.
Report verify_sc(const SCStructure& sc, const Rat& spin_cutoff);

struct BpsReport {
    std::vector<std::string> violations;  // states with j < |q|/2
    std::vector<ff::Monomial> saturators; // states with j = |q|/2
    bool ok() const { return violations.empty(); }
};

// Scans the basis of the window for states below the spin bound j >= |q|/2.
BpsReport bps_scan(const SCStructure& sc, const ff::GradingWindow& window);

// Basis of branch primaries per bound-saturating slice: the joint kernel of
// Q^+_(0) and Q^-_(1) on the j = q/2 slices (Higgs; the roles of Q^+ and
// Q^- are exchanged on the j = -q/2 slices for Coulomb), each primary with
// its superpartner attached, taken modulo the image of the branch
// differential Q^+_(0) (resp. Q^-_(0)) from the adjacent slice so that a
// primary class is never exact in the associated twisted complex.  The
// adjacent slices are enumerated from the gradings themselves, so the
// quotient does not depend on the window.  Throws if the window fails the
// spin bound.
std::vector<PrimaryRecord> classify_primaries(const SCStructure& sc, Branch branch,
                                              const ff::GradingWindow& window);

// f[a][b][c] = coefficient of mu_c in [mu_a, mu_b].
using StructureConstants = std::vector<std::vector<std::vector<Rat>>>;

// Decides whether the currents generate a Higgs branch flavor symmetry:
// every pairwise OPE must close on the given structure constants with
// vanishing level, and every current must descend from a moment operator
// M_a with Q^+ M_a regular and Q^- M_a ~ Omega^0 mu_a. The found M_a are
// returned through `moments` when requested.
Report detect_flavor_symmetry(const SCStructure& sc,
                              const std::vector<ff::FockState>& currents,
                              const StructureConstants& f,
                              std::vector<ff::FockState>* moments = nullptr);

// The involution Q^+ <-> Q^-, sigma -> -sigma; exchanges the two branches.
SCStructure mirror(const SCStructure& sc);

} // namespace rav::sc
