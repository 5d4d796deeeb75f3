#pragma once

// Higgs/Coulomb branch chiral rings with their 2-shifted Poisson bracket,
// the A/B twists with their differentials and descendants, the secondary
// bracket, twist cohomology, and the comparison map from the chiral ring.

#include "raviolo/linalg.hpp"
#include "raviolo/scstruct.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rav::br {

// ---------------------------------------------------------------------------
// Chiral ring: bracket and ring assembly on branch primaries.
// ---------------------------------------------------------------------------

// 2-shifted Poisson bracket of two same-branch primaries,
//   {O1, O2} = 1/2 (Psi_{O1,(0)} O2 - (-1)^{|O1||O2|} Psi_{O2,(0)} O1).
// Throws on mixed branches or parity-inhomogeneous states.
ff::FockState poisson_bracket(const sc::SCStructure& sc, const sc::PrimaryRecord& a,
                              const sc::PrimaryRecord& b);

// Superpartner of {O1, O2},
//   1/2 (-1)^{|O1|} (Psi_{O1,(0)} Psi_{O2}
//                    + (-1)^{(|O1|+1)(|O2|+1)} Psi_{O2,(0)} Psi_{O1}).
ff::FockState bracket_partner(const sc::SCStructure& sc, const sc::PrimaryRecord& a,
                              const sc::PrimaryRecord& b);

// The primary basis of one branch on a window together with its normal
// products, brackets, and the verification of the expected structure:
// regular mutual OPEs, bracket superpartners, exact Leibniz, exact Jacobi.
struct ChiralRing {
    sc::Branch branch;
    std::vector<sc::PrimaryRecord> basis;
    std::vector<std::vector<ff::FockState>> products;
    std::vector<std::vector<ff::FockState>> brackets;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

ChiralRing chiral_ring(const sc::SCStructure& sc, sc::Branch branch,
                       const ff::GradingWindow& window);

// rho[a][j][i] = coefficient of O_j in the action of the a-th symmetry
// generator on O_i, so that {M_a, O_i} = sum_j rho[a][j][i] O_j.
using RepMatrices = std::vector<std::vector<std::vector<Rat>>>;

// Verifies that the moment operators M_a act on a primary multiplet by the
// given representation matrices: the OPE M_a(z) Psi_{O_i}(w) must close on
// Omega^0 (- sum_j rho[a][j][i] O_j) and the Poisson bracket {M_a, O_i}
// must equal sum_j rho[a][j][i] O_j.  The moments' superpartners must be
// the given currents.
sc::Report moment_map_check(const sc::SCStructure& sc,
                            const std::vector<ff::FockState>& moments,
                            const std::vector<ff::FockState>& currents,
                            const std::vector<sc::PrimaryRecord>& multiplet,
                            const RepMatrices& rho);

// ---------------------------------------------------------------------------
// Twists.
// ---------------------------------------------------------------------------

enum class Twist { a, b };

// A twist of a superconformal structure: the regraded charges
//   B: R_B = R + sigma_(0), J_B = J - 1/2 sigma_(0)
//   A: R_A = R - sigma_(0), J_A = J + 1/2 sigma_(0)
// together with the twisted stress tensor, current, and supercharges
//   B: Gamma_B = Gamma + 1/2 d(sigma), sigma_B =  sigma, Q_B = Q^+, Q~_B = Q^-
//   A: Gamma_A = Gamma - 1/2 d(sigma), sigma_A = -sigma, Q_A = Q^-, Q~_A = Q^+
// The differential is D = -(Q_tw)_(0); with that sign D Q~ = Gamma_tw, the
// holomorphic descent equation D O^[1] = dO - (D O)^[1] holds on the nose,
// and the descendant of a primary is its superpartner.
struct TwistData {
    sc::SCStructure base;
    Twist twist = Twist::b;
    ff::FockState q;        // Q_tw
    ff::FockState q_tilde;  // Q~_tw
    ff::FockState stress;   // Gamma_tw
    ff::FockState current;  // sigma_tw
    std::vector<std::string> failures;  // twisted-OPE verification
    bool ok() const { return failures.empty(); }
};

// Builds the twist and verifies the twisted N=2 OPEs on all ordered pairs
// of {Gamma_tw, sigma_tw, Q, Q~}: Virasoro at central charge zero, current
// level xi/3, Q/Q~ primaries of twisted spin 1/2 with twisted R-charge
// 2/0, and Q(z)Q~(w) ~ Omega^2(-xi/3) + Omega^1(-sigma_tw) + Omega^0(-Gamma_tw).
TwistData make_twist(const sc::SCStructure& sc, Twist twist);

// Twisted gradings of a basis monomial.
Rat r_twisted(const TwistData& tw, const ff::Monomial& m);
Rat j_twisted(const TwistData& tw, const ff::Monomial& m);

// D O = -(Q_tw)_(0) O.  Squares to zero.
ff::FockState differential(const TwistData& tw, const ff::FockState& v);

// Holomorphic descendant O^[1] = (Q~_tw)_(0) O.  Satisfies
// D O^[1] = dO - (D O)^[1] and O^[2] = 0.
ff::FockState descendant(const TwistData& tw, const ff::FockState& v);

// Secondary bracket
//   {{O1, O2}} = 1/2 (O1^[1]_(0) O2 - (-1)^{|O1||O2|} O2^[1]_(0) O1),
// defined on all parity-homogeneous states; on branch primaries it equals
// the primary Poisson bracket.
ff::FockState secondary_bracket(const TwistData& tw, const ff::FockState& a,
                                const ff::FockState& b);

// The Leibniz homotopy
//   n(O1, O2, O) = 1/2 sum_{l>=0} 1/(l+1) (
//       (-1)^{|O1|}      (d^l O1^[1]/l!)_(-1) (O2^[1]_(l+1) O)
//     + (-1)^{|O1||O2|}  (d^l O2^[1]/l!)_(-1) (O1^[1]_(l+1) O) ).
// The sum is finite: the inner annihilation modes vanish once l+1 exceeds
// the available spin.
ff::FockState leibniz_homotopy(const TwistData& tw, const ff::FockState& a,
                               const ff::FockState& b, const ff::FockState& c);

// Checks the homotopy form of the Leibniz rule for {{-, O}}:
//   D n(O1,O2,O) = {{:O1 O2:, O}} - :O1 {{O2,O}}: - (-1)^{|O||O2|} :{{O1,O}} O2:
//                  + n(D O1, O2, O) + (-1)^{|O1|} n(O1, D O2, O)
//                  - (-1)^{|O1|+|O2|} n(O1, O2, D O).
sc::Report verify_leibniz_homotopy(const TwistData& tw, const ff::FockState& a,
                                   const ff::FockState& b, const ff::FockState& c);

// ---------------------------------------------------------------------------
// Twist cohomology and the comparison map.
// ---------------------------------------------------------------------------

// Window in the twisted gradings: all slices with 0 <= r_tw <= r_max and
// 0 <= j_tw <= j_max.  (The differential preserves j_tw and raises r_tw by
// one, so every such window is stable.)
struct TwistWindow {
    Rat r_max{0};
    Rat j_max{0};
};

struct CohomologyClass {
    ff::FockState rep;
    Rat r, j;  // twisted gradings
};

struct CohomologySlice {
    Rat r, j;
    std::size_t space_dim = 0;   // dimension of the (r_tw, j_tw) slice
    std::size_t kernel_dim = 0;  // dim ker D on the slice
    std::size_t image_dim = 0;   // dim D(previous slice)
    std::vector<std::size_t> classes;  // indices into Cohomology::classes
};

struct Cohomology {
    Twist twist = Twist::b;
    std::vector<CohomologyClass> classes;
    std::vector<CohomologySlice> slices;
    // products[i][j]: coordinates of [rep_i][rep_j] over `classes`; empty
    // optional when the target slice falls outside the window.  Likewise
    // for the induced secondary bracket.
    std::vector<std::vector<std::optional<la::Vec>>> products;
    std::vector<std::vector<std::optional<la::Vec>>> brackets;
    bool bound_ok = false;       // BPS bound held, so the comparison ran
    bool precheck = false;       // every j_tw = 0 window state is primary
    bool isomorphism = false;    // chiral ring -> cohomology bijective here
    std::vector<std::string> notes;
    std::size_t total_dim() const { return classes.size(); }
};

// Computes ker D / im D slice by slice over the window, the induced ring
// and bracket, and the comparison from the branch chiral ring (Higgs for
// the B twist, Coulomb for the A twist): an isomorphism iff every j_tw = 0
// class count matches the primary count and all j_tw > 0 slices die.
// When the comparison map is an isomorphism, primary representatives are
// chosen; otherwise representatives are the echelon kernel vectors
// surviving the image quotient.
Cohomology twist_cohomology(const TwistData& tw, const TwistWindow& window);

} // namespace rav::br
