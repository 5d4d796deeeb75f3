#pragma once

#include "raviolo/rational.hpp"
#include "raviolo/ravring.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace rav::ff {

// A generating field of a free raviolo vertex algebra.
struct GeneratorDecl {
    std::string name;
    bool fermion = false;
    Rat r;    // R-charge; the Omega tower raises it by one
    Rat spin; // conformal weight
    Rat s;    // S-charge
};

// One creation letter g_{(-n-1)} = (1/n!) (d^n g)_{(-1)}, n >= 0.
struct Letter {
    int gen = 0;
    int n = 0;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Canonical monomial: letters sorted ascending by (generator, index); a
// repeated fermionic letter squares to zero, so canonical monomials repeat
// letters only for bosons.
using Monomial = std::vector<Letter>;

// Finitely supported rational combination of canonical monomials applied to
// the vacuum.  The empty monomial is the vacuum itself.
using FockState = std::map<Monomial, Rat>;

void add_term(FockState& s, const Monomial& m, const Rat& c);
FockState add(FockState a, const FockState& b);
FockState sub(FockState a, const FockState& b);
FockState scale(FockState a, const Rat& c);
bool is_zero(const FockState& s);

struct OpeResult {
    // (m, O1_(m) O2) for m >= 0, nonzero entries only, most singular first.
    std::vector<std::pair<int, FockState>> singular;
    // Entry k is O1_(-k-1) O2 = (1/k!) :(d^k O1) O2:.
    std::vector<FockState> regular;
};

// Grading box for basis enumeration.  The spin bound is mandatory: spins of
// letters are nonnegative, so it is the only grading that can cut the
// enumeration down to a finite set on its own.
struct GradingWindow {
    std::optional<Rat> spin_max;
    std::optional<Rat> r_max;
    std::optional<Rat> s_min;
    std::optional<Rat> s_max;
};

class FreeAlgebra {
public:
    explicit FreeAlgebra(std::string name = "") : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    int add_gen(const GeneratorDecl& g);
    int num_gens() const { return static_cast<int>(gens_.size()); }
    const GeneratorDecl& gen(int i) const { return gens_.at(static_cast<std::size_t>(i)); }
    int find(std::string_view name) const; // -1 when absent

    // Contraction a(z) b(w) ~ sum_m c_m Omega^m_{z-w} with scalar c_m.  The
    // reverse entry is filled in through the skew-symmetry rule
    // c'_m = (-1)^{|a||b|+m} c_m; if both directions are set explicitly they
    // must agree.  Gradings are enforced: a nonzero term needs opposite
    // statistics, R_a+R_b = 1, S_a+S_b = 0 and m = spin_a+spin_b-1.
    void set_contraction(int a, int b, const std::vector<std::pair<int, Rat>>& terms);
    // Overwrites one direction without deriving the other and without grading
    // checks; exists so the axiom checker's sensitivity to a skew-inconsistent
    // table can be exercised.
    void set_contraction_oneway(int a, int b, std::vector<std::pair<int, Rat>> terms);
    const std::vector<std::pair<int, Rat>>& contraction(int a, int b) const;

    // Scalar graded commutator [a_(ka), b_(kb)] of two generator modes; zero
    // unless one mode is an annihilation mode (index >= 0) and the other a
    // creation mode (index < 0).
    Rat mode_pairing(int a, std::int64_t ka, int b, std::int64_t kb) const;

    bool odd(const Monomial& m) const;
    Rat spin(const Monomial& m) const;
    Rat r_charge(const Monomial& m) const;
    Rat s_charge(const Monomial& m) const;
    // Gradings of a homogeneous state; nullopt for zero or mixed states.
    std::optional<bool> odd(const FockState& s) const;
    std::optional<Rat> spin(const FockState& s) const;
    std::optional<Rat> r_charge(const FockState& s) const;
    std::optional<Rat> s_charge(const FockState& s) const;
    // Largest monomial spin occurring in the state (zero state: nullopt).
    std::optional<Rat> max_spin(const FockState& s) const;

    static FockState vacuum() { return {{Monomial{}, Rat(1)}}; }
    FockState gen_state(int g, int deriv = 0) const; // state of d^deriv g
    FockState gen_state(std::string_view name, int deriv = 0) const;

    // Action of the k-th mode of Y(a, z) on v; k >= 0 are the Omega modes,
    // k = -n-1 the z modes.  Memoized on canonical monomial triples.
    FockState apply_mode(const FockState& a, std::int64_t k, const FockState& v) const;
    // a_(-1) b, the normally-ordered product at coincident points.
    FockState normal_product(const FockState& a, const FockState& b) const;
    // The translation operator: d on states, letter by letter.
    FockState derivative(const FockState& a) const;
    FockState derivative(const FockState& a, int order) const;

    OpeResult ope(const FockState& a, const FockState& b, int regular_order) const;

    // All canonical monomials inside the window, lexicographic in the letter
    // sequences; throws when the window cannot pin the enumeration down.
    std::vector<Monomial> enumerate_basis(const GradingWindow& w) const;

    // First failing vertex-algebra axiom instance (vacuum, translation,
    // skew-symmetry, locality) over the sample, or nullopt when all pass.
    // `truncation` is the z/w-power window used for the mode identities and
    // the two-variable locality comparison.
    std::optional<std::string> verify_axioms(const std::vector<FockState>& sample,
                                             int truncation) const;

    std::string str(const Monomial& m) const;
    std::string str(const FockState& s) const;

private:
    FockState apply_monomial(const Monomial& a, std::int64_t k, const Monomial& v) const;
    // Annihilation mode of a single generator on a monomial: contraction
    // terms with Koszul signs (the mode of g carries parity |g|+1).
    FockState gen_ann(int g, std::int64_t rho, const Monomial& v) const;
    FockState gen_ann(int g, std::int64_t rho, const FockState& v) const;
    // Creation letter inserted at its canonical slot with Koszul sign.
    FockState cre_insert(int g, int n, const FockState& v) const;
    std::optional<std::string> check_locality(const FockState& a, const FockState& b,
                                              int trunc) const;

    std::string name_;
    std::vector<GeneratorDecl> gens_;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> table_;
    static const std::vector<std::pair<int, Rat>> kEmptyContraction;
    mutable std::map<std::tuple<Monomial, std::int64_t, Monomial>, FockState> memo_;
};

// A free-field realization bundled with its superconformal composites.
struct FreeTheory {
    FreeAlgebra alg;
    FockState gamma;   // stress field
    FockState sigma;   // R-symmetry current
    FockState q_plus;  // even supercharge, S = +1
    FockState q_minus; // even supercharge, S = -1
};

// Two half-hypermultiplet pairs Z^alpha, psi_alpha with <Z^a psi_b> = delta.
FreeTheory make_fh();
// Perturbative vector multiplet: ghost pair (b, c) and partner pair (phi,
// lambda), <b c> = <phi lambda> = Omega^0.
FreeTheory make_fvpert();
// Single self-paired boson/fermion pair (X, eta) with <X eta> = Omega^0.
FreeTheory make_sfc();

} // namespace rav::ff
