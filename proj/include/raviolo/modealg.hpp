#pragma once
#include "raviolo/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rav::ma {

// ---------------------------------------------------------------------------
// Mode algebras: Lie superalgebras whose elements are towers x_m (m >= 0) of
// modes, with brackets given by guarded piecewise formulas
//
//     [x_m, y_n] = sum over pieces whose guards hold of
//                  sum_t coeff_t(m, n) * (target_t)_{im*m + in*n + i0}.
//
// Structure constants are polynomials in the two mode indices; guards are
// affine integer conditions. Central elements (such as the odd unit xi) are
// single generators rather than towers.
// ---------------------------------------------------------------------------

// Polynomial in the two mode indices m, n with rational coefficients.
class PolyMN {
public:
    struct Mono {
        int em = 0, en = 0;
        Rat c;
    };

    PolyMN() = default;
    static PolyMN constant(const Rat& c);
    // cm*m + cn*n + c0
    static PolyMN linear(const Rat& cm, const Rat& cn, const Rat& c0);
    // binomial(m, k) expanded as a polynomial in m (vanishes on 0 <= m < k).
    static PolyMN binom_m(int k);
    // falling factorial of an affine form: prod_{i<d} (am*m + an*n + a0 - i)
    static PolyMN falling_of(const Rat& am, const Rat& an, const Rat& a0, int d);

    PolyMN& operator+=(const PolyMN& o);
    friend PolyMN operator+(PolyMN a, const PolyMN& b) { return a += b; }
    friend PolyMN operator*(const PolyMN& a, const PolyMN& b);
    PolyMN& scale(const Rat& c);

    Rat eval(std::int64_t m, std::int64_t n) const;
    bool is_zero() const { return monos_.empty(); }
    const std::vector<Mono>& monos() const { return monos_; }
    std::string str() const;

private:
    std::vector<Mono> monos_; // sorted by (em, en), nonzero coefficients
    void normalize();
};

// Affine condition on the mode indices: cm*m + cn*n + c0 (== 0 | >= 0).
struct LinCond {
    int cm = 0, cn = 0, c0 = 0;
    bool eq = false; // true: == 0, false: >= 0
    bool holds(std::int64_t m, std::int64_t n) const {
        const std::int64_t v = cm * m + cn * n + c0;
        return eq ? v == 0 : v >= 0;
    }
};

struct BracketTerm {
    int target = -1;         // generator id
    int im = 0, in = 0, i0 = 0; // output index im*m + in*n + i0
    PolyMN coeff;
};

// All pieces whose guards hold contribute (the pieces are additive).
struct BracketPiece {
    std::vector<LinCond> guards;
    std::vector<BracketTerm> terms;
};

struct GenInfo {
    std::string name;
    bool odd = false;
    bool positive = false; // annihilation side: kills the vacuum
    bool central = false;  // single element rather than a tower
    Rat r;                 // R-charge (index independent)
    Rat s;                 // S-charge (index independent)
    Rat spin0, spin1;      // spin of x_m is spin0 + spin1 * m
};

// A single mode: generator id plus index (central generators use index 0).
using ModeKey = std::pair<int, int>;
// Finite linear combination of modes.
using Combo = std::map<ModeKey, Rat>;

struct JacobiFailure {
    ModeKey x, y, z;
    std::string detail;
};

class ModeAlgebra;

// PBW words in the induced vacuum module: creation letters sorted ascending
// by (generator, index); odd letters never repeat.
using Word = std::vector<ModeKey>;
using ModState = std::map<Word, Rat>;

// Module induced from the one-dimensional module of the positive subalgebra.
// With `universal` set, central generators are kept as (odd, square-zero)
// letters instead of acting by zero, i.e. the module is taken over C[xi].
class VacuumModule {
public:
    VacuumModule(const ModeAlgebra& alg, const Rat& spin_cutoff, bool universal);

    const std::vector<Word>& basis() const { return basis_; }
    static ModState vacuum() { return {{Word{}, Rat(1)}}; }

    // Left action of a single mode; exact (no truncation).
    ModState apply(const ModeKey& mode, const ModState& s) const;
    ModState apply(const Combo& combo, const ModState& s) const;

    Rat spin_of(const Word& w) const;
    bool in_basis(const Word& w) const;
    std::string str(const ModState& s) const;
    std::string word_str(const Word& w) const;

private:
    const ModeAlgebra& alg_;
    Rat cutoff_;
    std::vector<bool> acts_as_zero_; // positive-side marker used for induction
    std::vector<bool> odd_; // generator parities, for Koszul signs
    std::vector<Word> basis_;

    ModState apply_to_word(const ModeKey& mode, const Word& w) const;
    // Insert a creation letter into a sorted word; returns false if the word
    // dies (odd letter repeated).
    static bool insert_letter(const ModeKey& l, bool odd_letter,
                              const std::vector<bool>& odd, Word& w, int& sign);
    void enumerate(std::vector<ModeKey>& letters, std::size_t from, Word& cur,
                   const Rat& spin_used);
};

class ModeAlgebra {
public:
    explicit ModeAlgebra(std::string name) : name_(std::move(name)) {}

    int add_gen(GenInfo info);
    // Stores the formula for [a_m, b_n]; a pair may be set only once.
    void set_bracket(int a, int b, std::vector<BracketPiece> pieces);

    const std::string& name() const { return name_; }
    int num_gens() const { return static_cast<int>(gens_.size()); }
    const GenInfo& gen(int id) const { return gens_.at(static_cast<std::size_t>(id)); }
    int find(const std::string& name) const; // throws if absent
    Rat spin_of(const ModeKey& mode) const;

    // Bracket of two modes. Pairs stored in the opposite order are derived
    // from graded antisymmetry; unset pairs involving a central generator are
    // zero; any other unset pair is an error.
    const Combo& bracket(const ModeKey& a, const ModeKey& b) const;

    // Graded Jacobi identity for all mode triples with indices <= cutoff.
    std::optional<JacobiFailure> check_jacobi(int cutoff) const;
    // [x,y] == -(-1)^{|x||y|} [y,x] wherever both orders carry stored formulas.
    std::optional<std::string> check_antisymmetry(int cutoff) const;
    // Every bracket output must carry the sum of the input (r, spin, s).
    std::optional<std::string> check_gradings(int cutoff) const;
    // Brackets of declared-positive modes must stay in the positive span.
    std::optional<std::string> check_positive_closed(int cutoff) const;

    std::string mode_str(const ModeKey& m) const;
    std::string combo_str(const Combo& c) const;

    const std::map<std::pair<int, int>, std::vector<BracketPiece>>& table() const {
        return table_;
    }

private:
    std::string name_;
    std::vector<GenInfo> gens_;
    std::map<std::pair<int, int>, std::vector<BracketPiece>> table_;
    mutable std::unordered_map<std::uint64_t, Combo> cache_;

    Combo eval_pieces(const std::vector<BracketPiece>& pieces, std::int64_t m,
                      std::int64_t n) const;
    std::vector<ModeKey> modes_up_to(int cutoff) const;

    friend class VacuumModule;
};

// Linear, index-preserving map between mode algebras: generator g of `src`
// maps to sum of (dst generator, coefficient) at the same index.
struct ModeMorphism {
    const ModeAlgebra* src = nullptr;
    const ModeAlgebra* dst = nullptr;
    std::vector<std::vector<std::pair<int, Rat>>> images; // per src generator

    Combo map(const ModeKey& mode) const;
    Combo map(const Combo& combo) const;
    // Checks phi([x,y]) == [phi(x), phi(y)] for all mode pairs <= cutoff.
    std::optional<std::string> check_intertwines(int cutoff) const;
};

Combo bracket_combos(const ModeAlgebra& alg, const Combo& a, const Combo& b);

// The graded Jacobi combination of three modes (zero iff Jacobi holds there).
Combo jacobiator(const ModeAlgebra& alg, const ModeKey& x, const ModeKey& y,
                 const ModeKey& z);

// ---------------------------------------------------------------------------
// OPE presentations. A finite set of fields with declared singular OPEs
//
//     A(z) B(w) ~ sum_k Omega^k_{z-w} (A_{(k)} B)(w),
//
// each coefficient a combination of derivatives of fields; the mode-algebra
// bracket table is compiled from this data. OPEs are stored once per ordered
// pair; the opposite order is derived from OPE skew-symmetry.
// ---------------------------------------------------------------------------

struct FieldTerm {
    int field = -1;
    int d = 0; // derivative count
    Rat c;
};
using FieldCombo = std::vector<FieldTerm>;
// level k -> coefficient field combination
using OpeSingular = std::map<int, FieldCombo>;

class FieldSpec {
public:
    struct Field {
        std::string name;     // display name of the field
        std::string ann_name; // name of the annihilation tower (unused if central)
        std::string cre_name; // name of the creation tower (unused if central)
        bool odd = false;
        bool central = false;
        Rat r, spin, s;
    };

    explicit FieldSpec(std::string name) : name_(std::move(name)) {}

    int add_field(Field f);
    void set_ope(int a, int b, OpeSingular s); // once per ordered pair
    // Declares A(z)B(w) regular (all singular coefficients zero).
    void set_regular(int a, int b) { set_ope(a, b, {}); }

    const std::string& name() const { return name_; }
    int num_fields() const { return static_cast<int>(fields_.size()); }
    const Field& field(int id) const { return fields_.at(static_cast<std::size_t>(id)); }
    int find(const std::string& name) const;

    // (A_{(k)} B), derived through skew-symmetry when only (b, a) is stored;
    // throws if neither order was declared.
    FieldCombo coeff(int a, int b, int level) const;
    int max_level(int a, int b) const;
    bool declared(int a, int b) const;

private:
    std::string name_;
    std::vector<Field> fields_;
    std::map<std::pair<int, int>, OpeSingular> ope_;
};

// Compiles the full bracket table of the mode algebra of the given fields:
// one annihilation and one creation tower per non-central field, one central
// generator per central field. Annihilation towers are marked positive.
ModeAlgebra compile_mode_algebra(const FieldSpec& spec);

// ---------------------------------------------------------------------------
// Built-in algebras.
// ---------------------------------------------------------------------------

FieldSpec raviolo_virasoro_spec();       // Gamma with central charge xi
FieldSpec current_gl1_spec();            // abelian current sigma at level xi/3
FieldSpec current_sl2_spec();            // sl(2) current at level xi/3
FieldSpec svir_n1_spec();
FieldSpec svir_n2_spec();
FieldSpec svir_n3_spec();
FieldSpec svir_n4_spec(const Rat& p);    // one-parameter family, xi = (1-p^2) kappa
FieldSpec evir_spec();                   // exceptional algebra, no central term

// Compiled forms (fresh instances; memoization lives inside each instance).
ModeAlgebra make_raviolo_virasoro();
ModeAlgebra make_current_gl1();
ModeAlgebra make_current_sl2();
ModeAlgebra make_svir_n1();
ModeAlgebra make_svir_n2();
ModeAlgebra make_svir_n3();
ModeAlgebra make_svir_n4(const Rat& p);
ModeAlgebra make_evir();

// The embedding of the N=1 algebra into the N=2 algebra: G, Gamma map
// identically, theta_m -> theta^+_m + theta^-_m, Q_m -> Q^+_m + Q^-_m.
ModeMorphism n1_to_n2_morphism(const ModeAlgebra& n1, const ModeAlgebra& n2);

// The embedding of the N=2 algebra into the N=3 algebra along the Cartan
// direction: S_m -> S[h]_m / 2, theta^+ -> theta[e], theta^- -> theta[f];
// the singlet partner is never hit because Tr(h e) = Tr(h f) = 0.
ModeMorphism n2_to_n3_morphism(const ModeAlgebra& n2, const ModeAlgebra& n3);

} // namespace rav::ma
