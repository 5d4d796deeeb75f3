#pragma once
#include "raviolo/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace rav {

// The raviolo ring in one variable is spanned by z^n (n >= 0) and the tower
// Omega^m (m >= 0) with z^n Omega^m = Omega^{m-n} (n <= m, else 0) and
// Omega Omega = 0.  Monomials are keyed by "weight": weight(z^n) = n and
// weight(Omega^m) = -m-1.  Under the degree-0 action weights add, the
// derivative maps weight w to coefficient w at weight w-1, and the residue
// reads weight -1.  Truncation: coefficients at weight >= trunc are unknown
// and never stored; accessing one throws TruncationError.

struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kExactOrder = 1 << 24;

inline int weight_of_z(int n) { return n; }
inline int weight_of_omega(int m) { return -m - 1; }

class RavSeries {
public:
    RavSeries() = default;
    explicit RavSeries(int trunc) : trunc_(trunc) {}

    static RavSeries zero(int trunc = kExactOrder) { return RavSeries(trunc); }
    static RavSeries z_pow(int n, int trunc = kExactOrder);
    static RavSeries omega(int m, int trunc = kExactOrder);

    int trunc() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Smallest stored weight; kExactOrder when zero.
    int lowest_weight() const { return coeffs_.empty() ? kExactOrder : coeffs_.begin()->first; }
    const std::map<int, Scalar>& coeffs() const { return coeffs_; }

    bool trusted(int weight) const { return weight < trunc_; }
    Scalar at_weight(int weight) const;
    Scalar taylor_at(int n) const { return at_weight(weight_of_z(n)); }
    Scalar omega_at(int m) const { return at_weight(weight_of_omega(m)); }

    void set_weight(int weight, const Scalar& value);
    void add_weight(int weight, const Scalar& value);

    RavSeries& operator+=(const RavSeries& o);
    RavSeries& operator-=(const RavSeries& o);
    friend RavSeries operator+(RavSeries a, const RavSeries& b) { return a += b; }
    friend RavSeries operator-(RavSeries a, const RavSeries& b) { return a -= b; }
    friend RavSeries operator*(const RavSeries& a, const RavSeries& b);
    friend RavSeries operator*(const Scalar& s, RavSeries a);

    RavSeries derivative() const;
    // Residue of (this) dz: the Omega^0 coefficient.
    Scalar residue() const { return at_weight(-1); }

    // True when the two series agree on every weight trusted by both sides.
    // `boundary` (optional out) receives the common truncation order.
    static bool agree(const RavSeries& a, const RavSeries& b, int* boundary = nullptr);

    std::string str() const;

private:
    std::map<int, Scalar> coeffs_;
    int trunc_ = kExactOrder;
    void clamp();
};

// Bivariate raviolo expansions.  First slot is the "x" variable (z, or z-w for
// expansions around w), second slot is w.  Monomials are weight pairs; towers
// in distinct variables graded-commute, and the canonical orientation keeps
// the x-tower on the left (reordering is tracked with a Koszul sign since the
// towers are odd).
enum class VarPair { Z_W, ZMW_W };

class BiRav {
public:
    BiRav() = default;
    BiRav(VarPair vars, int truncx, int truncw) : vars_(vars), tx_(truncx), tw_(truncw) {}

    static BiRav zero(VarPair vars, int tx = kExactOrder, int tw = kExactOrder) { return BiRav(vars, tx, tw); }
    static BiRav monomial(VarPair vars, int wx, int ww, const Scalar& c = Scalar(1), int tx = kExactOrder,
                          int tw = kExactOrder);

    VarPair vars() const { return vars_; }
    int truncx() const { return tx_; }
    int truncw() const { return tw_; }
    const std::map<std::pair<int, int>, Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool trusted(int wx, int ww) const { return wx < tx_ && ww < tw_; }

    Scalar at(int wx, int ww) const;
    void add_mono(int wx, int ww, const Scalar& value);

    BiRav& operator+=(const BiRav& o);
    BiRav& operator-=(const BiRav& o);
    friend BiRav operator+(BiRav a, const BiRav& b) { return a += b; }
    friend BiRav operator-(BiRav a, const BiRav& b) { return a -= b; }
    friend BiRav operator*(const BiRav& a, const BiRav& b);
    friend BiRav operator*(const Scalar& s, BiRav a);

    BiRav d_x() const;
    BiRav d_w() const;

    // Coefficient of Omega^0 in the x slot, as a univariate series in w.
    RavSeries residue_x() const;

    static bool agree(const BiRav& a, const BiRav& b);

    std::string str() const;

private:
    std::map<std::pair<int, int>, Scalar> coeffs_;
    VarPair vars_ = VarPair::Z_W;
    int tx_ = kExactOrder, tw_ = kExactOrder;
    int lowx() const;
    int loww() const;
    void clamp();
};

// The three expansion morphisms.
// Omega^m_{z-w} -> sum_n C(m+n,n) w^n Omega^{n+m}_z          (small w)
BiRav expand_zmw_small_w(int m, int order);
// Omega^m_{z-w} -> (-1)^m sum_n C(m+n,n) z^n Omega^{n+m}_w   (small z)
BiRav expand_zmw_small_z(int m, int order);
// Omega^m_z -> sum_n (-1)^n C(m+n,n) (z-w)^n Omega^{n+m}_w   (around w)
BiRav expand_z_around_w(int m, int order);

// A monomial of the three-tower ring K_{z,w,z-w}.  Degree-0 coefficients are
// stored in coordinates adapted to the tower: (z,w) for tower None/Omega_z/
// Omega_w (z-exponent folds into Omega_z, w-exponent into Omega_w), and
// (z-w,w) for Omega_{z-w} (the z-w exponent folds into the tower).  Degree-2
// monomials are the independent products Omega^a_z Omega^b_w.
struct KzwTerm {
    enum Tower { None, OmZ, OmW, OmZW, OmZOmW } tower = None;
    int m = 0;   // tower index (OmZ/OmW/OmZW); Omega_z index for OmZOmW
    int m2 = 0;  // Omega_w index for OmZOmW
    int ze = 0;  // z-exponent (None, OmW)
    int we = 0;  // w-exponent (None, OmZ, OmZW)
    Scalar coeff = Scalar(1);
};

class KzwElem {
public:
    KzwElem() = default;
    static KzwElem zero() { return KzwElem(); }
    static KzwElem z_pow(int n);
    static KzwElem w_pow(int n);
    static KzwElem omega_z(int m);
    static KzwElem omega_w(int m);
    static KzwElem omega_zmw(int m);

    void add_term(const KzwTerm& t);
    const std::vector<KzwTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    KzwElem& operator+=(const KzwElem& o);
    friend KzwElem operator+(KzwElem a, const KzwElem& b) { return a += b; }
    friend KzwElem operator*(const Scalar& s, KzwElem e) {
        for (auto& t : e.terms_) t.coeff = s * t.coeff;
        e.normalize();
        return e;
    }
    // Throws math_error for products whose canonical form would need the
    // degree-2 relation (mixed Omega_{z-w} with Omega_z or Omega_w).
    friend KzwElem operator*(const KzwElem& a, const KzwElem& b);

    BiRav expand_small_w(int order) const;
    BiRav expand_small_z(int order) const;

private:
    std::vector<KzwTerm> terms_;
    void normalize();
};

} // namespace rav
