#pragma once
#include "raviolo/linalg.hpp"
#include "raviolo/rational.hpp"

#include <string>
#include <vector>

namespace rav::lie {

// Dense rational matrices (la::Mat) with the invariant tensors used by the
// extended superconformal algebras: epsilon conventions are fixed globally as
// eps_{12} = eps^{12} = +1 (2d) and eps_{1234} = +1 (4d).

using Mat = la::Mat;

Mat zeros(int rows, int cols);
Mat identity(int n);
Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat scale(const Rat& c, const Mat& a);
Mat mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);
Rat trace(const Mat& a);
bool is_zero(const Mat& a);
// A - tr(A)/n * id
Mat traceless(const Mat& a);

// 2d epsilon with lower/upper indices: eps(0,1) = +1.
Rat eps2(int a, int b);
// 4d totally antisymmetric symbol, eps(0,1,2,3) = +1.
Rat eps4(int i, int j, int k, int l);

// (*A)_{IJ} = 1/2 eps_{IJKL} A^{KL} for a 4x4 matrix A.
Mat star(const Mat& a);

struct NamedBasis {
    std::vector<std::string> names;
    std::vector<Mat> mats;
    int size() const { return static_cast<int>(mats.size()); }
};

// sl(2) basis {e, h, f}: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
const NamedBasis& sl2_basis();
// sl(4) basis: E_ij (i != j) then H_k = E_kk - E_{k+1,k+1}.
const NamedBasis& sl4_basis();
// Skew-symmetric 4x4 basis F_ij = E_ij - E_ji (i < j).
const NamedBasis& skew4_basis();
// Symmetric 4x4 basis: E_ii then G_ij = E_ij + E_ji (i < j).
const NamedBasis& sym4_basis();

// Coordinates of `a` in the given basis; throws math_error if `a` is not in
// its span.
std::vector<Rat> coords_in(const NamedBasis& basis, const Mat& a);

// --- C^2 x C^2 tensors for the big N=4 algebra ---------------------------
// lambda is stored as a 2x2 matrix lambda^{alpha alphadot}.

// Pairing (l1, l2) = eps_{a1 a2} eps_{ad1 ad2} l1^{a1 ad1} l2^{a2 ad2}.
Rat n4_pairing(const Mat& l1, const Mat& l2);
// The traceless 2x2 matrices [l1,l2]_+ and [l1,l2]_-.
Mat n4_bracket_plus(const Mat& l1, const Mat& l2);
Mat n4_bracket_minus(const Mat& l1, const Mat& l2);
// A^+ lambda = (A (x) id) lambda and A^- lambda = (id (x) A) lambda.
Mat n4_act_plus(const Mat& A, const Mat& lambda);
Mat n4_act_minus(const Mat& A, const Mat& lambda);
// Basis e_a (x) e_bdot of C^2 x C^2, names "l11", "l12", "l21", "l22".
const NamedBasis& n4_lambda_basis();

} // namespace rav::lie
