#pragma once
#include "raviolo/rational.hpp"

#include <optional>
#include <vector>

namespace rav::la {

// Exact dense linear algebra over the rationals.  Everything runs on checked
// 64-bit rationals first and transparently retries the whole computation with
// arbitrary-precision rationals when an intermediate value overflows; only a
// final result that does not fit back into 64 bits propagates overflow_error.

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

int rank(const Mat& a);

// Basis of { x : A x = 0 }.
std::vector<Vec> kernel_basis(const Mat& a);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Reduced row-echelon basis of the row space.
std::vector<Vec> row_space_basis(const Mat& a);

bool in_span(const std::vector<Vec>& rows, const Vec& v);

// Vectors among `candidates` (in order) that successively enlarge the span of
// `rows`; the returned indices give a basis of a complement of span(rows)
// inside span(rows + candidates).
std::vector<std::size_t> complement_in(const std::vector<Vec>& rows, const std::vector<Vec>& candidates);

} // namespace rav::la
