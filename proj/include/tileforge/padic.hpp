#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tileforge/util.hpp"

namespace tileforge {

// Sentinel for the valuation of 0.
inline constexpr i64 kInfiniteValuation = std::numeric_limits<i64>::max();

// Number of times the prime p divides n; kInfiniteValuation at n = 0.
i64 valuation(i64 p, i64 n);

// Final non-zero base-p digit of n, i.e. (n / p^valuation(p,n)) mod p for
// n != 0, with final_digit(p, 0) = 1. Always in [1, p-1].
i64 final_digit(i64 p, i64 n);

// Parameters of the structured-line classes: prime p, board width N = p^2,
// and the class order r in {1, 2} (r controls how much of the bad coset is
// exempt from the defining equation: n == t mod p^r).
struct PadicParams {
    i64 p = 0;
    i64 width = 0;  // N = p^2
    int order = 2;

    static PadicParams make(i64 p, int order = 2);
};

// A line g: {1,...,N} -> (Z/pZ)^x, stored as values[k] = g(k+1) in [1, p-1].
using LineValues = std::vector<i64>;

// Membership evidence for a line: either constant with value c, or affine
// with shift t (canonical mod p^2) and scale h, meaning
//   g(n) = h * final_digit(p, n - t)  for all n with n != t mod p^order.
struct LineCertificate {
    enum class Kind { Constant, Affine };
    Kind kind = Kind::Constant;
    i64 value = 0;  // Constant
    i64 shift = 0;  // Affine t in [0, p^2)
    i64 scale = 0;  // Affine h in [1, p-1]
    int order = 2;

    bool verify(const PadicParams& params, const LineValues& g) const;
    bool consistent(const PadicParams& params, const std::vector<std::pair<i64, i64>>& cells) const;
    // Cells of {1..N} exempt from the defining equation (empty for Constant).
    std::vector<i64> exempt_cells(const PadicParams& params) const;
    std::string str() const;
    bool operator==(const LineCertificate&) const = default;
};

// Classifies a full line. Constant lines report Constant (tie-break over a
// simultaneous affine match); otherwise the lexicographically least
// accepting (t, h) is returned; nullopt means not a member.
std::optional<LineCertificate> classify(const PadicParams& params, const LineValues& g);

// Same search over a partially visible line given as (n, value) pairs with
// n arbitrary integers (values in [1, p-1]). Used for window-truncated
// lines, where membership means some certificate is consistent with every
// visible cell.
std::optional<LineCertificate> classify_cells(const PadicParams& params,
                                              const std::vector<std::pair<i64, i64>>& cells);

}  // namespace tileforge
