#pragma once

#include <array>
#include <optional>
#include <variant>

#include "tileforge/tiling.hpp"

namespace tileforge {

// Total function on a finite group, stored as codomain indices in the
// domain's lexicographic order.
struct FunctionTable {
    GroupSpec domain;
    GroupSpec codomain;
    std::vector<i64> values;

    bool operator==(const FunctionTable&) const = default;
};

enum class EncodingKind { Periodicity, ShiftedMod, LinearRelation, BooleanPair };

// A functional property realized as tiling equations over base x fiber.
// `tiles` are the property tiles; `graph_tile` is the correspondence
// equation ({0} x fiber), whose tiling solutions are exactly the graphs of
// functions base -> fiber. A set satisfies the encoded constraint when it
// tiles by graph_tile and every property tile simultaneously.
struct EncodedConstraint {
    EncodingKind kind;
    GroupSpec base, fiber, product;
    std::vector<Tile> tiles;
    Tile graph_tile;

    // parameters (meaning depends on kind)
    Element direction;              // Periodicity: v
    i64 modulus = 0;                // ShiftedMod: N
    i64 two_q = 0;                  // LinearRelation / BooleanPair: 2q
    std::vector<i64> coefficients;  // LinearRelation

    std::string describe() const;
};

// f(x + v) = f(x): tile ({0} x {0}) u ({v} x (H \ {0})).
EncodedConstraint encode_periodicity(const GroupSpec& base, const GroupSpec& fiber, const Element& v);

// f(x) = x + c mod N for some shift c: tile ({0} x {0}) u ({1} x (Z/N \ {1}))
// over Z x Z/N.
EncodedConstraint encode_shifted_mod(i64 n);

// a_1 f_1(x) + ... + a_K f_K(x) = c for some constant c: tile
// ({0} x E) u ({1} x (H \ E)) over Z x (Z/2q)^K with E the kernel of the
// coefficient form.
EncodedConstraint encode_linear_relation(i64 q, const std::vector<i64>& coefficients);

// {f(x,0), f(x,1)} = {a, b} for some even a and odd b, as two tiles over
// Z x Z/2 x Z/2q.
EncodedConstraint encode_boolean_pair(i64 q);

// Evaluates the encoded property directly on a function table over a finite
// quotient of the base.
bool property_holds(const EncodedConstraint& e, const FunctionTable& f);

// --- the three-variable sum constraint on boolean (+-1) functions ---
//
// (f1, f2, f3)(x) avoids (-1,-1,-1) and (+1,+1,+1) everywhere iff some
// boolean f4 satisfies f1 + f2 + f3 = f4 pointwise.

struct ForbiddenPattern {
    std::size_t index;          // witness x
    std::array<int, 3> values;  // the all-equal triple hit there
};

// Checks the avoidance condition; nullopt when it holds.
std::optional<ForbiddenPattern> sum_constraint_violation(const std::vector<int>& f1,
                                                         const std::vector<int>& f2,
                                                         const std::vector<int>& f3);

// Builds f4 = f1 + f2 + f3 when the avoidance condition holds.
std::variant<std::vector<int>, ForbiddenPattern> build_sum_function(const std::vector<int>& f1,
                                                                    const std::vector<int>& f2,
                                                                    const std::vector<int>& f3);

// The tiling form of the 4-function relation f1 + f2 + f3 - f4 = const,
// via the linear-relation encoder with coefficients (1, 1, 1, -1).
EncodedConstraint sum_constraint_tiles(i64 q);

// +-1 values embedded in Z/2q as 1 and 2q - 1.
i64 boolean_to_ring(int pm_one, i64 two_q);

// --- alignment of two-valued functions ---

// Magnitude of d in Z/2q via the minimal-magnitude representative in (-q, q].
i64 min_magnitude_abs(i64 d, i64 q);

struct AlignmentVerdict {
    bool inputs_valid = true;  // values inside {a_i, b_i}, both attained, odd gaps
    std::string input_issue;
    bool combo_constant = false;   // f1 + f2 - (2 f3 + f4) constant
    bool pair_surjective = false;  // (f1, f2) attains all four value pairs
    i64 gap1 = 0, gap2 = 0;        // |a1 - b1|, |a2 - b2|
    bool conclusion_holds = false;
    bool hypotheses_hold() const { return inputs_valid && combo_constant && pair_surjective; }
};

// All four functions share one finite domain, given positionally.
AlignmentVerdict alignment_check(const std::array<std::vector<i64>, 4>& fs,
                                 const std::array<std::pair<i64, i64>, 4>& value_pairs, i64 q);

// --- exhaustive validation of an encoder on a finite quotient ---

struct EquivalenceReport {
    i64 quotient = 0;
    i64 total_functions = 0;
    i64 property_count = 0;
    i64 tiling_count = 0;
    bool coincide = false;
    std::vector<FunctionTable> property_only;  // wrap-around discrepancies, localized
    std::vector<FunctionTable> tiling_only;
    i64 system_tilings = 0;            // graph equation + property tiles
    i64 system_non_graph = 0;
    i64 property_tile_tilings = 0;     // property tiles alone
    i64 property_tile_non_graph = 0;   // non-graph solutions among those
    bool enumeration_complete = true;
    std::string describe() const;
};

// Folds the encoder onto Z/quotient (a no-op for finite bases, which must
// then match the quotient), enumerates every function base' -> fiber, and
// compares property_holds against "the graph tiles by every property tile".
// Also enumerates the tiling solutions themselves, both for the full system
// (graph equation included) and for the property tiles alone, reporting how
// many fail to be graphs.
EquivalenceReport encoder_equivalence_check(const EncodedConstraint& e, i64 quotient);

}  // namespace tileforge
