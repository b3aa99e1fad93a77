#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "tileforge/abelian.hpp"

namespace tileforge {

// Finite non-empty subset of a group; elements normalized, sorted, unique.
struct Tile {
    GroupSpec group;
    std::vector<Element> elements;

    static Tile make(GroupSpec g, std::vector<Element> elems);
    std::size_t size() const { return elements.size(); }
};

Tile translate(const Tile& t, const Element& by);

// A periodic set: finite union of cosets of lattice x {0}. Residues are
// stored canonically (free part lattice-reduced, torsion normalized),
// sorted and duplicate-free, so membership is a reduce + binary search.
struct PeriodicSet {
    GroupSpec group;
    Lattice lattice;
    std::vector<Element> residues;

    static PeriodicSet make(GroupSpec g, Lattice lat, std::vector<Element> residues);
    // Finite groups carry the trivial rank-0 lattice.
    static PeriodicSet finite(GroupSpec g, std::vector<Element> elems);

    bool contains(const Element& x) const;
    Element reduce(const Element& x) const;
};

PeriodicSet translate(const PeriodicSet& a, const Element& by);

struct TilingDefect {
    std::size_t tile_index;
    Element point;
    i64 count;  // coverage != 1
};

struct TilingReport {
    bool ok = true;
    std::vector<TilingDefect> defects;
};

// #{f in F : x - f in A}
i64 coverage_count(const PeriodicSet& a, const Tile& f, const Element& x);

// Checks A (+) F^(m) = G for every tile over a fundamental domain of the
// lattice (coverage is lattice-periodic, so the domain suffices).
TilingReport verify_tiling(const PeriodicSet& a, const std::vector<Tile>& system);

struct EnumerationResult {
    std::vector<std::vector<Element>> tilings;  // each sorted; list lexicographic
    bool divisibility_ok = true;                // |F| divides |G|
    bool complete = true;                       // false once the node budget stops the search
    std::uint64_t nodes = 0;
};

// All A with A (+) F = G over a finite group, by exact-cover backtracking
// that always branches on the least uncovered element. node_budget = 0 means
// unlimited.
EnumerationResult enumerate_tilings(const GroupSpec& g, const Tile& f, std::uint64_t node_budget = 0);

// Same, but solutions must satisfy every tiling equation in the system
// simultaneously (backtracking on system[0], filtering by the rest).
EnumerationResult enumerate_system_tilings(const GroupSpec& g, const std::vector<Tile>& system,
                                           std::uint64_t node_budget = 0);

// Partition of a finite group into labelled parts. Kept permissive: the
// verifier reports malformed inputs instead of refusing to hold them.
struct Partition {
    GroupSpec group;
    std::vector<std::vector<Element>> parts;
};

struct IntersectiveViolation {
    std::size_t i, j;
    Element shift_difference;  // d = h_i - h_j with (E_i+h_i) cap (E_j+h_j) empty
};

struct IntersectiveReport {
    bool well_formed = true;
    std::string malformed_reason;
    std::vector<IntersectiveViolation> violations;
    bool ok() const { return well_formed && violations.empty(); }
};

// Exhaustively checks that translates of distinct parts always meet except
// at equal shifts, and translates of the same part always meet:
//   (E_i + h_i) cap (E_j + h_j) != 0  unless i != j and h_i = h_j.
IntersectiveReport verify_intersective(const Partition& p);

struct PartitionSearch {
    std::optional<Partition> partition;
    std::uint64_t evaluations = 0;  // candidate partitions scored
    bool exhausted_budget = false;
};

// Seeded deterministic search for an intersective partition into `parts`
// balanced classes. Small groups (parts^|H| <= 2^20) are searched
// exhaustively; otherwise randomized hill-climbing over balanced partitions
// with restarts, every candidate validated exactly.
PartitionSearch find_intersective_partition(const GroupSpec& h, std::size_t parts, u64 seed,
                                            std::uint64_t budget);

GroupSpec product_group(const GroupSpec& g, const GroupSpec& h);
Element product_element(const Element& a, const Element& b);
// Splits an element of g x h back into its factors.
std::pair<Element, Element> split_element(const GroupSpec& g, const GroupSpec& h, const Element& x);

// The stacked tile  U_m (F^(m) x E_m)  in G x H. Requires one tile per part.
Tile stack(const std::vector<Tile>& tiles, const Partition& p);

// Lifts a periodic set A over G to A x {0} over G x H.
PeriodicSet lift_to_product(const PeriodicSet& a, const GroupSpec& h);

struct GraphFunction {
    std::vector<std::pair<Element, Element>> points;  // (base, fiber), lex by base
    std::vector<Element> uncovered;                   // bases with empty fiber
};

struct NotAGraph {
    Element witness_base;
    i64 fiber_count;  // 0 (empty fiber, total mode) or >= 2
};

// Decides whether a subset of G x H is the graph of a function on the given
// base domain. A fiber holding >= 2 points always refutes; in total mode an
// empty fiber refutes as well, otherwise the function may live on a proper
// subset of the domain (the uncovered list).
std::variant<GraphFunction, NotAGraph> graph_detect(const std::vector<Element>& a,
                                                    const GroupSpec& base, const GroupSpec& fiber,
                                                    const std::vector<Element>& base_domain,
                                                    bool require_total);

// Convenience for finite base groups: domain = the whole base.
std::variant<GraphFunction, NotAGraph> graph_detect(const std::vector<Element>& a,
                                                    const GroupSpec& base, const GroupSpec& fiber,
                                                    bool require_total);

}  // namespace tileforge
