#pragma once

#include <string>
#include <vector>

#include "tileforge/util.hpp"

namespace tileforge {

// A finitely generated abelian group Z^rank x Z/m1 x ... x Z/mk.
// Text literal: "Z^2 x Z/7 x Z/7" (rank 1 prints as plain "Z", rank 0 omits
// the free part).
struct GroupSpec {
    int rank = 0;
    std::vector<i64> moduli;

    GroupSpec() = default;
    GroupSpec(int r, std::vector<i64> mods);

    static GroupSpec parse(const std::string& literal);
    std::string str() const;

    bool is_finite() const { return rank == 0; }
    i64 torsion_size() const;
    i64 order() const;  // throws for infinite groups

    bool operator==(const GroupSpec&) const = default;
};

// Element of a GroupSpec: free part (length rank) and torsion part (length
// moduli.size(), stored reduced into [0, m_j)).
// Serialized form: ((a1,...,ar);(b1,...,bk)), e.g. ((3,-4);()) in Z^2.
struct Element {
    std::vector<i64> free;
    std::vector<i64> torsion;

    bool operator==(const Element&) const = default;
    std::string str() const;
    static Element parse(const std::string& text);
};

// Lexicographic order on (free, torsion).
bool lex_less(const Element& a, const Element& b);
struct ElementLess {
    bool operator()(const Element& a, const Element& b) const { return lex_less(a, b); }
};

Element normalize(const GroupSpec& g, Element x);
Element zero_element(const GroupSpec& g);
Element add(const GroupSpec& g, const Element& a, const Element& b);
Element neg(const GroupSpec& g, const Element& a);
Element sub(const GroupSpec& g, const Element& a, const Element& b);

// Full-rank integer lattice in Z^rank. The constructor takes the basis as a
// row-major rank x rank matrix whose columns generate the lattice, and
// reduces it to column Hermite normal form (lower triangular, positive
// diagonal, off-diagonal entries reduced mod the diagonal). Coset reduction
// is then a single forward pass, and the canonical representatives are the
// box prod_i [0, h_ii).
class Lattice {
public:
    Lattice() = default;  // rank 0, index 1 (the "finite" lattice)
    Lattice(int rank, const std::vector<i64>& basis_row_major);

    int rank() const { return rank_; }
    i64 index() const;                 // |det|
    const std::vector<i64>& hnf() const { return h_; }

    // Canonical representative of v modulo the lattice, inside the box.
    std::vector<i64> reduce(std::vector<i64> v) const;
    bool contains(const std::vector<i64>& v) const;

    std::string str() const;  // HNF, row-major
    bool operator==(const Lattice&) const = default;

private:
    int rank_ = 0;
    std::vector<i64> h_;  // row-major HNF
};

struct Window {
    std::vector<i64> lo, hi;  // one closed interval per free coordinate

    Window() = default;
    Window(std::vector<i64> l, std::vector<i64> h);
    i64 point_count() const;
};

// Coset representatives of (Z^rank/lat) x torsion, lexicographic, free parts
// in the HNF fundamental box. Count is lat.index() * torsion_size().
std::vector<Element> quotient_elements(const GroupSpec& g, const Lattice& lat);

// All elements with free part in the window box and full torsion range,
// lexicographic.
std::vector<Element> window_points(const GroupSpec& g, const Window& w);

// Dense lexicographic indexing of a finite group (rank 0). Index arithmetic
// mirrors the group operation, which keeps the exhaustive searches on raw
// integers.
class FiniteIndexer {
public:
    explicit FiniteIndexer(const GroupSpec& g);

    const GroupSpec& group() const { return group_; }
    i64 size() const { return size_; }
    i64 index_of(const Element& e) const;
    Element element_at(i64 idx) const;
    i64 add(i64 a, i64 b) const;
    i64 sub(i64 a, i64 b) const;
    i64 neg(i64 a) const;

private:
    GroupSpec group_;
    std::vector<i64> stride_;
    i64 size_ = 1;
};

}  // namespace tileforge
