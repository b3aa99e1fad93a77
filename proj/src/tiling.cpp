#include "tileforge/tiling.hpp"

#include <algorithm>
#include <numeric>

namespace tileforge {

Tile Tile::make(GroupSpec g, std::vector<Element> elems) {
    if (elems.empty()) throw std::invalid_argument("tile must be non-empty");
    Tile t;
    for (auto& e : elems) e = normalize(g, std::move(e));
    std::sort(elems.begin(), elems.end(), ElementLess{});
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    t.group = std::move(g);
    t.elements = std::move(elems);
    return t;
}

Tile translate(const Tile& t, const Element& by) {
    std::vector<Element> out;
    out.reserve(t.elements.size());
    for (const auto& e : t.elements) out.push_back(add(t.group, e, by));
    return Tile::make(t.group, std::move(out));
}

PeriodicSet PeriodicSet::make(GroupSpec g, Lattice lat, std::vector<Element> residues) {
    if (lat.rank() != g.rank) throw std::invalid_argument("lattice rank does not match group");
    PeriodicSet a;
    a.group = std::move(g);
    a.lattice = std::move(lat);
    for (auto& e : residues) {
        e = normalize(a.group, std::move(e));
        e.free = a.lattice.reduce(std::move(e.free));
    }
    std::sort(residues.begin(), residues.end(), ElementLess{});
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    a.residues = std::move(residues);
    return a;
}

PeriodicSet PeriodicSet::finite(GroupSpec g, std::vector<Element> elems) {
    if (!g.is_finite()) throw std::invalid_argument("PeriodicSet::finite needs a finite group");
    return make(std::move(g), Lattice{}, std::move(elems));
}

Element PeriodicSet::reduce(const Element& x) const {
    Element r = normalize(group, x);
    r.free = lattice.reduce(std::move(r.free));
    return r;
}

bool PeriodicSet::contains(const Element& x) const {
    Element r = reduce(x);
    return std::binary_search(residues.begin(), residues.end(), r, ElementLess{});
}

PeriodicSet translate(const PeriodicSet& a, const Element& by) {
    std::vector<Element> shifted;
    shifted.reserve(a.residues.size());
    for (const auto& e : a.residues) shifted.push_back(add(a.group, e, by));
    return PeriodicSet::make(a.group, a.lattice, std::move(shifted));
}

i64 coverage_count(const PeriodicSet& a, const Tile& f, const Element& x) {
    if (a.group != f.group) throw std::invalid_argument("coverage_count: group mismatch");
    i64 count = 0;
    for (const auto& t : f.elements)
        if (a.contains(sub(a.group, x, t))) ++count;
    return count;
}

TilingReport verify_tiling(const PeriodicSet& a, const std::vector<Tile>& system) {
    TilingReport report;
    auto domain = quotient_elements(a.group, a.lattice);
    for (std::size_t m = 0; m < system.size(); ++m) {
        if (system[m].group != a.group) throw std::invalid_argument("verify_tiling: group mismatch");
        for (const auto& x : domain) {
            i64 c = coverage_count(a, system[m], x);
            if (c != 1) report.defects.push_back({m, x, c});
        }
    }
    report.ok = report.defects.empty();
    return report;
}

namespace {

// Bitmask over the finite group, one word per 64 indices.
struct Mask {
    std::vector<u64> w;
    explicit Mask(i64 bits) : w(static_cast<std::size_t>((bits + 63) / 64), 0) {}
    void set(i64 i) { w[static_cast<std::size_t>(i >> 6)] |= u64{1} << (i & 63); }
    bool test(i64 i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }
    bool intersects(const Mask& o) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] & o.w[k]) return true;
        return false;
    }
    void or_with(const Mask& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    }
    void and_not(const Mask& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= ~o.w[k];
    }
};

struct CoverSearch {
    const FiniteIndexer& ix;
    i64 size;
    std::vector<Mask> translate_mask;    // a -> mask of a + F
    std::vector<std::vector<i64>> covers;  // e -> sorted candidates a with e in a + F
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool complete = true;
    std::vector<i64> chosen;
    std::vector<std::vector<i64>> solutions;

    CoverSearch(const FiniteIndexer& indexer, const Tile& f, std::uint64_t node_budget)
        : ix(indexer), size(indexer.size()), budget(node_budget) {
        std::vector<i64> offsets;
        offsets.reserve(f.elements.size());
        for (const auto& e : f.elements) offsets.push_back(ix.index_of(e));
        translate_mask.assign(static_cast<std::size_t>(size), Mask(size));
        for (i64 a = 0; a < size; ++a)
            for (i64 off : offsets) translate_mask[static_cast<std::size_t>(a)].set(ix.add(a, off));
        covers.assign(static_cast<std::size_t>(size), {});
        for (i64 e = 0; e < size; ++e) {
            for (i64 off : offsets) covers[static_cast<std::size_t>(e)].push_back(ix.sub(e, off));
            auto& v = covers[static_cast<std::size_t>(e)];
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    void run(Mask& covered, i64 first_uncovered) {
        if (budget && nodes >= budget) {
            complete = false;
            return;
        }
        ++nodes;
        i64 e = first_uncovered;
        while (e < size && covered.test(e)) ++e;
        if (e == size) {
            auto sol = chosen;
            std::sort(sol.begin(), sol.end());
            solutions.push_back(std::move(sol));
            return;
        }
        for (i64 a : covers[static_cast<std::size_t>(e)]) {
            const Mask& tm = translate_mask[static_cast<std::size_t>(a)];
            if (covered.intersects(tm)) continue;
            covered.or_with(tm);
            chosen.push_back(a);
            run(covered, e);
            chosen.pop_back();
            covered.and_not(tm);
            if (!complete) return;
        }
    }
};

EnumerationResult enumerate_impl(const GroupSpec& g, const std::vector<Tile>& system,
                                 std::uint64_t node_budget) {
    if (!g.is_finite()) throw std::invalid_argument("enumerate_tilings needs a finite group");
    if (system.empty()) throw std::invalid_argument("empty tile system");
    for (const auto& t : system)
        if (t.group != g) throw std::invalid_argument("tile group mismatch");
    EnumerationResult out;
    FiniteIndexer ix(g);
    for (const auto& t : system)
        if (ix.size() % static_cast<i64>(t.size()) != 0) {
            out.divisibility_ok = false;
            return out;
        }

    CoverSearch search(ix, system[0], node_budget);
    Mask covered(ix.size());
    search.run(covered, 0);
    out.complete = search.complete;
    out.nodes = search.nodes;

    // Filter by the remaining equations, then emit in lexicographic order.
    std::vector<std::vector<i64>> kept;
    for (auto& sol : search.solutions) {
        bool ok = true;
        for (std::size_t m = 1; m < system.size() && ok; ++m) {
            std::vector<i64> offsets;
            for (const auto& e : system[m].elements) offsets.push_back(ix.index_of(e));
            std::vector<int> cov(static_cast<std::size_t>(ix.size()), 0);
            for (i64 a : sol)
                for (i64 off : offsets) cov[static_cast<std::size_t>(ix.add(a, off))]++;
            for (int c : cov)
                if (c != 1) {
                    ok = false;
                    break;
                }
        }
        if (ok) kept.push_back(std::move(sol));
    }
    std::sort(kept.begin(), kept.end());
    for (const auto& sol : kept) {
        std::vector<Element> a;
        a.reserve(sol.size());
        for (i64 idx : sol) a.push_back(ix.element_at(idx));
        out.tilings.push_back(std::move(a));
    }
    return out;
}

}  // namespace

EnumerationResult enumerate_tilings(const GroupSpec& g, const Tile& f, std::uint64_t node_budget) {
    return enumerate_impl(g, {f}, node_budget);
}

EnumerationResult enumerate_system_tilings(const GroupSpec& g, const std::vector<Tile>& system,
                                           std::uint64_t node_budget) {
    return enumerate_impl(g, system, node_budget);
}

namespace {

// Partition respresented as an assignment vector over group indices.
struct AssignmentChecker {
    const FiniteIndexer& ix;
    std::size_t parts;
    i64 size;

    // Counts violated (i, j, d) conditions for the partition given by
    // assign[index] = part. For i == j every difference d must appear within
    // part i; for i != j every d != 0 must appear from part i to part j.
    i64 violations(const std::vector<std::size_t>& assign) const {
        std::size_t m = parts;
        // reached[i][j*size + d] = can we write d = y - x with x in E_i, y in E_j
        std::vector<std::vector<char>> reached(m, std::vector<char>(m * static_cast<std::size_t>(size), 0));
        for (i64 x = 0; x < size; ++x) {
            std::size_t i = assign[static_cast<std::size_t>(x)];
            for (i64 y = 0; y < size; ++y) {
                std::size_t j = assign[static_cast<std::size_t>(y)];
                i64 d = ix.sub(y, x);
                reached[i][j * static_cast<std::size_t>(size) + static_cast<std::size_t>(d)] = 1;
            }
        }
        i64 bad = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (i64 d = 0; d < size; ++d) {
                    if (i != j && d == 0) continue;  // the one allowed failure
                    if (!reached[i][j * static_cast<std::size_t>(size) + static_cast<std::size_t>(d)]) ++bad;
                }
        return bad;
    }
};

Partition assignment_to_partition(const GroupSpec& g, const FiniteIndexer& ix,
                                  const std::vector<std::size_t>& assign, std::size_t parts) {
    Partition p;
    p.group = g;
    p.parts.assign(parts, {});
    for (i64 x = 0; x < ix.size(); ++x) p.parts[assign[static_cast<std::size_t>(x)]].push_back(ix.element_at(x));
    return p;
}

}  // namespace

IntersectiveReport verify_intersective(const Partition& p) {
    IntersectiveReport report;
    if (!p.group.is_finite()) {
        report.well_formed = false;
        report.malformed_reason = "partition group must be finite";
        return report;
    }
    if (p.parts.size() < 2) {
        report.well_formed = false;
        report.malformed_reason = "partition needs at least 2 parts";
        return report;
    }
    FiniteIndexer ix(p.group);
    std::vector<int> owner(static_cast<std::size_t>(ix.size()), -1);
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (p.parts[i].empty()) {
            report.well_formed = false;
            report.malformed_reason = "empty part";
            return report;
        }
        for (const auto& e : p.parts[i]) {
            i64 idx = ix.index_of(normalize(p.group, e));
            if (owner[static_cast<std::size_t>(idx)] != -1) {
                report.well_formed = false;
                report.malformed_reason = "parts overlap at " + ix.element_at(idx).str();
                return report;
            }
            owner[static_cast<std::size_t>(idx)] = static_cast<int>(i);
        }
    }
    for (i64 x = 0; x < ix.size(); ++x)
        if (owner[static_cast<std::size_t>(x)] == -1) {
            report.well_formed = false;
            report.malformed_reason = "parts do not cover " + ix.element_at(x).str();
            return report;
        }

    std::vector<std::size_t> assign(owner.size());
    for (std::size_t k = 0; k < owner.size(); ++k) assign[k] = static_cast<std::size_t>(owner[k]);
    std::size_t m = p.parts.size();
    std::vector<std::vector<char>> reached(m, std::vector<char>(m * static_cast<std::size_t>(ix.size()), 0));
    for (i64 x = 0; x < ix.size(); ++x)
        for (i64 y = 0; y < ix.size(); ++y)
            reached[assign[static_cast<std::size_t>(x)]]
                   [assign[static_cast<std::size_t>(y)] * static_cast<std::size_t>(ix.size()) +
                    static_cast<std::size_t>(ix.sub(y, x))] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (i64 d = 0; d < ix.size(); ++d) {
                if (i != j && d == 0) continue;
                if (!reached[i][j * static_cast<std::size_t>(ix.size()) + static_cast<std::size_t>(d)])
                    report.violations.push_back({i, j, ix.element_at(d)});
            }
    return report;
}

PartitionSearch find_intersective_partition(const GroupSpec& h, std::size_t parts, u64 seed,
                                            std::uint64_t budget) {
    if (!h.is_finite()) throw std::invalid_argument("partition search needs a finite group");
    if (parts < 2) throw std::invalid_argument("need at least 2 parts");
    PartitionSearch result;
    FiniteIndexer ix(h);
    i64 size = ix.size();
    if (static_cast<i64>(parts) > size) {
        result.exhausted_budget = false;
        return result;  // cannot even split
    }
    AssignmentChecker checker{ix, parts, size};

    // Exhaustive mode for small groups: every surjective assignment, in
    // lexicographic order, so impossibility results are definitive.
    double combos = std::pow(static_cast<double>(parts), static_cast<double>(size));
    if (combos <= static_cast<double>(1 << 20)) {
        std::vector<std::size_t> assign(static_cast<std::size_t>(size), 0);
        for (;;) {
            ++result.evaluations;
            bool surjective = true;
            std::vector<char> seen(parts, 0);
            for (auto a : assign) seen[a] = 1;
            for (std::size_t i = 0; i < parts; ++i) surjective = surjective && seen[i];
            if (surjective && checker.violations(assign) == 0) {
                result.partition = assignment_to_partition(h, ix, assign, parts);
                return result;
            }
            // next assignment
            std::size_t k = assign.size();
            while (k > 0) {
                --k;
                if (++assign[k] < parts) break;
                assign[k] = 0;
                if (k == 0) return result;  // wrapped: exhausted all assignments
            }
            if (budget && result.evaluations >= budget) {
                result.exhausted_budget = true;
                return result;
            }
        }
    }

    // Hill-climbing over balanced partitions with seeded restarts. Moves are
    // swaps of two elements in different parts, so part sizes stay fixed.
    Rng rng(seed);
    const std::uint64_t stall_limit = 400;
    while (!budget || result.evaluations < budget) {
        std::vector<std::size_t> assign(static_cast<std::size_t>(size));
        for (std::size_t k = 0; k < assign.size(); ++k) assign[k] = k % parts;
        // Fisher-Yates
        for (std::size_t k = assign.size(); k > 1; --k)
            std::swap(assign[k - 1], assign[static_cast<std::size_t>(rng.bounded(k))]);
        ++result.evaluations;
        i64 score = checker.violations(assign);
        std::uint64_t stall = 0;
        while (score > 0 && stall < stall_limit && (!budget || result.evaluations < budget)) {
            std::size_t x = static_cast<std::size_t>(rng.bounded(static_cast<u64>(size)));
            std::size_t y = static_cast<std::size_t>(rng.bounded(static_cast<u64>(size)));
            if (assign[x] == assign[y]) {
                ++stall;
                continue;
            }
            std::swap(assign[x], assign[y]);
            ++result.evaluations;
            i64 next = checker.violations(assign);
            if (next <= score) {
                stall = (next < score) ? 0 : stall + 1;
                score = next;
            } else {
                std::swap(assign[x], assign[y]);
                ++stall;
            }
        }
        if (score == 0) {
            result.partition = assignment_to_partition(h, ix, assign, parts);
            return result;
        }
    }
    result.exhausted_budget = true;
    return result;
}

GroupSpec product_group(const GroupSpec& g, const GroupSpec& h) {
    if (!h.is_finite()) throw std::invalid_argument("product fiber must be finite");
    std::vector<i64> mods = g.moduli;
    mods.insert(mods.end(), h.moduli.begin(), h.moduli.end());
    return GroupSpec(g.rank, std::move(mods));
}

Element product_element(const Element& a, const Element& b) {
    if (!b.free.empty()) throw std::invalid_argument("fiber element must be torsion-only");
    Element e = a;
    e.torsion.insert(e.torsion.end(), b.torsion.begin(), b.torsion.end());
    return e;
}

std::pair<Element, Element> split_element(const GroupSpec& g, const GroupSpec& h, const Element& x) {
    if (x.torsion.size() != g.moduli.size() + h.moduli.size())
        throw std::invalid_argument("split_element: shape mismatch");
    Element base, fiber;
    base.free = x.free;
    base.torsion.assign(x.torsion.begin(), x.torsion.begin() + static_cast<std::ptrdiff_t>(g.moduli.size()));
    fiber.torsion.assign(x.torsion.begin() + static_cast<std::ptrdiff_t>(g.moduli.size()), x.torsion.end());
    return {base, fiber};
}

Tile stack(const std::vector<Tile>& tiles, const Partition& p) {
    if (tiles.empty()) throw std::invalid_argument("stack: empty tile list");
    if (tiles.size() != p.parts.size())
        throw std::invalid_argument("stack: tile count does not match partition parts");
    const GroupSpec& g = tiles[0].group;
    for (const auto& t : tiles)
        if (t.group != g) throw std::invalid_argument("stack: tiles in different groups");
    GroupSpec prod = product_group(g, p.group);
    std::vector<Element> elems;
    for (std::size_t m = 0; m < tiles.size(); ++m)
        for (const auto& f : tiles[m].elements)
            for (const auto& e : p.parts[m]) elems.push_back(product_element(f, normalize(p.group, e)));
    std::size_t expected = elems.size();
    Tile out = Tile::make(prod, std::move(elems));
    if (out.size() != expected) throw std::invalid_argument("stack: parts overlap");
    return out;
}

PeriodicSet lift_to_product(const PeriodicSet& a, const GroupSpec& h) {
    GroupSpec prod = product_group(a.group, h);
    std::vector<Element> residues;
    residues.reserve(a.residues.size());
    Element zero_h = zero_element(h);
    for (const auto& r : a.residues) residues.push_back(product_element(r, zero_h));
    return PeriodicSet::make(prod, a.lattice, std::move(residues));
}

std::variant<GraphFunction, NotAGraph> graph_detect(const std::vector<Element>& a,
                                                    const GroupSpec& base, const GroupSpec& fiber,
                                                    const std::vector<Element>& base_domain,
                                                    bool require_total) {
    std::vector<std::pair<Element, Element>> split;
    split.reserve(a.size());
    for (const auto& x : a) split.push_back(split_element(base, fiber, x));
    std::sort(split.begin(), split.end(),
              [](const auto& l, const auto& r) { return lex_less(l.first, r.first); });
    // >= 2 points in a fiber always refutes
    for (std::size_t k = 1; k < split.size(); ++k)
        if (split[k].first == split[k - 1].first)
            return NotAGraph{split[k].first, 2};
    std::vector<Element> domain = base_domain;
    std::sort(domain.begin(), domain.end(), ElementLess{});
    GraphFunction fn;
    for (const auto& d : domain) {
        auto it = std::lower_bound(split.begin(), split.end(), d, [](const auto& pr, const Element& key) {
            return lex_less(pr.first, key);
        });
        if (it != split.end() && it->first == d)
            fn.points.push_back(*it);
        else if (require_total)
            return NotAGraph{d, 0};
        else
            fn.uncovered.push_back(d);
    }
    // points outside the stated domain are a shape error
    if (fn.points.size() != split.size())
        throw std::invalid_argument("graph_detect: set contains points outside the base domain");
    return fn;
}

std::variant<GraphFunction, NotAGraph> graph_detect(const std::vector<Element>& a,
                                                    const GroupSpec& base, const GroupSpec& fiber,
                                                    bool require_total) {
    if (!base.is_finite()) throw std::invalid_argument("graph_detect: infinite base needs explicit domain");
    return graph_detect(a, base, fiber, quotient_elements(base, Lattice{}), require_total);
}

}  // namespace tileforge
