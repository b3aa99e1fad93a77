#include "tileforge/encode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tileforge {

namespace {

GroupSpec integers() { return GroupSpec(1, {}); }

Tile make_graph_tile(const GroupSpec& base, const GroupSpec& fiber) {
    GroupSpec prod = product_group(base, fiber);
    FiniteIndexer fx(fiber);
    std::vector<Element> elems;
    Element zb = zero_element(base);
    for (i64 k = 0; k < fx.size(); ++k) elems.push_back(product_element(zb, fx.element_at(k)));
    return Tile::make(prod, std::move(elems));
}

}  // namespace

std::string EncodedConstraint::describe() const {
    std::ostringstream out;
    switch (kind) {
        case EncodingKind::Periodicity:
            out << "periodicity v=" << direction.str() << " over " << base.str() << " x " << fiber.str();
            break;
        case EncodingKind::ShiftedMod:
            out << "shifted-mod N=" << modulus;
            break;
        case EncodingKind::LinearRelation: {
            out << "linear 2q=" << two_q << " coeffs=";
            for (std::size_t i = 0; i < coefficients.size(); ++i) out << (i ? "," : "") << coefficients[i];
            break;
        }
        case EncodingKind::BooleanPair:
            out << "boolean-pair 2q=" << two_q;
            break;
    }
    return out.str();
}

EncodedConstraint encode_periodicity(const GroupSpec& base, const GroupSpec& fiber, const Element& v) {
    if (!fiber.is_finite()) throw std::invalid_argument("fiber must be finite");
    EncodedConstraint e;
    e.kind = EncodingKind::Periodicity;
    e.base = base;
    e.fiber = fiber;
    e.product = product_group(base, fiber);
    e.direction = normalize(base, v);
    FiniteIndexer fx(fiber);
    std::vector<Element> elems;
    elems.push_back(product_element(zero_element(base), zero_element(fiber)));
    for (i64 k = 1; k < fx.size(); ++k) elems.push_back(product_element(e.direction, fx.element_at(k)));
    e.tiles.push_back(Tile::make(e.product, std::move(elems)));
    e.graph_tile = make_graph_tile(base, fiber);
    return e;
}

EncodedConstraint encode_shifted_mod(i64 n) {
    if (n < 2) throw std::invalid_argument("shifted-mod needs N >= 2");
    EncodedConstraint e;
    e.kind = EncodingKind::ShiftedMod;
    e.base = integers();
    e.fiber = GroupSpec(0, {n});
    e.product = product_group(e.base, e.fiber);
    e.modulus = n;
    std::vector<Element> elems;
    elems.push_back(Element{{0}, {0}});
    for (i64 y = 0; y < n; ++y)
        if (y != 1) elems.push_back(Element{{1}, {y}});
    e.tiles.push_back(Tile::make(e.product, std::move(elems)));
    e.graph_tile = make_graph_tile(e.base, e.fiber);
    return e;
}

EncodedConstraint encode_linear_relation(i64 q, const std::vector<i64>& coefficients) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (coefficients.empty()) throw std::invalid_argument("need at least one coefficient");
    i64 two_q = 2 * q;
    bool all_zero = true;
    for (i64 a : coefficients) all_zero = all_zero && mod_floor(a, two_q) == 0;
    if (all_zero) throw std::invalid_argument("all-zero coefficients degenerate (E = H)");
    EncodedConstraint e;
    e.kind = EncodingKind::LinearRelation;
    e.base = integers();
    e.fiber = GroupSpec(0, std::vector<i64>(coefficients.size(), two_q));
    e.product = product_group(e.base, e.fiber);
    e.two_q = two_q;
    e.coefficients = coefficients;
    FiniteIndexer fx(e.fiber);
    std::vector<Element> elems;
    for (i64 k = 0; k < fx.size(); ++k) {
        Element y = fx.element_at(k);
        i64 s = 0;
        for (std::size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * y.torsion[i];
        bool in_kernel = mod_floor(s, two_q) == 0;
        elems.push_back(product_element(Element{{in_kernel ? 0 : 1}, {}}, y));
    }
    e.tiles.push_back(Tile::make(e.product, std::move(elems)));
    e.graph_tile = make_graph_tile(e.base, e.fiber);
    return e;
}

EncodedConstraint encode_boolean_pair(i64 q) {
    if (!is_prime(q) || q < 3) throw std::invalid_argument("q must be a prime >= 3");
    EncodedConstraint e;
    e.kind = EncodingKind::BooleanPair;
    e.base = GroupSpec(1, {2});  // Z x Z/2
    e.fiber = GroupSpec(0, {2 * q});
    e.product = product_group(e.base, e.fiber);
    e.two_q = 2 * q;
    std::vector<Element> first;
    for (i64 y = 0; y <= 1; ++y)
        for (i64 z = 0; z < 2 * q; z += 2) first.push_back(Element{{0}, {y, z}});
    std::vector<Element> second;
    for (const auto& el : first)
        if (el.torsion[1] != 0) second.push_back(el);
    second.push_back(Element{{1}, {0, 0}});
    second.push_back(Element{{1}, {1, 0}});
    e.tiles.push_back(Tile::make(e.product, std::move(first)));
    e.tiles.push_back(Tile::make(e.product, std::move(second)));
    e.graph_tile = make_graph_tile(e.base, e.fiber);
    return e;
}

namespace {

// Folds a rank-1 base onto Z/L (prepending L to the torsion moduli); rank-0
// bases must already match L.
GroupSpec fold_base(const GroupSpec& base, i64 quotient) {
    if (base.rank == 0) {
        if (base.order() != quotient)
            throw std::invalid_argument("quotient incompatible with finite base");
        return base;
    }
    if (base.rank != 1) throw std::invalid_argument("only rank-1 bases can be folded");
    std::vector<i64> mods{quotient};
    mods.insert(mods.end(), base.moduli.begin(), base.moduli.end());
    return GroupSpec(0, std::move(mods));
}

Element fold_element(const GroupSpec& base, i64 quotient, const Element& e) {
    if (base.rank == 0) return e;
    Element out;
    out.torsion.push_back(mod_floor(e.free[0], quotient));
    out.torsion.insert(out.torsion.end(), e.torsion.begin(), e.torsion.end());
    return out;
}

Tile fold_tile(const Tile& t, const GroupSpec& base, const GroupSpec& fiber, i64 quotient) {
    GroupSpec folded_base = fold_base(base, quotient);
    GroupSpec folded_prod = product_group(folded_base, fiber);
    std::vector<Element> elems;
    elems.reserve(t.elements.size());
    for (const auto& el : t.elements) {
        auto [b, f] = split_element(base, fiber, el);
        elems.push_back(product_element(fold_element(base, quotient, b), f));
    }
    std::size_t expected = elems.size();
    Tile out = Tile::make(folded_prod, std::move(elems));
    if (out.size() != expected)
        throw std::invalid_argument("incompatible quotient: tile elements collide when folded");
    return out;
}

}  // namespace

bool property_holds(const EncodedConstraint& e, const FunctionTable& f) {
    FiniteIndexer dom(f.domain);
    FiniteIndexer cod(f.codomain);
    if (static_cast<i64>(f.values.size()) != dom.size())
        throw std::invalid_argument("function table size mismatch");
    switch (e.kind) {
        case EncodingKind::Periodicity: {
            i64 quotient = f.domain.moduli.empty() ? 0 : f.domain.moduli[0];
            Element v = e.base.rank == 1 ? fold_element(e.base, quotient, e.direction)
                                         : normalize(e.base, e.direction);
            i64 voff = dom.index_of(v);
            for (i64 x = 0; x < dom.size(); ++x)
                if (f.values[static_cast<std::size_t>(dom.add(x, voff))] != f.values[static_cast<std::size_t>(x)])
                    return false;
            return true;
        }
        case EncodingKind::ShiftedMod: {
            // domain = Z/L, codomain = Z/N; f(x) = x + c mod N for some c
            i64 c = mod_floor(f.values[0] - 0, e.modulus);
            for (i64 x = 0; x < dom.size(); ++x)
                if (f.values[static_cast<std::size_t>(x)] != mod_floor(x + c, e.modulus)) return false;
            return true;
        }
        case EncodingKind::LinearRelation: {
            std::optional<i64> c;
            for (i64 x = 0; x < dom.size(); ++x) {
                Element y = cod.element_at(f.values[static_cast<std::size_t>(x)]);
                i64 s = 0;
                for (std::size_t i = 0; i < e.coefficients.size(); ++i) s += e.coefficients[i] * y.torsion[i];
                s = mod_floor(s, e.two_q);
                if (!c)
                    c = s;
                else if (*c != s)
                    return false;
            }
            return true;
        }
        case EncodingKind::BooleanPair: {
            // domain = Z/L x Z/2; need {f(x,0), f(x,1)} = {a even, b odd}
            i64 half = dom.size() / 2;
            std::optional<std::pair<i64, i64>> ab;
            for (i64 x = 0; x < half; ++x) {
                Element e0 = zero_element(f.domain), e1 = zero_element(f.domain);
                e0.torsion[0] = x;
                e1.torsion[0] = x;
                e1.torsion[1] = 1;
                i64 u = f.values[static_cast<std::size_t>(dom.index_of(e0))];
                i64 v = f.values[static_cast<std::size_t>(dom.index_of(e1))];
                i64 even = mod_floor(u, 2) == 0 ? u : v;
                i64 odd = mod_floor(u, 2) == 0 ? v : u;
                if (mod_floor(even, 2) != 0 || mod_floor(odd, 2) != 1) return false;
                if (!ab)
                    ab = std::make_pair(even, odd);
                else if (*ab != std::make_pair(even, odd))
                    return false;
            }
            return true;
        }
    }
    return false;
}

std::optional<ForbiddenPattern> sum_constraint_violation(const std::vector<int>& f1,
                                                         const std::vector<int>& f2,
                                                         const std::vector<int>& f3) {
    if (f1.size() != f2.size() || f1.size() != f3.size())
        throw std::invalid_argument("boolean functions must share a domain");
    for (std::size_t x = 0; x < f1.size(); ++x) {
        for (int v : {f1[x], f2[x], f3[x]})
            if (v != 1 && v != -1) throw std::invalid_argument("values must be +-1");
        int s = f1[x] + f2[x] + f3[x];
        if (s == 3 || s == -3) return ForbiddenPattern{x, {f1[x], f2[x], f3[x]}};
    }
    return std::nullopt;
}

std::variant<std::vector<int>, ForbiddenPattern> build_sum_function(const std::vector<int>& f1,
                                                                    const std::vector<int>& f2,
                                                                    const std::vector<int>& f3) {
    if (auto bad = sum_constraint_violation(f1, f2, f3)) return *bad;
    std::vector<int> f4(f1.size());
    for (std::size_t x = 0; x < f1.size(); ++x) f4[x] = f1[x] + f2[x] + f3[x];
    return f4;
}

EncodedConstraint sum_constraint_tiles(i64 q) { return encode_linear_relation(q, {1, 1, 1, -1}); }

i64 boolean_to_ring(int pm_one, i64 two_q) {
    if (pm_one == 1) return 1;
    if (pm_one == -1) return two_q - 1;
    throw std::invalid_argument("boolean value must be +-1");
}

i64 min_magnitude_abs(i64 d, i64 q) {
    i64 r = mod_floor(d, 2 * q);
    if (r > q) r -= 2 * q;
    return std::abs(r);
}

AlignmentVerdict alignment_check(const std::array<std::vector<i64>, 4>& fs,
                                 const std::array<std::pair<i64, i64>, 4>& value_pairs, i64 q) {
    AlignmentVerdict verdict;
    i64 two_q = 2 * q;
    std::size_t domain = fs[0].size();
    for (const auto& f : fs)
        if (f.size() != domain) {
            verdict.inputs_valid = false;
            verdict.input_issue = "functions must share a domain";
            return verdict;
        }
    if (domain == 0) {
        verdict.inputs_valid = false;
        verdict.input_issue = "empty domain";
        return verdict;
    }
    for (std::size_t i = 0; i < 4 && verdict.inputs_valid; ++i) {
        i64 a = mod_floor(value_pairs[i].first, two_q);
        i64 b = mod_floor(value_pairs[i].second, two_q);
        if (a == b) {
            verdict.inputs_valid = false;
            verdict.input_issue = "value pair collapses";
            break;
        }
        if (mod_floor(a - b, 2) != 1) {
            verdict.inputs_valid = false;
            verdict.input_issue = "value gap must be odd";
            break;
        }
        bool seen_a = false, seen_b = false;
        for (i64 v : fs[i]) {
            i64 r = mod_floor(v, two_q);
            if (r == a)
                seen_a = true;
            else if (r == b)
                seen_b = true;
            else {
                verdict.inputs_valid = false;
                verdict.input_issue = "function leaves its value pair";
                break;
            }
        }
        if (verdict.inputs_valid && !(seen_a && seen_b)) {
            verdict.inputs_valid = false;
            verdict.input_issue = "function does not attain both values";
        }
    }
    if (!verdict.inputs_valid) return verdict;

    verdict.combo_constant = true;
    i64 combo0 = mod_floor(fs[0][0] + fs[1][0] - 2 * fs[2][0] - fs[3][0], two_q);
    for (std::size_t x = 1; x < domain; ++x)
        if (mod_floor(fs[0][x] + fs[1][x] - 2 * fs[2][x] - fs[3][x], two_q) != combo0) {
            verdict.combo_constant = false;
            break;
        }

    std::array<bool, 4> seen_pair{false, false, false, false};
    i64 a1 = mod_floor(value_pairs[0].first, two_q);
    i64 a2 = mod_floor(value_pairs[1].first, two_q);
    for (std::size_t x = 0; x < domain; ++x) {
        int which1 = mod_floor(fs[0][x], two_q) == a1 ? 0 : 1;
        int which2 = mod_floor(fs[1][x], two_q) == a2 ? 0 : 1;
        seen_pair[static_cast<std::size_t>(which1 * 2 + which2)] = true;
    }
    verdict.pair_surjective = seen_pair[0] && seen_pair[1] && seen_pair[2] && seen_pair[3];

    verdict.gap1 = min_magnitude_abs(value_pairs[0].first - value_pairs[0].second, q);
    verdict.gap2 = min_magnitude_abs(value_pairs[1].first - value_pairs[1].second, q);
    verdict.conclusion_holds = verdict.gap1 == verdict.gap2;
    return verdict;
}

std::string EquivalenceReport::describe() const {
    std::ostringstream out;
    out << "quotient L=" << quotient << "\n";
    out << "functions " << total_functions << "\n";
    out << "property " << property_count << "\n";
    out << "graph-tiles " << tiling_count << "\n";
    out << "coincide " << (coincide ? "yes" : "no") << "\n";
    for (const auto& f : property_only) {
        out << "mismatch property-only values";
        for (i64 v : f.values) out << " " << v;
        out << "\n";
    }
    for (const auto& f : tiling_only) {
        out << "mismatch tiling-only values";
        for (i64 v : f.values) out << " " << v;
        out << "\n";
    }
    out << "system-tilings " << system_tilings << " non-graph " << system_non_graph << "\n";
    out << "property-tile-tilings " << property_tile_tilings << " non-graph " << property_tile_non_graph
        << "\n";
    out << "complete " << (enumeration_complete ? "yes" : "no") << "\n";
    return out.str();
}

EquivalenceReport encoder_equivalence_check(const EncodedConstraint& e, i64 quotient) {
    if (e.kind == EncodingKind::ShiftedMod && mod_floor(quotient, e.modulus) != 0)
        throw std::invalid_argument("quotient must be a multiple of N");
    GroupSpec base = fold_base(e.base, quotient);
    std::vector<Tile> tiles;
    for (const auto& t : e.tiles) tiles.push_back(fold_tile(t, e.base, e.fiber, quotient));
    Tile graph_tile = fold_tile(e.graph_tile, e.base, e.fiber, quotient);
    GroupSpec prod = product_group(base, e.fiber);

    FiniteIndexer dom(base), cod(e.fiber), px(prod);
    double total = std::pow(static_cast<double>(cod.size()), static_cast<double>(dom.size()));
    if (total > static_cast<double>(1 << 24))
        throw std::invalid_argument("function space too large for exhaustive check");

    EquivalenceReport report;
    report.quotient = quotient;
    report.total_functions = static_cast<i64>(total);

    // Tile offsets as product indices.
    std::vector<std::vector<i64>> offsets;
    for (const auto& t : tiles) {
        std::vector<i64> offs;
        for (const auto& el : t.elements) offs.push_back(px.index_of(el));
        offsets.push_back(std::move(offs));
    }

    std::vector<i64> values(static_cast<std::size_t>(dom.size()), 0);
    std::vector<int> cov(static_cast<std::size_t>(px.size()), 0);
    FunctionTable table{base, e.fiber, values};
    for (;;) {
        table.values = values;
        bool prop = property_holds(e, table);
        bool tiled = true;
        for (const auto& offs : offsets) {
            std::fill(cov.begin(), cov.end(), 0);
            for (i64 x = 0; x < dom.size(); ++x) {
                i64 a = x * cod.size() + values[static_cast<std::size_t>(x)];
                for (i64 off : offs) cov[static_cast<std::size_t>(px.add(a, off))]++;
            }
            for (int c : cov)
                if (c != 1) {
                    tiled = false;
                    break;
                }
            if (!tiled) break;
        }
        if (prop) ++report.property_count;
        if (tiled) ++report.tiling_count;
        if (prop && !tiled) report.property_only.push_back(table);
        if (tiled && !prop) report.tiling_only.push_back(table);
        // odometer
        std::size_t k = values.size();
        while (k > 0) {
            --k;
            if (++values[k] < cod.size()) break;
            values[k] = 0;
            if (k == 0) goto done;
        }
    }
done:
    report.coincide = report.property_only.empty() && report.tiling_only.empty();

    // Enumerate actual tiling solutions: the full system (graph equation
    // first, which also keeps the exact-cover branching narrow), then the
    // property tiles alone.
    std::vector<Tile> system{graph_tile};
    system.insert(system.end(), tiles.begin(), tiles.end());
    auto with_graph = enumerate_system_tilings(prod, system);
    report.system_tilings = static_cast<i64>(with_graph.tilings.size());
    report.enumeration_complete = with_graph.complete;
    for (const auto& sol : with_graph.tilings)
        if (std::holds_alternative<NotAGraph>(graph_detect(sol, base, e.fiber, true)))
            ++report.system_non_graph;
    auto tiles_only = enumerate_system_tilings(prod, tiles);
    report.property_tile_tilings = static_cast<i64>(tiles_only.tilings.size());
    report.enumeration_complete = report.enumeration_complete && tiles_only.complete;
    for (const auto& sol : tiles_only.tilings)
        if (std::holds_alternative<NotAGraph>(graph_detect(sol, base, e.fiber, true)))
            ++report.property_tile_non_graph;
    return report;
}

}  // namespace tileforge
