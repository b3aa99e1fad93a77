// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its runtime bound; exceeding it fails the
// criterion even when the checks themselves pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "tileforge/analysis.hpp"
#include "tileforge/encode.hpp"
#include "tileforge/io.hpp"

using namespace tileforge;

namespace {

int failures = 0;

void run(int number, const char* name, double time_limit_s, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= time_limit_s;
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s  %2d %-46s %7.2fs (limit %.0fs)%s%s\n", pass ? "PASS" : "FAIL", number, name, secs,
                time_limit_s, in_time ? "" : " [over time]", note.c_str());
    std::fflush(stdout);
}

Element el(std::initializer_list<i64> free, std::initializer_list<i64> torsion) {
    return Element{std::vector<i64>(free), std::vector<i64>(torsion)};
}

// Independent final-digit oracle: repeated division on the magnitude, then
// the sign rule digit(-x) = p - digit(x).
i64 digit_oracle(i64 p, i64 n) {
    if (n == 0) return 1;
    bool neg = n < 0;
    u64 m = neg ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    while (m % static_cast<u64>(p) == 0) m /= static_cast<u64>(p);
    i64 d = static_cast<i64>(m % static_cast<u64>(p));
    return neg ? p - d : d;
}

bool criterion_final_digit_oracle() {
    for (i64 p : {2, 3, 5, 7, 53}) {
        for (i64 n = -1000000; n <= 1000000; ++n) {
            if (final_digit(p, n) != digit_oracle(p, n)) return false;
            if (mod_floor(n, p) != 0 && final_digit(p, n) != mod_floor(n, p)) return false;
            if (final_digit(p, p * n) != final_digit(p, n)) return false;
        }
        if (final_digit(p, 0) != 1) return false;
    }
    return true;
}

bool criterion_quasi_periodicity() {
    i64 p = 5, pj = 1;
    for (int j = 0; j <= 3; ++j) {
        for (i64 n = -10000; n <= 10000; ++n) {
            if (mod_floor(n, pj) == 0) continue;
            if (final_digit(p, n + pj) != final_digit(p, n)) return false;
        }
        pj *= p;
    }
    return true;
}

bool criterion_classify_complete() {
    PadicParams params = PadicParams::make(3);
    LineValues g(9, 1);
    for (i64 code = 0; code < 512; ++code) {
        for (int k = 0; k < 9; ++k) g[static_cast<std::size_t>(k)] = ((code >> k) & 1) + 1;
        auto mine = classify(params, g);
        // independent exhaustive certificate search, straight from the class
        // definition
        std::optional<LineCertificate> oracle;
        bool constant = true;
        for (i64 v : g) constant = constant && v == g[0];
        if (constant) {
            LineCertificate c;
            c.kind = LineCertificate::Kind::Constant;
            c.value = g[0];
            c.order = 2;
            oracle = c;
        } else {
            for (i64 t = 0; t < 9 && !oracle; ++t)
                for (i64 h = 1; h < 3 && !oracle; ++h) {
                    bool ok = true;
                    for (i64 n = 1; n <= 9 && ok; ++n) {
                        if (mod_floor(n - t, 9) == 0) continue;
                        ok = g[static_cast<std::size_t>(n - 1)] ==
                             mod_floor(h * final_digit(3, n - t), 3);
                    }
                    if (ok) {
                        LineCertificate c;
                        c.kind = LineCertificate::Kind::Affine;
                        c.shift = t;
                        c.scale = h;
                        c.order = 2;
                        oracle = c;
                    }
                }
        }
        if (mine.has_value() != oracle.has_value()) return false;
        if (mine && !(*mine == *oracle)) return false;
        if (mine && !mine->verify(params, g)) return false;
    }
    return true;
}

bool criterion_intersective_partition() {
    GroupSpec h(0, {7, 7});
    auto found = find_intersective_partition(h, 2, 2024, 1000000);
    if (!found.partition) return false;
    if (!verify_intersective(*found.partition).ok()) return false;
    // literal translate-pair check: all 4 * 49^2 combinations
    FiniteIndexer ix(h);
    std::vector<std::vector<i64>> parts(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (const auto& e : found.partition->parts[i]) parts[i].push_back(ix.index_of(e));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (i64 hi = 0; hi < 49; ++hi)
                for (i64 hj = 0; hj < 49; ++hj) {
                    bool meet = false;
                    std::set<i64> translated;
                    for (i64 x : parts[i]) translated.insert(ix.add(x, hi));
                    for (i64 y : parts[j])
                        if (translated.count(ix.add(y, hj))) {
                            meet = true;
                            break;
                        }
                    bool exempt = (i != j && hi == hj);
                    if (!meet && !exempt) return false;
                    if (exempt && meet) return false;  // parts would overlap
                }
    return true;
}

bool criterion_stacking() {
    GroupSpec z6(0, {6});
    Tile f1 = Tile::make(z6, {el({}, {0}), el({}, {1}), el({}, {2})});
    Tile f2 = Tile::make(z6, {el({}, {0}), el({}, {2}), el({}, {4})});
    PeriodicSet a = PeriodicSet::finite(z6, {el({}, {0}), el({}, {3})});
    if (!verify_tiling(a, {f1, f2}).ok) return false;  // (a)

    GroupSpec h(0, {7, 7});
    auto found = find_intersective_partition(h, 2, 7, 1000000);
    if (!found.partition || !verify_intersective(*found.partition).ok()) return false;
    Tile stacked = stack({f1, f2}, *found.partition);
    PeriodicSet lifted = lift_to_product(a, h);
    if (!verify_tiling(lifted, {stacked}).ok) return false;  // (b)

    auto all = enumerate_tilings(stacked.group, stacked);  // (c), complete enumeration
    if (!all.complete || all.tilings.empty()) return false;
    for (const auto& sol : all.tilings) {
        auto det = graph_detect(sol, z6, h, false);
        if (!std::holds_alternative<GraphFunction>(det)) return false;
        const auto& fn = std::get<GraphFunction>(det);
        std::vector<Element> base;
        for (const auto& [b, fv] : fn.points) base.push_back(b);
        if (!verify_tiling(PeriodicSet::finite(z6, base), {f1, f2}).ok) return false;
    }
    return true;
}

bool criterion_encoders() {
    auto per = encoder_equivalence_check(
        encode_periodicity(GroupSpec(1, {}), GroupSpec(0, {2}), el({1}, {})), 4);
    if (!per.coincide || per.system_non_graph != 0 || per.property_count != 2) return false;
    auto shift = encoder_equivalence_check(encode_shifted_mod(3), 6);
    if (!shift.coincide || shift.system_non_graph != 0 || shift.property_count != 3) return false;
    auto lin = encoder_equivalence_check(encode_linear_relation(3, {2}), 4);
    if (!lin.coincide || lin.system_non_graph != 0) return false;
    auto pair = encoder_equivalence_check(encode_boolean_pair(3), 2);
    if (!pair.coincide || pair.system_non_graph != 0) return false;
    return true;
}

// All two-valued odd-gap quadruples on domains of <= 6 points, reduced to
// attained-tuple sets: hypotheses are satisfiable iff some combo constant c
// admits tuples covering all four (v1, v2) pairs and attaining both values
// of f3 and of f4; a 6-point domain then realizes the configuration (4
// coverage points + at most 2 attainment points).
bool criterion_alignment() {
    for (i64 q : {3, 5}) {
        i64 two_q = 2 * q;
        std::vector<std::pair<i64, i64>> odd_pairs;
        for (i64 a = 0; a < two_q; ++a)
            for (i64 b = a + 1; b < two_q; ++b)
                if (mod_floor(a - b, 2) == 1) odd_pairs.emplace_back(a, b);
        for (const auto& p1 : odd_pairs)
            for (const auto& p2 : odd_pairs)
                for (const auto& p3 : odd_pairs)
                    for (const auto& p4 : odd_pairs) {
                        for (i64 c = 0; c < two_q; ++c) {
                            // tuples with combo c, indexed by (v1,v2) choice
                            bool covered[4] = {false, false, false, false};
                            bool seen3[2] = {false, false}, seen4[2] = {false, false};
                            std::array<std::array<i64, 4>, 4> pick{};  // first tuple per (v1,v2)
                            bool picked[4] = {false, false, false, false};
                            std::array<std::array<i64, 4>, 2> extra3{}, extra4{};
                            bool have3[2] = {false, false}, have4[2] = {false, false};
                            for (int s1 = 0; s1 < 2; ++s1)
                                for (int s2 = 0; s2 < 2; ++s2)
                                    for (int s3 = 0; s3 < 2; ++s3)
                                        for (int s4 = 0; s4 < 2; ++s4) {
                                            i64 v1 = s1 ? p1.second : p1.first;
                                            i64 v2 = s2 ? p2.second : p2.first;
                                            i64 v3 = s3 ? p3.second : p3.first;
                                            i64 v4 = s4 ? p4.second : p4.first;
                                            if (mod_floor(v1 + v2 - 2 * v3 - v4, two_q) != c) continue;
                                            int k = s1 * 2 + s2;
                                            covered[k] = true;
                                            seen3[s3] = true;
                                            seen4[s4] = true;
                                            if (!picked[k]) {
                                                pick[static_cast<std::size_t>(k)] = {v1, v2, v3, v4};
                                                picked[k] = true;
                                            }
                                            if (!have3[s3]) {
                                                extra3[static_cast<std::size_t>(s3)] = {v1, v2, v3, v4};
                                                have3[s3] = true;
                                            }
                                            if (!have4[s4]) {
                                                extra4[static_cast<std::size_t>(s4)] = {v1, v2, v3, v4};
                                                have4[s4] = true;
                                            }
                                        }
                            bool satisfiable = covered[0] && covered[1] && covered[2] && covered[3] &&
                                               seen3[0] && seen3[1] && seen4[0] && seen4[1];
                            if (!satisfiable) continue;
                            // hypotheses satisfiable: the conclusion must hold
                            if (min_magnitude_abs(p1.first - p1.second, q) !=
                                min_magnitude_abs(p2.first - p2.second, q))
                                return false;
                            // realize on a concrete domain (4 coverage points
                            // plus attainment points for any value of f3/f4
                            // the picks miss) and cross-check the checker
                            std::array<std::vector<i64>, 4> fs;
                            auto push = [&](const std::array<i64, 4>& t) {
                                for (int i = 0; i < 4; ++i)
                                    fs[static_cast<std::size_t>(i)].push_back(t[static_cast<std::size_t>(i)]);
                            };
                            bool got3[2] = {false, false}, got4[2] = {false, false};
                            for (int k = 0; k < 4; ++k) {
                                push(pick[static_cast<std::size_t>(k)]);
                                got3[pick[static_cast<std::size_t>(k)][2] == p3.second] = true;
                                got4[pick[static_cast<std::size_t>(k)][3] == p4.second] = true;
                            }
                            for (int s = 0; s < 2; ++s) {
                                if (!got3[s]) push(extra3[static_cast<std::size_t>(s)]);
                                if (!got4[s]) push(extra4[static_cast<std::size_t>(s)]);
                            }
                            auto verdict = alignment_check(fs, {p1, p2, p3, p4}, q);
                            if (!verdict.hypotheses_hold() || !verdict.conclusion_holds) return false;
                        }
                    }
    }
    return true;
}

bool criterion_generator_boards() {
    PadicParams p5 = PadicParams::make(5);
    for (i64 a = 0; a < 5; ++a)
        for (i64 b = 0; b < 5; ++b)
            for (i64 c = 0; c < 5; ++c)
                if (!verify_board(generate_affine_board(p5, {0, 624}, a, b, c), VerifyMode::FullOnly).ok)
                    return false;
    return true;
}

bool criterion_pipeline() {
    PadicParams p5 = PadicParams::make(5);
    Board board = generate_affine_board(p5, {0, 624}, 0, 1, 0);
    auto fit = fit_board(board);
    if (!std::holds_alternative<BoardFit>(fit) || !(std::get<BoardFit>(fit) == BoardFit{0, 1, 0}))
        return false;
    Board dec = decimate_rows(board);
    if (!verify_board(dec, VerifyMode::FullOnly).ok) return false;
    auto refit = fit_board(dec);
    if (!std::holds_alternative<BoardFit>(refit) || std::get<BoardFit>(refit).b != 1) return false;
    ScaleReport report = scale_report(board, 2, MatchMode::Raw);
    if (report.entries.size() != 3 || !report.all_match()) return false;
    for (const auto& e : report.entries)
        if (!e.verified || !e.fit) return false;
    return true;
}

bool criterion_window_aperiodicity() {
    PadicParams p5 = PadicParams::make(5);
    for (i64 c = 0; c < 5; ++c) {
        Board board = generate_affine_board(p5, {0, 249}, 0, 1, c);  // height 2 * 5^3
        auto cert = aperiodicity_certificate(board, 25, 1, MatchMode::Normalized);
        if (!std::holds_alternative<AperiodicityCertificate>(cert)) return false;
        const auto& cc = std::get<AperiodicityCertificate>(cert);
        if (!cc.window_aperiodic()) return false;
        // witnesses are explicit and really refute
        for (std::size_t k = 0; k < cc.columns.columns.size(); ++k)
            for (std::size_t qi = 0; qi < cc.columns.columns[k].witnesses.size(); ++qi) {
                i64 m = *cc.columns.columns[k].witnesses[qi];
                i64 q = static_cast<i64>(qi) + 1;
                if (board.cell(static_cast<i64>(k) + 1, m) == board.cell(static_cast<i64>(k) + 1, m + q))
                    return false;
            }
    }
    return true;
}

bool criterion_round_trips() {
    PadicParams p5 = PadicParams::make(5);
    int fixtures = 0;
    for (i64 a = 0; a < 3; ++a)
        for (i64 b = 0; b < 3; ++b)
            for (i64 c = 0; c < 3; ++c) {
                Board board = generate_affine_board(p5, {-10, 89}, a, b, c);
                ++fixtures;
                if (!(parse_board(write_board(board)) == board)) return false;
                FunctionFamily fam = to_functions(board, -10, 89, 0, 0);
                Board back = from_functions(fam);
                back.set_gen(board.gen());
                if (!(back == board)) return false;
            }
    return fixtures >= 20;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    run(1, "final-digit repeated-division oracle", 10, criterion_final_digit_oracle);
    run(2, "quasi-periodicity outside one coset", 1, criterion_quasi_periodicity);
    run(3, "classifier completeness (p=3, all 512 lines)", 1, criterion_classify_complete);
    run(4, "intersective partition of (Z/7)^2", 60, criterion_intersective_partition);
    run(5, "stacking equivalence at desk scale", 300, criterion_stacking);
    run(6, "encoder equivalence on finite quotients", 300, criterion_encoders);
    run(7, "alignment property (q in {3,5}, <=6 points)", 300, criterion_alignment);
    run(8, "generator boards verify (125 cases)", 120, criterion_generator_boards);
    run(9, "fit/decimate pipeline and scale matching", 60, criterion_pipeline);
    run(10, "windowed column aperiodicity", 60, criterion_window_aperiodicity);
    run(11, "file and function-family round-trips", 10, criterion_round_trips);
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
