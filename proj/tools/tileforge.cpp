// tileforge: exact tiling/encoding/board toolkit CLI.
//
// Exit codes: 0 = ok or clean report, 1 = report with defects, 2 = usage or
// input error. Every report opens with a header recording the run
// configuration (seed/budget) for reproducibility.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tileforge/analysis.hpp"
#include "tileforge/encode.hpp"
#include "tileforge/io.hpp"

using namespace tileforge;

namespace {

std::string header(const std::string& cmd, u64 seed = 0, u64 budget = 0) {
    std::ostringstream out;
    out << "# cmd=" << cmd << " seed=" << seed << " budget=" << budget << "\n";
    return out.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

int run_verify_tiling(const std::string& instance_path) {
    TilingInstance inst = parse_instance(read_file(instance_path));
    auto a = inst.candidate();
    if (!a) throw std::invalid_argument("instance has no residues: nothing to verify");
    if (inst.tiles.empty()) throw std::invalid_argument("instance has no tiles");
    TilingReport report = verify_tiling(*a, inst.tiles);
    std::ostringstream out;
    out << header("verify-tiling");
    out << "group " << inst.group.str() << "\n";
    out << "tiles " << inst.tiles.size() << "\n";
    out << "ok " << (report.ok ? "yes" : "no") << "\n";
    for (const auto& d : report.defects)
        out << "defect tile=" << d.tile_index << " at=" << d.point.str() << " count=" << d.count << "\n";
    std::cout << out.str();
    return report.ok ? 0 : 1;
}

int run_find_partition(const std::string& group_literal, std::size_t parts, u64 seed, u64 budget,
                       const std::string& out_path) {
    GroupSpec h = GroupSpec::parse(group_literal);
    auto found = find_intersective_partition(h, parts, seed, budget);
    std::ostringstream out;
    out << header("find-partition", seed, budget);
    out << "group " << h.str() << "\n";
    out << "parts " << parts << "\n";
    out << "evaluations " << found.evaluations << "\n";
    if (!found.partition) {
        out << "result not-found" << (found.exhausted_budget ? " (budget exhausted)" : " (search space exhausted)")
            << "\n";
        std::cout << out.str();
        return 1;
    }
    out << "result found\n";
    std::cout << out.str();
    std::string body = header("find-partition", seed, budget) + write_partition(*found.partition);
    emit(out_path, body);
    return 0;
}

int run_stack(const std::string& instance_path, const std::string& partition_path,
              const std::string& out_path) {
    TilingInstance inst = parse_instance(read_file(instance_path));
    Partition p = parse_partition(read_file(partition_path));
    Tile stacked = stack(inst.tiles, p);
    TilingInstance out_inst;
    out_inst.group = stacked.group;
    if (inst.lattice) out_inst.lattice = inst.lattice;
    if (inst.residues) {
        auto a = inst.candidate();
        out_inst.residues = lift_to_product(*a, p.group).residues;
    }
    out_inst.tiles.push_back(stacked);
    emit(out_path, write_instance(out_inst));
    return 0;
}

EncodedConstraint build_encoder(const std::string& name, const std::string& h_literal, i64 v, i64 n,
                                i64 q, const std::vector<i64>& coeffs, i64 base_order) {
    if (name == "periodicity") {
        GroupSpec base = base_order > 0 ? GroupSpec(0, {base_order}) : GroupSpec(1, {});
        GroupSpec fiber = GroupSpec::parse(h_literal);
        Element dir = base_order > 0 ? Element{{}, {v}} : Element{{v}, {}};
        return encode_periodicity(base, fiber, dir);
    }
    if (name == "shift") return encode_shifted_mod(n);
    if (name == "linear") return encode_linear_relation(q, coeffs);
    if (name == "boolpair") return encode_boolean_pair(q);
    throw std::invalid_argument("unknown encoder '" + name + "'");
}

int run_encode(const std::string& name, const std::string& h_literal, i64 v, i64 n, i64 q,
               const std::vector<i64>& coeffs, i64 base_order, bool with_graph_tile,
               const std::string& out_path) {
    EncodedConstraint e = build_encoder(name, h_literal, v, n, q, coeffs, base_order);
    TilingInstance inst;
    inst.group = e.product;
    if (e.product.rank == 0) inst.lattice = std::nullopt;
    if (with_graph_tile) inst.tiles.push_back(e.graph_tile);
    for (const auto& t : e.tiles) inst.tiles.push_back(t);
    emit(out_path, write_instance(inst));
    return 0;
}

int run_encode_check(const std::string& name, const std::string& h_literal, i64 v, i64 n, i64 q,
                     const std::vector<i64>& coeffs, i64 base_order, i64 quotient) {
    EncodedConstraint e = build_encoder(name, h_literal, v, n, q, coeffs, base_order);
    EquivalenceReport report = encoder_equivalence_check(e, quotient);
    std::cout << header("encode-check");
    std::cout << "encoder " << e.describe() << "\n";
    std::cout << report.describe();
    bool clean = report.coincide && report.system_non_graph == 0;
    return clean ? 0 : 1;
}

int run_padic_eval(i64 p, i64 from, i64 to) {
    std::cout << header("padic-eval");
    std::cout << "n nu f\n";
    for (i64 n = from; n <= to; ++n) {
        i64 nu = valuation(p, n);
        std::cout << n << " ";
        if (nu == kInfiniteValuation)
            std::cout << "inf";
        else
            std::cout << nu;
        std::cout << " " << final_digit(p, n) << "\n";
    }
    return 0;
}

int run_padic_classify(i64 p, int order, const std::string& line_path) {
    auto [params, values] = parse_line(read_file(line_path), order);
    if (params.p != p && p != 0) throw std::invalid_argument("line file p does not match --p");
    auto cert = classify(params, values);
    std::cout << header("padic-classify");
    std::cout << "p " << params.p << " r " << params.order << "\n";
    if (cert) {
        std::cout << "member yes\n" << "certificate " << cert->str() << "\n";
        return 0;
    }
    std::cout << "member no\n";
    return 1;
}

BoardWindow parse_window(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("window must be mlo:mhi");
    return BoardWindow{parse_i64(spec.substr(0, colon)), parse_i64(spec.substr(colon + 1))};
}

int run_sudoku_gen(i64 p, i64 a, i64 b, i64 c, const std::string& window, const std::string& out_path) {
    Board board = generate_affine_board(PadicParams::make(p), parse_window(window), a, b, c);
    emit(out_path, write_board(board));
    return 0;
}

int run_sudoku_verify(const std::string& board_path, const std::string& partial) {
    Board board = parse_board(read_file(board_path));
    VerifyMode mode = partial == "extend" ? VerifyMode::ExtendPartial : VerifyMode::FullOnly;
    BoardReport report = verify_board(board, mode);
    std::cout << header("sudoku-verify");
    std::cout << "mode " << (mode == VerifyMode::ExtendPartial ? "extend-partial" : "full-only") << "\n";
    std::cout << "full-lines " << report.full_lines << " partial-lines " << report.partial_lines << "\n";
    std::cout << "ok " << (report.ok ? "yes" : "no") << "\n";
    for (const auto& d : report.defects) {
        std::cout << "defect line j=" << d.line.slope << " i=" << d.line.intercept << " cells";
        for (auto [n, val] : d.cells) std::cout << " (" << n << "," << val << ")";
        std::cout << "\n";
    }
    return report.ok ? 0 : 1;
}

int run_sudoku_columns(const std::string& board_path, i64 max_q) {
    Board board = parse_board(read_file(board_path));
    ColumnReport report = column_report(board, max_q);
    std::cout << header("sudoku-columns");
    std::cout << "Q " << max_q << "\n";
    for (std::size_t k = 0; k < report.columns.size(); ++k) {
        const auto& col = report.columns[k];
        std::cout << "column " << (k + 1) << (col.constant ? " constant" : "");
        if (!col.constant) {
            i64 refuted = 0;
            for (const auto& w : col.witnesses) refuted += w.has_value();
            std::cout << " refuted " << refuted << "/" << max_q;
            for (i64 qq = 1; qq <= max_q; ++qq)
                if (!col.witnesses[static_cast<std::size_t>(qq - 1)]) std::cout << " undecided=" << qq;
        }
        std::cout << "\n";
    }
    std::cout << "all-refuted " << (report.all_refuted() ? "yes" : "no") << "\n";
    return report.all_refuted() ? 0 : 1;
}

int run_sudoku_search(i64 p, const std::string& window, u64 budget, std::size_t max_boards,
                      const std::vector<std::string>& fixes, const std::string& out_prefix) {
    PadicParams params = PadicParams::make(p);
    std::vector<CellAssignment> fixed;
    for (const auto& f : fixes) {
        auto toks = split_ws(f);
        std::string flat;
        for (char ch : f) flat += (ch == ',') ? ' ' : ch;
        toks = split_ws(flat);
        if (toks.size() != 3) throw std::invalid_argument("--fix expects n,m,value");
        fixed.push_back({parse_i64(toks[0]), parse_i64(toks[1]), parse_i64(toks[2])});
    }
    auto result = search_boards(params, parse_window(window), fixed, budget, max_boards);
    std::cout << header("sudoku-search", 0, budget);
    std::cout << "boards " << result.boards.size() << "\n";
    std::cout << "nodes " << result.nodes << "\n";
    std::cout << "complete " << (result.complete ? "yes" : "no") << "\n";
    if (!out_prefix.empty()) {
        for (std::size_t k = 0; k < result.boards.size(); ++k)
            write_file(out_prefix + std::to_string(k) + ".board", write_board(result.boards[k]));
    }
    return 0;
}

int run_render(const std::string& board_path, const std::string& format, const std::string& out_path) {
    Board board = parse_board(read_file(board_path));
    if (format == "ascii")
        emit(out_path, render_ascii(board));
    else if (format == "pgm")
        emit(out_path, render_pgm(board));
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    return 0;
}

int run_analyze(const std::string& board_path, int depth, i64 max_q, bool normalize_mode) {
    Board board = parse_board(read_file(board_path));
    MatchMode mode = normalize_mode ? MatchMode::Normalized : MatchMode::Raw;
    std::cout << header("analyze");
    std::cout << "depth " << depth << " Q " << max_q << " mode "
              << (normalize_mode ? "normalized" : "raw") << "\n";
    auto cert = aperiodicity_certificate(board, max_q, depth, mode);
    if (std::holds_alternative<ConstantColumn>(cert)) {
        std::cout << "error constant-column n=" << std::get<ConstantColumn>(cert).column << "\n";
        return 1;
    }
    const auto& c = std::get<AperiodicityCertificate>(cert);
    for (const auto& entry : c.scales.entries) {
        std::cout << "scale " << entry.scale << " window [" << entry.window.m_lo << "," << entry.window.m_hi
                  << "] verified " << (entry.verified ? "yes" : "no");
        if (entry.fit)
            std::cout << " fit (" << entry.fit->a << "," << entry.fit->b << "," << entry.fit->c << ")";
        else
            std::cout << " fit none";
        std::cout << "\n";
    }
    for (std::size_t s = 0; s < c.scales.coefficient_matches.size(); ++s)
        std::cout << "match " << s << "->" << (s + 1) << " "
                  << (c.scales.coefficient_matches[s] ? "yes" : "no") << "\n";
    i64 worst = 0;
    for (const auto& col : c.columns.columns)
        for (std::size_t qi = 0; qi < col.witnesses.size(); ++qi)
            if (!col.witnesses[qi]) worst = std::max<i64>(worst, static_cast<i64>(qi) + 1);
    std::cout << "columns " << c.columns.columns.size() << " refuted-up-to "
              << (worst == 0 ? max_q : worst - 1) << "\n";
    std::cout << "window-aperiodic " << (c.window_aperiodic() ? "yes" : "no") << "\n";
    return c.window_aperiodic() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tileforge: exact translational-tiling and structured-board toolkit"};
    app.require_subcommand(1);

    // verify-tiling
    std::string instance_path;
    auto* vt = app.add_subcommand("verify-tiling", "verify A (+) F^(m) = G for an instance file");
    vt->add_option("--instance", instance_path, "instance file")->required();

    // find-partition
    std::string group_literal;
    std::size_t parts = 2;
    u64 seed = 0, budget = 1000000;
    std::string out_path;
    auto* fp = app.add_subcommand("find-partition", "search for an intersective partition");
    fp->add_option("--group", group_literal, "finite group literal, e.g. \"Z/7 x Z/7\"")->required();
    fp->add_option("--parts", parts, "number of parts");
    fp->add_option("--seed", seed, "search seed");
    fp->add_option("--budget", budget, "candidate evaluation budget");
    fp->add_option("--out", out_path, "write the partition file here");

    // stack
    std::string partition_path;
    auto* st = app.add_subcommand("stack", "stack a tile system against a partition");
    st->add_option("--instance", instance_path, "instance file with the tiles")->required();
    st->add_option("--partition", partition_path, "partition file")->required();
    st->add_option("--out", out_path, "output instance file");

    // encode
    std::string enc_name, enc_checked, h_literal = "Z/2";
    i64 enc_v = 1, enc_n = 3, enc_q = 3, base_order = 0, quotient = 0;
    std::vector<i64> coeffs;
    bool with_graph_tile = true;
    auto* en = app.add_subcommand("encode", "emit tiles for a functional-equation encoder");
    en->add_option("name", enc_name, "periodicity|shift|linear|boolpair|check")->required();
    en->add_option("--encoder", enc_checked, "encoder to check (with 'check')");
    en->add_option("--fiber", h_literal, "fiber group literal (periodicity)");
    en->add_option("--v", enc_v, "direction (periodicity)");
    en->add_option("--N", enc_n, "modulus (shift)");
    en->add_option("--q", enc_q, "prime q (linear/boolpair)");
    en->add_option("--coeffs", coeffs, "coefficients (linear)");
    en->add_option("--base-order", base_order, "use a finite base Z/L instead of Z");
    en->add_option("--L", quotient, "quotient for 'check'");
    en->add_flag("--graph-tile,!--no-graph-tile", with_graph_tile, "include the graph equation tile");
    en->add_option("--out", out_path, "output instance file");

    // padic
    i64 pp = 5, from = -10, to = 10;
    int order = 2;
    std::string line_path;
    auto* pe = app.add_subcommand("padic", "valuation / final digit / line classification");
    auto* pe_eval = pe->add_subcommand("eval", "print n, nu_p(n), digit over a range");
    pe_eval->add_option("--p", pp, "prime")->required();
    pe_eval->add_option("--from", from, "range start");
    pe_eval->add_option("--to", to, "range end");
    auto* pe_cls = pe->add_subcommand("classify", "classify a line file");
    pe_cls->add_option("--p", pp, "prime (cross-checked against the file)");
    pe_cls->add_option("--r", order, "class order 1 or 2");
    pe_cls->add_option("--line", line_path, "line file")->required();

    // sudoku
    i64 ga = 0, gb = 1, gc = 0, max_q = 25;
    std::string window = "0:624", board_path, partial = "skip", format = "ascii", out_prefix;
    std::size_t max_boards = 16;
    std::vector<std::string> fixes;
    auto* su = app.add_subcommand("sudoku", "board generation / verification / search");
    auto* su_gen = su->add_subcommand("gen", "generate the affine-argument board");
    su_gen->add_option("--p", pp, "prime")->required();
    su_gen->add_option("--a", ga, "n coefficient");
    su_gen->add_option("--b", gb, "m coefficient");
    su_gen->add_option("--c", gc, "constant");
    su_gen->add_option("--window", window, "mlo:mhi");
    su_gen->add_option("--out", out_path, "output board file");
    auto* su_ver = su->add_subcommand("verify", "verify a board file");
    su_ver->add_option("--board", board_path, "board file")->required();
    su_ver->add_option("--partial", partial, "skip|extend");
    auto* su_col = su->add_subcommand("columns", "per-column periodicity refutations");
    su_col->add_option("--board", board_path, "board file")->required();
    su_col->add_option("--Q", max_q, "max period");
    auto* su_sea = su->add_subcommand("search", "backtracking board search");
    su_sea->add_option("--p", pp, "prime")->required();
    su_sea->add_option("--window", window, "mlo:mhi");
    su_sea->add_option("--budget", budget, "node budget");
    su_sea->add_option("--max-boards", max_boards, "stop after this many boards");
    su_sea->add_option("--fix", fixes, "fixed cells n,m,value (repeatable)");
    su_sea->add_option("--out-prefix", out_prefix, "write found boards to <prefix><k>.board");
    auto* su_ren = su->add_subcommand("render", "render a board file");
    su_ren->add_option("--board", board_path, "board file")->required();
    su_ren->add_option("--format", format, "ascii|pgm");
    su_ren->add_option("--out", out_path, "output file");

    // analyze
    int depth = 1;
    bool normalize_mode = false;
    auto* an = app.add_subcommand("analyze", "fits, scale matching and aperiodicity certificate");
    an->add_option("--board", board_path, "board file")->required();
    an->add_option("--depth", depth, "decimation depth");
    an->add_option("--Q", max_q, "max period to refute");
    an->add_flag("--normalize", normalize_mode, "renormalize before each decimation");

    // render (alias of sudoku render)
    auto* re = app.add_subcommand("render", "render a board file");
    re->add_option("--board", board_path, "board file")->required();
    re->add_option("--format", format, "ascii|pgm");
    re->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*vt) return run_verify_tiling(instance_path);
        if (*fp) return run_find_partition(group_literal, parts, seed, budget, out_path);
        if (*st) return run_stack(instance_path, partition_path, out_path);
        if (*en) {
            if (enc_name == "check")
                return run_encode_check(enc_checked, h_literal, enc_v, enc_n, enc_q, coeffs, base_order,
                                        quotient);
            return run_encode(enc_name, h_literal, enc_v, enc_n, enc_q, coeffs, base_order,
                              with_graph_tile, out_path);
        }
        if (*pe_eval) return run_padic_eval(pp, from, to);
        if (*pe_cls) return run_padic_classify(pe_cls->count("--p") ? pp : 0, order, line_path);
        if (*su_gen) return run_sudoku_gen(pp, ga, gb, gc, window, out_path);
        if (*su_ver) return run_sudoku_verify(board_path, partial);
        if (*su_col) return run_sudoku_columns(board_path, max_q);
        if (*su_sea) return run_sudoku_search(pp, window, budget, max_boards, fixes, out_prefix);
        if (*su_ren || *re) return run_render(board_path, format, out_path);
        if (*an) return run_analyze(board_path, depth, max_q, normalize_mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
