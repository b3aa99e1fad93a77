#include "tileforge/analysis.hpp"

#include <algorithm>

namespace tileforge {

std::variant<LineFit, LineFitFailure> fit_line(const std::vector<std::pair<i64, i64>>& cells, i64 p) {
    if (static_cast<i64>(cells.size()) < 2 * p)
        throw std::invalid_argument("fit_line needs at least 2p cells");
    // Scan candidates in lex order, tracking which cell eliminated the last
    // survivors for the failure witness.
    std::pair<i64, i64> last_kill{0, 0}, prev_kill{0, 0};
    bool any_kill = false;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = (a == 0 ? 1 : 0); b < p; ++b) {
            bool ok = true;
            for (const auto& [n, v] : cells) {
                i64 lhs = mod_floor(a * n + b, p);
                if (lhs != 0 && lhs != v) {
                    prev_kill = any_kill ? last_kill : std::make_pair(n, v);
                    last_kill = {n, v};
                    any_kill = true;
                    ok = false;
                    break;
                }
            }
            if (ok) return LineFit{a, b};
        }
    return LineFitFailure{{prev_kill, last_kill}};
}

LineFit line_fit_from_certificate(const PadicParams& params, const LineCertificate& cert) {
    if (cert.kind == LineCertificate::Kind::Constant) return LineFit{0, mod_floor(cert.value, params.p)};
    return LineFit{mod_floor(cert.scale, params.p), mod_floor(-cert.scale * cert.shift, params.p)};
}

std::variant<BoardFit, BoardFitFailure> fit_board(const Board& board) {
    i64 p = board.params().p;
    const auto& w = board.window();
    std::array<i64, 3> last_kill{0, 0, 0}, prev_kill{0, 0, 0};
    bool any_kill = false;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b)
            for (i64 c = (a == 0 && b == 0 ? 1 : 0); c < p; ++c) {
                bool ok = true;
                for (i64 m = w.m_lo; m <= w.m_hi && ok; ++m)
                    for (i64 n = 1; n <= board.width(); ++n) {
                        i64 lhs = mod_floor(a * n + b * m + c, p);
                        if (lhs != 0 && lhs != board.cell(n, m)) {
                            prev_kill = any_kill ? last_kill : std::array<i64, 3>{n, m, board.cell(n, m)};
                            last_kill = {n, m, board.cell(n, m)};
                            any_kill = true;
                            ok = false;
                            break;
                        }
                    }
                if (ok) return BoardFit{a, b, c};
            }
    return BoardFitFailure{{prev_kill, last_kill}};
}

Board normalized_board(const Board& board, const BoardFit& fit) {
    i64 p = board.params().p;
    if (mod_floor(fit.b, p) == 0)
        throw std::invalid_argument(
            "normalization impossible: b = 0 (board is constant on columns off the zero set)");
    i64 p2 = board.params().width;
    i64 b_inv = mod_inverse(fit.b, p);
    // delta(n) = least nonnegative representative of b^{-1}(a*n + c) mod p^2.
    // b^{-1} is lifted mod p^2 so that b * delta == a*n + c mod p^2.
    i64 b_inv2 = mod_inverse(fit.b, p2);
    std::vector<i64> delta(static_cast<std::size_t>(board.width() + 1), 0);
    i64 d_min = p2, d_max = 0;
    for (i64 n = 1; n <= board.width(); ++n) {
        i64 d = mod_floor(b_inv2 * mod_floor(fit.a * n + fit.c, p2), p2);
        delta[static_cast<std::size_t>(n)] = d;
        d_min = std::min(d_min, d);
        d_max = std::max(d_max, d);
    }
    BoardWindow out_win{board.window().m_lo + d_max, board.window().m_hi + d_min};
    if (out_win.m_lo > out_win.m_hi) throw std::invalid_argument("window too short to normalize");
    Board out(board.params(), out_win);
    for (i64 n = 1; n <= board.width(); ++n)
        for (i64 m = out_win.m_lo; m <= out_win.m_hi; ++m) {
            i64 v = board.cell(n, m - delta[static_cast<std::size_t>(n)]);
            out.set_cell(n, m, mod_floor(b_inv * v, p));
        }
    return out;
}

Board decimate_rows(const Board& board) {
    i64 p = board.params().p;
    const auto& w = board.window();
    i64 lo = floor_div(w.m_lo + p - 1, p);  // ceil(m_lo / p)
    i64 hi = floor_div(w.m_hi, p);
    if (hi - lo + 1 < 2) throw std::invalid_argument("window too short: need two multiples of p");
    Board out(board.params(), BoardWindow{lo, hi});
    for (i64 m = lo; m <= hi; ++m)
        for (i64 n = 1; n <= board.width(); ++n) out.set_cell(n, m, board.cell(n, p * m));
    return out;
}

bool ScaleReport::all_match() const {
    for (bool f : coefficient_matches)
        if (!f) return false;
    return true;
}

ScaleReport scale_report(const Board& board, int depth, MatchMode mode) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    i64 need = 2;
    for (int s = 0; s < depth; ++s) need = checked_mul(need, board.params().p);
    if (board.window().height() < need)
        throw std::invalid_argument("window too short for the requested depth");
    ScaleReport report;
    report.mode = mode;
    Board current = board;
    for (int s = 0; s <= depth; ++s) {
        ScaleEntry entry;
        entry.scale = s;
        entry.window = current.window();
        entry.verified = verify_board(current, VerifyMode::FullOnly).ok;
        auto fit = fit_board(current);
        if (std::holds_alternative<BoardFit>(fit))
            entry.fit = std::get<BoardFit>(fit);
        else
            entry.fit_failure = std::get<BoardFitFailure>(fit);
        report.entries.push_back(entry);
        if (!entry.fit) break;  // fit failure stops the chain
        if (s == depth) break;
        try {
            if (mode == MatchMode::Normalized && mod_floor(entry.fit->b, board.params().p) != 0)
                current = decimate_rows(normalized_board(current, *entry.fit));
            else
                current = decimate_rows(current);
        } catch (const std::invalid_argument&) {
            break;  // normalization shifts can exhaust the window early
        }
    }
    for (std::size_t s = 0; s + 1 < report.entries.size(); ++s) {
        const auto& f0 = report.entries[s].fit;
        const auto& f1 = report.entries[s + 1].fit;
        bool match = false;
        if (f0 && f1) {
            if (mode == MatchMode::Normalized)
                // After renormalizing scale s, its vertical coefficient is 1,
                // so the next fit must report 1 (or stay 0 for fits without a
                // vertical term, where nothing was normalized).
                match = (f0->b == 0) ? (f1->b == f0->b) : (f1->b == 1);
            else
                match = f1->b == f0->b;
        }
        report.coefficient_matches.push_back(match);
    }
    return report;
}

std::variant<AperiodicityCertificate, ConstantColumn> aperiodicity_certificate(const Board& board,
                                                                               i64 max_period, int depth,
                                                                               MatchMode mode) {
    ColumnReport columns = column_report(board, max_period);
    for (std::size_t k = 0; k < columns.columns.size(); ++k)
        if (columns.columns[k].constant) return ConstantColumn{static_cast<i64>(k) + 1};
    AperiodicityCertificate cert;
    cert.columns = std::move(columns);
    cert.scales = scale_report(board, depth, mode);
    return cert;
}

}  // namespace tileforge
