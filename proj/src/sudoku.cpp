#include "tileforge/sudoku.hpp"

#include <algorithm>

namespace tileforge {

Board::Board(PadicParams params, BoardWindow window) : params_(params), window_(window) {
    if (window.m_lo > window.m_hi) throw std::invalid_argument("board window is empty");
    if (params_.p > 251) throw std::invalid_argument("board cells are bytes; p must be <= 251");
    i64 cells = checked_mul(window.height(), params_.width);
    cells_.assign(static_cast<std::size_t>(cells), 1);
}

i64 Board::cell(i64 n, i64 m) const {
    if (n < 1 || n > params_.width || m < window_.m_lo || m > window_.m_hi)
        throw std::out_of_range("board cell out of range");
    return cells_[static_cast<std::size_t>((m - window_.m_lo) * params_.width + (n - 1))];
}

void Board::set_cell(i64 n, i64 m, i64 v) {
    if (n < 1 || n > params_.width || m < window_.m_lo || m > window_.m_hi)
        throw std::out_of_range("board cell out of range");
    if (v < 1 || v >= params_.p) throw std::invalid_argument("cell value out of (Z/pZ)^x range");
    cells_[static_cast<std::size_t>((m - window_.m_lo) * params_.width + (n - 1))] =
        static_cast<std::uint8_t>(v);
}

Board generate_affine_board(const PadicParams& params, BoardWindow window, i64 a, i64 b, i64 c) {
    Board board(params, window);
    for (i64 m = window.m_lo; m <= window.m_hi; ++m)
        for (i64 n = 1; n <= params.width; ++n) {
            i64 arg = checked_add(checked_add(checked_mul(a, n), checked_mul(b, m)), c);
            board.set_cell(n, m, final_digit(params.p, arg));
        }
    board.set_gen(GenParams{a, b, c});
    return board;
}

namespace {

// Number of n in [1, N] with slope*n + intercept inside [m_lo, m_hi].
i64 cells_in_window(i64 n_max, i64 slope, i64 intercept, i64 m_lo, i64 m_hi) {
    if (slope == 0) return (intercept >= m_lo && intercept <= m_hi) ? n_max : 0;
    // n in [ (m_lo - i)/j , (m_hi - i)/j ] (order depends on sign of j)
    i64 lo, hi;
    if (slope > 0) {
        lo = floor_div(m_lo - intercept + slope - 1, slope);  // ceil
        hi = floor_div(m_hi - intercept, slope);
    } else {
        lo = floor_div(m_hi - intercept + slope + 1, slope);  // ceil for negative
        hi = floor_div(m_lo - intercept, slope);
    }
    lo = std::max<i64>(lo, 1);
    hi = std::min<i64>(hi, n_max);
    return hi >= lo ? hi - lo + 1 : 0;
}

}  // namespace

void for_each_visible_line(const Board& board, bool include_partial,
                           const std::function<void(LineId, LineSpan)>& fn) {
    i64 n_max = board.width();
    i64 m_lo = board.window().m_lo, m_hi = board.window().m_hi;
    i64 span = m_hi - m_lo;
    // Two in-window cells n < n' satisfy |slope|*(n'-n) <= span, so slopes
    // beyond +-span never yield 2 visible cells; full lines need
    // |slope|*(N-1) <= span.
    i64 max_slope = include_partial ? span : (n_max > 1 ? span / (n_max - 1) : span);
    for (i64 j = -max_slope; j <= max_slope; ++j) {
        i64 i_min = m_lo - std::max(j * 1, j * n_max);
        i64 i_max = m_hi - std::min(j * 1, j * n_max);
        for (i64 i = i_min; i <= i_max; ++i) {
            i64 c = cells_in_window(n_max, j, i, m_lo, m_hi);
            if (c == n_max)
                fn(LineId{j, i}, LineSpan::Full);
            else if (include_partial && c >= 2)
                fn(LineId{j, i}, LineSpan::Partial);
        }
    }
}

std::vector<std::pair<LineId, LineSpan>> visible_lines(const Board& board) {
    std::vector<std::pair<LineId, LineSpan>> out;
    for_each_visible_line(board, true, [&](LineId id, LineSpan s) { out.emplace_back(id, s); });
    return out;
}

std::vector<std::pair<i64, i64>> line_cells(const Board& board, LineId line) {
    std::vector<std::pair<i64, i64>> cells;
    for (i64 n = 1; n <= board.width(); ++n) {
        i64 m = line.slope * n + line.intercept;
        if (m >= board.window().m_lo && m <= board.window().m_hi) cells.emplace_back(n, board.cell(n, m));
    }
    return cells;
}

BoardReport verify_board(const Board& board, VerifyMode mode) {
    BoardReport report;
    // Lines are checked in batches so deep windows (millions of partial
    // lines) never materialize the whole list.
    constexpr std::size_t kBatch = 1 << 16;
    std::vector<std::pair<LineId, LineSpan>> batch;
    std::vector<char> bad;
    auto flush = [&] {
        bad.assign(batch.size(), 0);
        parallel_for(batch.size(), [&](std::size_t k) {
            auto cells = line_cells(board, batch[k].first);
            bad[k] = !classify_cells(board.params(), cells).has_value();
        });
        for (std::size_t k = 0; k < batch.size(); ++k)
            if (bad[k])
                report.defects.push_back({batch[k].first, batch[k].second, line_cells(board, batch[k].first)});
        batch.clear();
    };
    for_each_visible_line(board, mode == VerifyMode::ExtendPartial, [&](LineId id, LineSpan s) {
        (s == LineSpan::Full ? report.full_lines : report.partial_lines)++;
        batch.emplace_back(id, s);
        if (batch.size() >= kBatch) flush();
    });
    flush();
    report.ok = report.defects.empty();
    return report;
}

i64 FunctionFamily::value(i64 n, i64 i, i64 j) const {
    if (n < 1 || n > params.width || !in_window(i, j)) throw std::out_of_range("family value out of range");
    i64 iw = i_hi - i_lo + 1;
    return values[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>((j - j_lo) * iw + (i - i_lo))];
}

FunctionFamily to_functions(const Board& board, i64 i_lo, i64 i_hi, i64 j_lo, i64 j_hi) {
    if (i_lo > i_hi || j_lo > j_hi) throw std::invalid_argument("empty (i,j) window");
    FunctionFamily fam;
    fam.params = board.params();
    fam.i_lo = i_lo;
    fam.i_hi = i_hi;
    fam.j_lo = j_lo;
    fam.j_hi = j_hi;
    fam.source_window = board.window();
    i64 iw = i_hi - i_lo + 1, jw = j_hi - j_lo + 1;
    fam.values.assign(static_cast<std::size_t>(board.width()),
                      std::vector<std::uint8_t>(static_cast<std::size_t>(iw * jw), 0));
    for (i64 n = 1; n <= board.width(); ++n)
        for (i64 j = j_lo; j <= j_hi; ++j)
            for (i64 i = i_lo; i <= i_hi; ++i) {
                i64 m = j * n + i;
                if (m < board.window().m_lo || m > board.window().m_hi)
                    throw std::invalid_argument("incompatible windows: j*n+i leaves the board window");
                fam.values[static_cast<std::size_t>(n - 1)]
                          [static_cast<std::size_t>((j - j_lo) * iw + (i - i_lo))] =
                    static_cast<std::uint8_t>(board.cell(n, m));
            }
    return fam;
}

Board from_functions(const FunctionFamily& family) {
    const BoardWindow& src = family.source_window;
    // A row m is recoverable when every column has some (i, j) representation
    // with j*n + i = m. Reconstruction happens on the longest contiguous run
    // of recoverable rows (the whole source window whenever the (i, j) window
    // contains slope 0 spanning it).
    auto recoverable = [&](i64 m) {
        for (i64 n = 1; n <= family.params.width; ++n) {
            bool found = false;
            for (i64 j = family.j_lo; j <= family.j_hi && !found; ++j) found = family.in_window(m - j * n, j);
            if (!found) return false;
        }
        return true;
    };
    i64 best_lo = 0, best_hi = -1, run_lo = 0, run_hi = -1;
    for (i64 m = src.m_lo; m <= src.m_hi; ++m) {
        if (recoverable(m)) {
            if (run_hi < run_lo || run_hi != m - 1) run_lo = m;
            run_hi = m;
            if (run_hi - run_lo > best_hi - best_lo) {
                best_lo = run_lo;
                best_hi = run_hi;
            }
        }
    }
    if (best_hi < best_lo)
        throw std::invalid_argument("incompatible windows: no row has full (i,j) coverage");
    Board board(family.params, BoardWindow{best_lo, best_hi});
    for (i64 n = 1; n <= family.params.width; ++n)
        for (i64 m = best_lo; m <= best_hi; ++m) {
            std::optional<i64> v;
            for (i64 j = family.j_lo; j <= family.j_hi; ++j) {
                i64 i = m - j * n;
                if (!family.in_window(i, j)) continue;
                i64 cand = family.value(n, i, j);
                if (!v)
                    v = cand;
                else if (*v != cand)
                    throw std::invalid_argument("inconsistent function family");
            }
            board.set_cell(n, m, *v);
        }
    return board;
}

bool ColumnReport::all_refuted() const {
    for (const auto& col : columns) {
        for (const auto& w : col.witnesses)
            if (!w) return false;
    }
    return true;
}

ColumnReport column_report(const Board& board, i64 max_period) {
    if (max_period < 1) throw std::invalid_argument("max_period must be >= 1");
    ColumnReport report;
    report.max_period = max_period;
    report.columns.assign(static_cast<std::size_t>(board.width()), {});
    const auto& w = board.window();
    parallel_for(static_cast<std::size_t>(board.width()), [&](std::size_t k) {
        i64 n = static_cast<i64>(k) + 1;
        ColumnEntry& entry = report.columns[k];
        entry.constant = true;
        for (i64 m = w.m_lo + 1; m <= w.m_hi && entry.constant; ++m)
            entry.constant = board.cell(n, m) == board.cell(n, w.m_lo);
        entry.witnesses.assign(static_cast<std::size_t>(max_period), std::nullopt);
        if (entry.constant) return;  // no refutations sought for constant columns
        for (i64 q = 1; q <= max_period; ++q)
            for (i64 m = w.m_lo; m + q <= w.m_hi; ++m)
                if (board.cell(n, m) != board.cell(n, m + q)) {
                    entry.witnesses[static_cast<std::size_t>(q - 1)] = m;
                    break;
                }
    });
    return report;
}

namespace {

// Search state: cells are filled in row-major order (m ascending, n inside).
struct BoardSearcher {
    PadicParams params;
    BoardWindow window;
    Board board;
    std::vector<std::optional<i64>> fixed_value;  // per cell index
    std::uint64_t budget;
    std::size_t max_boards;
    BoardSearchResult result;
    i64 max_slope;

    BoardSearcher(const PadicParams& p, BoardWindow w, std::uint64_t node_budget, std::size_t cap)
        : params(p), window(w), board(p, w), budget(node_budget), max_boards(cap) {
        fixed_value.assign(static_cast<std::size_t>(w.height() * p.width), std::nullopt);
        max_slope = w.m_hi - w.m_lo;
    }

    // Lines through (n, m) with >= 2 cells visible, restricted to assigned
    // cells up to `limit` (cell index of the next unassigned cell).
    bool lines_consistent(i64 n, i64 m, i64 limit) const {
        for (i64 j = -max_slope; j <= max_slope; ++j) {
            i64 i = m - j * n;
            std::vector<std::pair<i64, i64>> cells;
            for (i64 nn = 1; nn <= params.width; ++nn) {
                i64 mm = j * nn + i;
                if (mm < window.m_lo || mm > window.m_hi) continue;
                i64 idx = (mm - window.m_lo) * params.width + (nn - 1);
                if (idx >= limit) continue;
                cells.emplace_back(nn, board.cell(nn, mm));
            }
            if (cells.size() >= 2 && !classify_cells(params, cells).has_value()) return false;
        }
        return true;
    }

    void run(i64 cell_index) {
        if (!result.complete) return;
        if (result.boards.size() >= max_boards) {
            result.complete = false;  // stopped by the board cap, not exhaustion
            return;
        }
        i64 total = window.height() * params.width;
        if (cell_index == total) {
            Board candidate = board;
            if (verify_board(candidate, VerifyMode::ExtendPartial).ok)
                result.boards.push_back(std::move(candidate));
            return;
        }
        if (budget && result.nodes >= budget) {
            result.complete = false;
            return;
        }
        ++result.nodes;
        i64 m = window.m_lo + cell_index / params.width;
        i64 n = cell_index % params.width + 1;
        const auto& fixed = fixed_value[static_cast<std::size_t>(cell_index)];
        for (i64 v = 1; v < params.p; ++v) {
            if (fixed && *fixed != v) continue;
            board.set_cell(n, m, v);
            if (lines_consistent(n, m, cell_index + 1)) run(cell_index + 1);
            if (!result.complete || result.boards.size() >= max_boards) return;
        }
    }
};

}  // namespace

BoardSearchResult search_boards(const PadicParams& params, BoardWindow window,
                                const std::vector<CellAssignment>& fixed, std::uint64_t node_budget,
                                std::size_t max_boards) {
    BoardSearcher searcher(params, window, node_budget, max_boards);
    for (const auto& f : fixed) {
        if (f.n < 1 || f.n > params.width || f.m < window.m_lo || f.m > window.m_hi)
            throw std::invalid_argument("fixed cell outside the board");
        if (f.value < 1 || f.value >= params.p) throw std::invalid_argument("fixed value out of range");
        searcher.fixed_value[static_cast<std::size_t>((f.m - window.m_lo) * params.width + (f.n - 1))] =
            f.value;
    }
    searcher.run(0);
    return searcher.result;
}

}  // namespace tileforge
