#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "tileforge/padic.hpp"

namespace tileforge {

struct BoardWindow {
    i64 m_lo = 0, m_hi = 0;
    i64 height() const { return m_hi - m_lo + 1; }
};

struct GenParams {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const GenParams&) const = default;
};

// A window of a board {1..N} x Z filled with units of Z/pZ. Columns are
// n in [1, N], rows m in [m_lo, m_hi] (ascending). Cell values live in
// [1, p-1] and are stored as bytes, which bounds p at 251.
class Board {
public:
    Board(PadicParams params, BoardWindow window);

    const PadicParams& params() const { return params_; }
    const BoardWindow& window() const { return window_; }
    i64 width() const { return params_.width; }

    i64 cell(i64 n, i64 m) const;
    void set_cell(i64 n, i64 m, i64 v);

    const std::optional<GenParams>& gen() const { return gen_; }
    void set_gen(std::optional<GenParams> g) { gen_ = std::move(g); }

    bool operator==(const Board& o) const {
        return params_.p == o.params_.p && params_.order == o.params_.order &&
               window_.m_lo == o.window_.m_lo && window_.m_hi == o.window_.m_hi && cells_ == o.cells_ &&
               gen_ == o.gen_;
    }

private:
    PadicParams params_;
    BoardWindow window_;
    std::vector<std::uint8_t> cells_;  // (m - m_lo) * N + (n - 1)
    std::optional<GenParams> gen_;
};

// F(n, m) = final_digit(p, a*n + b*m + c). Records (a, b, c) so renders can
// shade by valuation.
Board generate_affine_board(const PadicParams& params, BoardWindow window, i64 a, i64 b, i64 c);

// Non-vertical line m = slope * n + intercept, n in [1, N].
struct LineId {
    i64 slope = 0, intercept = 0;
    bool operator==(const LineId&) const = default;
};

enum class LineSpan { Full, Partial };

// Lines meeting the window: Full when every n in [1, N] lands inside,
// Partial when at least 2 cells do. Ordered by (slope, intercept).
std::vector<std::pair<LineId, LineSpan>> visible_lines(const Board& board);
// Callback form; skips materializing the (large) partial-line list.
void for_each_visible_line(const Board& board, bool include_partial,
                           const std::function<void(LineId, LineSpan)>& fn);

// Visible cells of a line as (n, value) pairs, n ascending.
std::vector<std::pair<i64, i64>> line_cells(const Board& board, LineId line);

enum class VerifyMode { FullOnly, ExtendPartial };

struct LineDefect {
    LineId line;
    LineSpan span = LineSpan::Full;
    std::vector<std::pair<i64, i64>> cells;
};

struct BoardReport {
    bool ok = true;
    std::vector<LineDefect> defects;
    std::uint64_t full_lines = 0;
    std::uint64_t partial_lines = 0;
};

// Classifies every full line; in ExtendPartial mode additionally requires
// each partial line to admit some certificate consistent with its visible
// cells.
BoardReport verify_board(const Board& board, VerifyMode mode);

// The per-column view of a board: f_n(i, j) = F(n, j*n + i) on a finite
// (i, j) window, together with the board window it came from (which makes
// the reconstruction an exact inverse).
struct FunctionFamily {
    PadicParams params;
    i64 i_lo = 0, i_hi = 0, j_lo = 0, j_hi = 0;
    BoardWindow source_window;
    // values[n-1][(j - j_lo) * (i_hi - i_lo + 1) + (i - i_lo)]
    std::vector<std::vector<std::uint8_t>> values;

    i64 value(i64 n, i64 i, i64 j) const;
    bool in_window(i64 i, i64 j) const { return i >= i_lo && i <= i_hi && j >= j_lo && j <= j_hi; }
};

// Requires j*n + i inside the board window for every requested (i, j, n).
FunctionFamily to_functions(const Board& board, i64 i_lo, i64 i_hi, i64 j_lo, i64 j_hi);

// Rebuilds the source board from the family, reading each cell from its
// lexicographically least (j, i) representation and cross-checking all
// others. Throws if some cell has no representation or representations
// disagree.
Board from_functions(const FunctionFamily& family);

struct ColumnEntry {
    bool constant = false;
    // witnesses[q-1]: some m with F(n,m) != F(n,m+q), both rows in-window;
    // nullopt = undecided within the window.
    std::vector<std::optional<i64>> witnesses;
};

struct ColumnReport {
    i64 max_period = 0;
    std::vector<ColumnEntry> columns;  // index n-1
    bool all_refuted() const;
};

ColumnReport column_report(const Board& board, i64 max_period);

struct CellAssignment {
    i64 n = 0, m = 0, value = 0;
};

struct BoardSearchResult {
    std::vector<Board> boards;
    bool complete = true;
    std::uint64_t nodes = 0;
};

// Backtracking over cells in row-major order with line-certificate
// propagation: a partial filling is pruned as soon as some visible line
// admits no consistent certificate. Emits only boards that re-verify in
// ExtendPartial mode, in deterministic order. node_budget = 0 is unlimited.
BoardSearchResult search_boards(const PadicParams& params, BoardWindow window,
                                const std::vector<CellAssignment>& fixed, std::uint64_t node_budget,
                                std::size_t max_boards = static_cast<std::size_t>(-1));

}  // namespace tileforge
