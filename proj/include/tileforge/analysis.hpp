#pragma once

#include <array>
#include <variant>

#include "tileforge/sudoku.hpp"

namespace tileforge {

// Almost-affine line description: value(n) = a*n + b mod p at every cell
// where a*n + b != 0 mod p. Not both zero.
struct LineFit {
    i64 a = 0, b = 0;
    bool operator==(const LineFit&) const = default;
};

struct LineFitFailure {
    // Cells after which no candidate (a, b) survived: the one that killed
    // the last candidate and the previous elimination.
    std::array<std::pair<i64, i64>, 2> witnesses;  // (n, value)
};

// Lexicographically least (a, b) != (0, 0) with value = a*n + b off the
// candidate's zero set. Cells are (n, value) pairs and must number >= 2p.
std::variant<LineFit, LineFitFailure> fit_line(const std::vector<std::pair<i64, i64>>& cells, i64 p);

// The algebraic route from a line certificate: constant c -> (0, c);
// affine (t, h) -> (h, -h*t mod p), since h*final_digit(p, n-t) = h*(n-t)
// mod p off the bad coset.
LineFit line_fit_from_certificate(const PadicParams& params, const LineCertificate& cert);

// Board-level fit: F(n, m) = a*n + b*m + c mod p wherever that is nonzero.
struct BoardFit {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const BoardFit&) const = default;
};

struct BoardFitFailure {
    std::array<std::array<i64, 3>, 2> witnesses;  // (n, m, value)
};

// Lexicographically least (a, b, c) != (0, 0, 0), exhaustive over the p^3-1
// candidates with early exit.
std::variant<BoardFit, BoardFitFailure> fit_board(const Board& board);

// Vertical-shift-and-rescale change of variables pinning the fit to
// (0, 1, 0): F'(n, m) = b^{-1} * F(n, m - delta(n)) with delta(n) the least
// nonnegative integer congruent to b^{-1}(a*n + c) mod p^2. The window
// becomes [m_lo + max delta, m_hi + min delta]. Throws when fit.b == 0 (the
// board is then constant on columns off the zero set and no vertical
// normalization exists).
Board normalized_board(const Board& board, const BoardFit& fit);

// Keeps every p-th row: F1(n, m) = F(n, p*m). Throws unless at least two
// multiples of p lie in the window (so the result can be refit).
Board decimate_rows(const Board& board);

enum class MatchMode { Raw, Normalized };

struct ScaleEntry {
    int scale = 0;
    std::optional<BoardFit> fit;
    std::optional<BoardFitFailure> fit_failure;
    bool verified = false;
    BoardWindow window;
};

// Per-scale fits of the iterated row decimation, with flags comparing the
// vertical coefficient across consecutive scales. Raw mode compares the
// fits as found; Normalized renormalizes before each decimation (and then
// every matching coefficient is 1 whenever the fits exist).
struct ScaleReport {
    MatchMode mode = MatchMode::Raw;
    std::vector<ScaleEntry> entries;            // scales 0..depth
    std::vector<bool> coefficient_matches;      // entry s vs s+1
    bool all_match() const;
};

ScaleReport scale_report(const Board& board, int depth, MatchMode mode);

struct ConstantColumn {
    i64 column;
};

// Window-scale aperiodicity evidence: per-column refutation witnesses for
// every period up to max_period, plus the per-scale fits. Errors out when
// some column is constant.
struct AperiodicityCertificate {
    ColumnReport columns;
    ScaleReport scales;
    bool window_aperiodic() const { return columns.all_refuted(); }
};

std::variant<AperiodicityCertificate, ConstantColumn> aperiodicity_certificate(const Board& board,
                                                                               i64 max_period, int depth,
                                                                               MatchMode mode);

}  // namespace tileforge
