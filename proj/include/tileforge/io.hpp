#pragma once

#include <optional>
#include <string>

#include "tileforge/sudoku.hpp"
#include "tileforge/tiling.hpp"

namespace tileforge {

// Board file, bit-exact:
//   board v1 p=<p> N=<N> mlo=<m_lo> mhi=<m_hi>
//   [gen a=<a> b=<b> c=<c>]          (optional generator metadata)
//   <height lines of N space-separated values, ascending m>
std::string write_board(const Board& board);
Board parse_board(const std::string& text);

// Line file:
//   line v1 p=<p> N=<N>
//   <N space-separated values>
std::string write_line(const PadicParams& params, const LineValues& values);
std::pair<PadicParams, LineValues> parse_line(const std::string& text, int order);

// Tiling instance:
//   group <literal>
//   lattice <r*r row-major integers | "finite">
//   residues: <elements...>          (optional candidate A)
//   tile: <elements...>              (one line per tile)
struct TilingInstance {
    GroupSpec group;
    std::optional<Lattice> lattice;
    std::optional<std::vector<Element>> residues;
    std::vector<Tile> tiles;

    std::optional<PeriodicSet> candidate() const;
};

std::string write_instance(const TilingInstance& inst);
TilingInstance parse_instance(const std::string& text);

// Partition file:
//   group <literal>
//   part: <elements...>              (one line per part)
std::string write_partition(const Partition& p);
Partition parse_partition(const std::string& text);

// ASCII render: one glyph per cell (base-62), rows printed top = m_hi.
std::string render_ascii(const Board& board);
// PGM (P2) render; boards with generator metadata shade by the valuation of
// a*n + b*m + c, otherwise by raw cell value.
std::string render_pgm(const Board& board);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tileforge
