#include "tileforge/io.hpp"

#include <fstream>
#include <sstream>

namespace tileforge {

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Parses "key=value" returning value; throws if the token is not key=...
i64 keyed_int(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) throw std::invalid_argument("expected " + key + "=... got '" + tok + "'");
    return parse_i64(tok.substr(key.size() + 1));
}

}  // namespace

std::string write_board(const Board& board) {
    std::ostringstream out;
    const auto& p = board.params();
    const auto& w = board.window();
    out << "board v1 p=" << p.p << " N=" << p.width << " mlo=" << w.m_lo << " mhi=" << w.m_hi << "\n";
    if (board.gen())
        out << "gen a=" << board.gen()->a << " b=" << board.gen()->b << " c=" << board.gen()->c << "\n";
    for (i64 m = w.m_lo; m <= w.m_hi; ++m) {
        for (i64 n = 1; n <= p.width; ++n) {
            if (n > 1) out << " ";
            out << board.cell(n, m);
        }
        out << "\n";
    }
    return out.str();
}

Board parse_board(const std::string& text) {
    auto ls = lines_of(text);
    if (ls.empty()) throw std::invalid_argument("empty board file");
    auto head = split_ws(ls[0]);
    if (head.size() != 6 || head[0] != "board" || head[1] != "v1")
        throw std::invalid_argument("malformed board header");
    i64 p = keyed_int(head[2], "p");
    i64 n_decl = keyed_int(head[3], "N");
    i64 m_lo = keyed_int(head[4], "mlo");
    i64 m_hi = keyed_int(head[5], "mhi");
    PadicParams params = PadicParams::make(p, 2);
    if (params.width != n_decl) throw std::invalid_argument("board header: N must equal p^2");
    if (m_lo > m_hi) throw std::invalid_argument("board header: mlo > mhi");
    Board board(params, BoardWindow{m_lo, m_hi});

    std::size_t row_start = 1;
    if (ls.size() > 1 && ls[1].rfind("gen ", 0) == 0) {
        auto gt = split_ws(ls[1]);
        if (gt.size() != 4) throw std::invalid_argument("malformed gen line");
        board.set_gen(GenParams{keyed_int(gt[1], "a"), keyed_int(gt[2], "b"), keyed_int(gt[3], "c")});
        row_start = 2;
    }
    i64 height = m_hi - m_lo + 1;
    if (ls.size() != row_start + static_cast<std::size_t>(height))
        throw std::invalid_argument("board file: wrong number of rows");
    for (i64 r = 0; r < height; ++r) {
        auto toks = split_ws(ls[row_start + static_cast<std::size_t>(r)]);
        if (static_cast<i64>(toks.size()) != params.width)
            throw std::invalid_argument("board file: wrong row length");
        for (i64 n = 1; n <= params.width; ++n) {
            i64 v = parse_i64(toks[static_cast<std::size_t>(n - 1)]);
            if (v < 1 || v >= p) throw std::invalid_argument("board value out of range");
            board.set_cell(n, m_lo + r, v);
        }
    }
    return board;
}

std::string write_line(const PadicParams& params, const LineValues& values) {
    std::ostringstream out;
    out << "line v1 p=" << params.p << " N=" << params.width << "\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out << " ";
        out << values[k];
    }
    out << "\n";
    return out.str();
}

std::pair<PadicParams, LineValues> parse_line(const std::string& text, int order) {
    auto ls = lines_of(text);
    if (ls.empty()) throw std::invalid_argument("empty line file");
    auto head = split_ws(ls[0]);
    if (head.size() != 4 || head[0] != "line" || head[1] != "v1")
        throw std::invalid_argument("malformed line header");
    i64 p = keyed_int(head[2], "p");
    i64 n_decl = keyed_int(head[3], "N");
    PadicParams params = PadicParams::make(p, order);
    if (params.width != n_decl) throw std::invalid_argument("line header: N must equal p^2");
    LineValues values;
    for (std::size_t k = 1; k < ls.size(); ++k)
        for (const auto& tok : split_ws(ls[k])) values.push_back(parse_i64(tok));
    if (static_cast<i64>(values.size()) != params.width)
        throw std::invalid_argument("line file: wrong number of values");
    for (i64 v : values)
        if (v < 1 || v >= p) throw std::invalid_argument("line value out of range");
    return {params, values};
}

std::optional<PeriodicSet> TilingInstance::candidate() const {
    if (!residues) return std::nullopt;
    return PeriodicSet::make(group, lattice ? *lattice : Lattice{}, *residues);
}

std::string write_instance(const TilingInstance& inst) {
    std::ostringstream out;
    out << "group " << inst.group.str() << "\n";
    out << "lattice " << (inst.lattice ? inst.lattice->str() : std::string("finite")) << "\n";
    if (inst.residues) {
        out << "residues:";
        for (const auto& e : *inst.residues) out << " " << e.str();
        out << "\n";
    }
    for (const auto& t : inst.tiles) {
        out << "tile:";
        for (const auto& e : t.elements) out << " " << e.str();
        out << "\n";
    }
    return out.str();
}

TilingInstance parse_instance(const std::string& text) {
    auto ls = lines_of(text);
    if (ls.size() < 2) throw std::invalid_argument("instance file too short");
    TilingInstance inst;
    if (ls[0].rfind("group ", 0) != 0) throw std::invalid_argument("instance: expected 'group ...'");
    inst.group = GroupSpec::parse(ls[0].substr(6));
    if (ls[1].rfind("lattice", 0) != 0) throw std::invalid_argument("instance: expected 'lattice ...'");
    {
        auto toks = split_ws(ls[1].substr(7));
        if (toks.size() == 1 && toks[0] == "finite") {
            if (!inst.group.is_finite())
                throw std::invalid_argument("instance: 'finite' lattice for an infinite group");
        } else {
            std::vector<i64> entries;
            for (const auto& t : toks) entries.push_back(parse_i64(t));
            if (entries.size() != static_cast<std::size_t>(inst.group.rank) * inst.group.rank)
                throw std::invalid_argument("instance: lattice entry count mismatch");
            inst.lattice = Lattice(inst.group.rank, entries);
        }
    }
    for (std::size_t k = 2; k < ls.size(); ++k) {
        const std::string& line = ls[k];
        if (line.empty()) continue;
        if (line.rfind("residues:", 0) == 0) {
            std::vector<Element> elems;
            for (const auto& t : split_ws(line.substr(9))) elems.push_back(Element::parse(t));
            inst.residues = std::move(elems);
        } else if (line.rfind("tile:", 0) == 0) {
            std::vector<Element> elems;
            for (const auto& t : split_ws(line.substr(5))) elems.push_back(Element::parse(t));
            inst.tiles.push_back(Tile::make(inst.group, std::move(elems)));
        } else {
            throw std::invalid_argument("instance: unrecognized line '" + line + "'");
        }
    }
    return inst;
}

std::string write_partition(const Partition& p) {
    std::ostringstream out;
    out << "group " << p.group.str() << "\n";
    for (const auto& part : p.parts) {
        out << "part:";
        for (const auto& e : part) out << " " << e.str();
        out << "\n";
    }
    return out.str();
}

Partition parse_partition(const std::string& text) {
    auto ls = lines_of(text);
    if (ls.empty() || ls[0].rfind("group ", 0) != 0)
        throw std::invalid_argument("partition: expected 'group ...'");
    Partition p;
    p.group = GroupSpec::parse(ls[0].substr(6));
    for (std::size_t k = 1; k < ls.size(); ++k) {
        if (ls[k].empty()) continue;
        if (ls[k].rfind("part:", 0) != 0) throw std::invalid_argument("partition: expected 'part: ...'");
        std::vector<Element> elems;
        for (const auto& t : split_ws(ls[k].substr(5))) elems.push_back(Element::parse(t));
        p.parts.push_back(std::move(elems));
    }
    return p;
}

namespace {

char glyph(i64 v) {
    if (v >= 0 && v <= 9) return static_cast<char>('0' + v);
    if (v >= 10 && v <= 35) return static_cast<char>('a' + v - 10);
    if (v >= 36 && v <= 61) return static_cast<char>('A' + v - 36);
    return '?';
}

// Shade level by valuation depth, matching the figure convention:
// white, grey, darker, black for infinite/deep valuations.
int shade(i64 p, i64 arg) {
    i64 nu = (arg == 0) ? 3 : 0;
    if (arg != 0) {
        while (arg % p == 0 && nu < 3) {
            arg /= p;
            ++nu;
        }
    }
    switch (nu) {
        case 0: return 255;
        case 1: return 170;
        case 2: return 85;
        default: return 0;
    }
}

}  // namespace

std::string render_ascii(const Board& board) {
    std::ostringstream out;
    const auto& w = board.window();
    for (i64 m = w.m_hi; m >= w.m_lo; --m) {
        for (i64 n = 1; n <= board.width(); ++n) out << glyph(board.cell(n, m));
        out << "\n";
    }
    return out.str();
}

std::string render_pgm(const Board& board) {
    std::ostringstream out;
    const auto& w = board.window();
    out << "P2\n" << board.width() << " " << w.height() << "\n255\n";
    for (i64 m = w.m_hi; m >= w.m_lo; --m) {
        for (i64 n = 1; n <= board.width(); ++n) {
            if (n > 1) out << " ";
            if (board.gen()) {
                i64 arg = board.gen()->a * n + board.gen()->b * m + board.gen()->c;
                out << shade(board.params().p, arg);
            } else {
                out << board.cell(n, m) * 255 / (board.params().p - 1);
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace tileforge
