#include "tileforge/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace tileforge {

GroupSpec::GroupSpec(int r, std::vector<i64> mods) : rank(r), moduli(std::move(mods)) {
    if (rank < 0) throw std::invalid_argument("group rank must be >= 0");
    for (i64 m : moduli)
        if (m < 2) throw std::invalid_argument("group modulus must be >= 2");
}

GroupSpec GroupSpec::parse(const std::string& literal) {
    int rank = 0;
    std::vector<i64> mods;
    std::string s = literal;
    // split on 'x' separators
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == 'x' || c == 'X') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    bool seen_torsion = false;
    for (auto& raw : parts) {
        std::string p;
        for (char c : raw)
            if (!isspace(static_cast<unsigned char>(c))) p += c;
        if (p.empty()) throw std::invalid_argument("empty factor in group literal");
        if (p == "Z") {
            if (seen_torsion) throw std::invalid_argument("free factors must precede torsion factors");
            rank += 1;
        } else if (p.rfind("Z^", 0) == 0) {
            if (seen_torsion) throw std::invalid_argument("free factors must precede torsion factors");
            rank += static_cast<int>(parse_i64(p.substr(2)));
        } else if (p.rfind("Z/", 0) == 0) {
            seen_torsion = true;
            mods.push_back(parse_i64(p.substr(2)));
        } else {
            throw std::invalid_argument("bad group factor: '" + p + "'");
        }
    }
    return GroupSpec(rank, std::move(mods));
}

std::string GroupSpec::str() const {
    std::ostringstream out;
    bool first = true;
    if (rank == 1) {
        out << "Z";
        first = false;
    } else if (rank >= 2) {
        out << "Z^" << rank;
        first = false;
    }
    for (i64 m : moduli) {
        if (!first) out << " x ";
        out << "Z/" << m;
        first = false;
    }
    if (first) out << "Z/1";  // unreachable for valid specs; keeps str() total
    return out.str();
}

i64 GroupSpec::torsion_size() const {
    i64 n = 1;
    for (i64 m : moduli) n = checked_mul(n, m);
    return n;
}

i64 GroupSpec::order() const {
    if (!is_finite()) throw std::domain_error("order() of an infinite group");
    return torsion_size();
}

std::string Element::str() const {
    std::ostringstream out;
    out << "((";
    for (std::size_t i = 0; i < free.size(); ++i) {
        if (i) out << ",";
        out << free[i];
    }
    out << ");(";
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (i) out << ",";
        out << torsion[i];
    }
    out << "))";
    return out.str();
}

static std::vector<i64> parse_int_list(const std::string& body) {
    std::vector<i64> out;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            out.push_back(parse_i64(cur));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(parse_i64(cur));
    return out;
}

Element Element::parse(const std::string& text) {
    // ((a,...);(b,...))
    auto bad = [&] { throw std::invalid_argument("bad element literal: '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 8 || s.front() != '(' || s.back() != ')') bad();
    auto sep = s.find(");(");
    if (sep == std::string::npos || s[1] != '(') bad();
    Element e;
    e.free = parse_int_list(s.substr(2, sep - 2));
    e.torsion = parse_int_list(s.substr(sep + 3, s.size() - sep - 5));
    return e;
}

bool lex_less(const Element& a, const Element& b) {
    if (a.free != b.free)
        return std::lexicographical_compare(a.free.begin(), a.free.end(), b.free.begin(), b.free.end());
    return std::lexicographical_compare(a.torsion.begin(), a.torsion.end(), b.torsion.begin(),
                                        b.torsion.end());
}

Element normalize(const GroupSpec& g, Element x) {
    if (static_cast<int>(x.free.size()) != g.rank || x.torsion.size() != g.moduli.size())
        throw std::invalid_argument("element length mismatch for group " + g.str());
    for (std::size_t j = 0; j < x.torsion.size(); ++j) x.torsion[j] = mod_floor(x.torsion[j], g.moduli[j]);
    return x;
}

Element zero_element(const GroupSpec& g) {
    Element e;
    e.free.assign(g.rank, 0);
    e.torsion.assign(g.moduli.size(), 0);
    return e;
}

Element add(const GroupSpec& g, const Element& a, const Element& b) {
    if (a.free.size() != b.free.size() || a.torsion.size() != b.torsion.size())
        throw std::invalid_argument("element shape mismatch");
    Element r = a;
    for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] = checked_add(r.free[i], b.free[i]);
    for (std::size_t j = 0; j < r.torsion.size(); ++j) r.torsion[j] += b.torsion[j];
    return normalize(g, std::move(r));
}

Element neg(const GroupSpec& g, const Element& a) {
    Element r = a;
    for (auto& v : r.free) v = -v;
    for (auto& v : r.torsion) v = -v;
    return normalize(g, std::move(r));
}

Element sub(const GroupSpec& g, const Element& a, const Element& b) { return add(g, a, neg(g, b)); }

// ---- Lattice ----

Lattice::Lattice(int rank, const std::vector<i64>& basis_row_major) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("lattice rank must be >= 1");
    if (basis_row_major.size() != static_cast<std::size_t>(rank) * rank)
        throw std::invalid_argument("lattice basis must be rank x rank");
    // Column HNF by integer column operations.
    std::vector<i64> a = basis_row_major;  // a[r*rank_+c]
    auto at = [&](int r, int c) -> i64& { return a[static_cast<std::size_t>(r) * rank_ + c]; };
    auto col_axpy = [&](int dst, int src, i64 q) {
        // col_dst -= q * col_src
        for (int r = 0; r < rank_; ++r) at(r, dst) = checked_add(at(r, dst), -checked_mul(q, at(r, src)));
    };
    auto col_swap = [&](int c1, int c2) {
        for (int r = 0; r < rank_; ++r) std::swap(at(r, c1), at(r, c2));
    };
    for (int i = 0; i < rank_; ++i) {
        // Eliminate row i across columns i..rank-1 until one nonzero remains.
        for (;;) {
            int pivot = -1;
            for (int c = i; c < rank_; ++c)
                if (at(i, c) != 0 && (pivot < 0 || std::abs(at(i, c)) < std::abs(at(i, pivot)))) pivot = c;
            if (pivot < 0) throw std::invalid_argument("singular lattice basis");
            bool done = true;
            for (int c = i; c < rank_; ++c) {
                if (c == pivot || at(i, c) == 0) continue;
                col_axpy(c, pivot, at(i, c) / at(i, pivot));
                if (at(i, c) != 0) done = false;
            }
            if (done) {
                if (pivot != i) col_swap(pivot, i);
                break;
            }
        }
        if (at(i, i) < 0)
            for (int r = 0; r < rank_; ++r) at(r, i) = -at(r, i);
        // Reduce the columns to the left so 0 <= h[i][j] < h[i][i] for j < i.
        for (int c = 0; c < i; ++c) {
            i64 q = floor_div(at(i, c), at(i, i));
            if (q != 0) col_axpy(c, i, q);
        }
    }
    h_ = std::move(a);
}

i64 Lattice::index() const {
    i64 d = 1;
    for (int i = 0; i < rank_; ++i) d = checked_mul(d, h_[static_cast<std::size_t>(i) * rank_ + i]);
    return d;
}

std::vector<i64> Lattice::reduce(std::vector<i64> v) const {
    if (v.size() != static_cast<std::size_t>(rank_)) throw std::invalid_argument("vector/lattice rank mismatch");
    for (int i = 0; i < rank_; ++i) {
        i64 hii = h_[static_cast<std::size_t>(i) * rank_ + i];
        i64 q = floor_div(v[i], hii);
        if (q == 0) continue;
        for (int r = i; r < rank_; ++r)
            v[r] = checked_add(v[r], -checked_mul(q, h_[static_cast<std::size_t>(r) * rank_ + i]));
    }
    return v;
}

bool Lattice::contains(const std::vector<i64>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
}

std::string Lattice::str() const {
    if (rank_ == 0) return "finite";
    std::ostringstream out;
    for (std::size_t i = 0; i < h_.size(); ++i) {
        if (i) out << " ";
        out << h_[i];
    }
    return out.str();
}

Window::Window(std::vector<i64> l, std::vector<i64> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size()) throw std::invalid_argument("window lo/hi length mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) throw std::invalid_argument("window with lo > hi");
}

i64 Window::point_count() const {
    i64 n = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) n = checked_mul(n, hi[i] - lo[i] + 1);
    return n;
}

namespace {

// Appends, in lexicographic order, every element whose free part ranges over
// box and torsion over the full ranges.
void emit_box(const GroupSpec& g, const std::vector<i64>& box_lo, const std::vector<i64>& box_hi,
              std::vector<Element>& out) {
    Element cur = zero_element(g);
    std::size_t r = box_lo.size(), k = g.moduli.size();
    for (std::size_t i = 0; i < r; ++i) cur.free[i] = box_lo[i];
    for (;;) {
        out.push_back(cur);
        // increment torsion, then free, least-significant-last
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++cur.torsion[j] < g.moduli[j]) goto next;
            cur.torsion[j] = 0;
        }
        {
            std::size_t i = r;
            while (i > 0) {
                --i;
                if (++cur.free[i] <= box_hi[i]) goto next;
                cur.free[i] = box_lo[i];
            }
            return;
        }
    next:;
    }
}

}  // namespace

std::vector<Element> quotient_elements(const GroupSpec& g, const Lattice& lat) {
    if (lat.rank() != g.rank) throw std::invalid_argument("lattice rank does not match group rank");
    std::vector<i64> lo(g.rank, 0), hi(g.rank, 0);
    for (int i = 0; i < g.rank; ++i) hi[i] = lat.hnf()[static_cast<std::size_t>(i) * g.rank + i] - 1;
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(lat.index() * g.torsion_size()));
    emit_box(g, lo, hi, out);
    return out;
}

std::vector<Element> window_points(const GroupSpec& g, const Window& w) {
    if (static_cast<int>(w.lo.size()) != g.rank)
        throw std::invalid_argument("window does not cover all free coordinates");
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(w.point_count() * g.torsion_size()));
    emit_box(g, w.lo, w.hi, out);
    return out;
}

FiniteIndexer::FiniteIndexer(const GroupSpec& g) : group_(g) {
    if (!g.is_finite()) throw std::invalid_argument("FiniteIndexer needs a finite group");
    stride_.assign(g.moduli.size(), 1);
    for (std::size_t j = g.moduli.size(); j > 0; --j) {
        if (j < g.moduli.size()) stride_[j - 1] = checked_mul(stride_[j], g.moduli[j]);
    }
    size_ = g.torsion_size();
}

i64 FiniteIndexer::index_of(const Element& e) const {
    if (!e.free.empty() || e.torsion.size() != group_.moduli.size())
        throw std::invalid_argument("element shape mismatch in indexer");
    i64 idx = 0;
    for (std::size_t j = 0; j < stride_.size(); ++j)
        idx += mod_floor(e.torsion[j], group_.moduli[j]) * stride_[j];
    return idx;
}

Element FiniteIndexer::element_at(i64 idx) const {
    Element e = zero_element(group_);
    for (std::size_t j = 0; j < stride_.size(); ++j) {
        e.torsion[j] = idx / stride_[j];
        idx %= stride_[j];
    }
    return e;
}

i64 FiniteIndexer::add(i64 a, i64 b) const {
    i64 r = 0;
    for (std::size_t j = 0; j < stride_.size(); ++j) {
        i64 da = a / stride_[j] % group_.moduli[j];
        i64 db = b / stride_[j] % group_.moduli[j];
        r += (da + db) % group_.moduli[j] * stride_[j];
    }
    return r;
}

i64 FiniteIndexer::neg(i64 a) const {
    i64 r = 0;
    for (std::size_t j = 0; j < stride_.size(); ++j) {
        i64 da = a / stride_[j] % group_.moduli[j];
        r += (group_.moduli[j] - da) % group_.moduli[j] * stride_[j];
    }
    return r;
}

i64 FiniteIndexer::sub(i64 a, i64 b) const { return add(a, neg(b)); }

}  // namespace tileforge
