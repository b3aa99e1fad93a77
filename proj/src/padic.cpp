#include "tileforge/padic.hpp"

#include <sstream>

namespace tileforge {

i64 valuation(i64 p, i64 n) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
    if (n == 0) return kInfiniteValuation;
    i64 e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

i64 final_digit(i64 p, i64 n) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("final_digit: p must be prime");
    if (n == 0) return 1;
    while (n % p == 0) n /= p;
    return mod_floor(n, p);
}

PadicParams PadicParams::make(i64 p, int order) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("params: p must be a prime >= 3");
    if (order != 1 && order != 2) throw std::invalid_argument("params: order must be 1 or 2");
    PadicParams out;
    out.p = p;
    out.width = checked_mul(p, p);
    out.order = order;
    return out;
}

namespace {

// final_digit(p, x) restricted to x != 0 mod p^2 is a function of x mod p^2;
// this table carries those values (index 0 unused).
std::vector<i64> digit_table(const PadicParams& params) {
    std::vector<i64> fd(static_cast<std::size_t>(params.width), 0);
    for (i64 x = 1; x < params.width; ++x) {
        i64 y = x;
        while (y % params.p == 0) y /= params.p;
        fd[static_cast<std::size_t>(x)] = y % params.p;
    }
    return fd;
}

i64 exempt_modulus(const PadicParams& params, int order) {
    return order == 1 ? params.p : params.width;
}

bool affine_consistent(const PadicParams& params, const std::vector<i64>& fd, i64 t, i64 h, int order,
                       const std::vector<std::pair<i64, i64>>& cells) {
    for (const auto& [n, v] : cells) {
        i64 d = mod_floor(n - t, params.width);  // (n-t) mod p^2
        bool exempt = (order == 1) ? (d % params.p == 0) : (d == 0);
        if (exempt) continue;
        if (v != h * fd[static_cast<std::size_t>(d)] % params.p) return false;
    }
    return true;
}

}  // namespace

bool LineCertificate::consistent(const PadicParams& params,
                                 const std::vector<std::pair<i64, i64>>& cells) const {
    if (kind == Kind::Constant) {
        for (const auto& [n, v] : cells)
            if (v != value) return false;
        return true;
    }
    auto fd = digit_table(params);
    return affine_consistent(params, fd, shift, scale, order, cells);
}

bool LineCertificate::verify(const PadicParams& params, const LineValues& g) const {
    if (static_cast<i64>(g.size()) != params.width) return false;
    std::vector<std::pair<i64, i64>> cells;
    cells.reserve(g.size());
    for (i64 k = 0; k < params.width; ++k) cells.emplace_back(k + 1, g[static_cast<std::size_t>(k)]);
    return consistent(params, cells);
}

std::vector<i64> LineCertificate::exempt_cells(const PadicParams& params) const {
    std::vector<i64> out;
    if (kind == Kind::Constant) return out;
    i64 em = exempt_modulus(params, order);
    for (i64 n = 1; n <= params.width; ++n)
        if (mod_floor(n - shift, em) == 0) out.push_back(n);
    return out;
}

std::string LineCertificate::str() const {
    std::ostringstream out;
    if (kind == Kind::Constant)
        out << "constant c=" << value;
    else
        out << "affine t=" << shift << " h=" << scale;
    return out.str();
}

std::optional<LineCertificate> classify_cells(const PadicParams& params,
                                              const std::vector<std::pair<i64, i64>>& cells) {
    for (const auto& [n, v] : cells)
        if (v < 1 || v >= params.p) throw std::invalid_argument("line value out of (Z/pZ)^x range");
    bool constant = !cells.empty();
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i].second != cells[0].second) {
            constant = false;
            break;
        }
    if (constant) {
        LineCertificate c;
        c.kind = LineCertificate::Kind::Constant;
        c.value = cells[0].second;
        c.order = params.order;
        return c;
    }
    // The affine value h*final_digit(p, n-t) at a non-exempt cell depends on
    // (n - t) mod p^2 only, so t is searched over [0, p^2).
    auto fd = digit_table(params);
    for (i64 t = 0; t < params.width; ++t)
        for (i64 h = 1; h < params.p; ++h)
            if (affine_consistent(params, fd, t, h, params.order, cells)) {
                LineCertificate c;
                c.kind = LineCertificate::Kind::Affine;
                c.shift = t;
                c.scale = h;
                c.order = params.order;
                return c;
            }
    return std::nullopt;
}

std::optional<LineCertificate> classify(const PadicParams& params, const LineValues& g) {
    if (static_cast<i64>(g.size()) != params.width)
        throw std::invalid_argument("line must have exactly N = p^2 values");
    std::vector<std::pair<i64, i64>> cells;
    cells.reserve(g.size());
    for (i64 k = 0; k < params.width; ++k) cells.emplace_back(k + 1, g[static_cast<std::size_t>(k)]);
    return classify_cells(params, cells);
}

}  // namespace tileforge
