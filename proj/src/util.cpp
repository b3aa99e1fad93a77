#include "tileforge/util.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace tileforge {

i64 checked_mul(i64 a, i64 b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("64-bit overflow in multiply");
    return static_cast<i64>(r);
}

i64 checked_add(i64 a, i64 b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("64-bit overflow in add");
    return static_cast<i64>(r);
}

i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m < 2) throw std::domain_error("mod_inverse: modulus < 2");
    a = mod_floor(a, m);
    i64 g = a, x = 1;
    i64 g1 = m, x1 = 0;
    while (g1) {
        i64 q = g / g1;
        i64 t = g - q * g1;
        g = g1;
        g1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    return mod_floor(x, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TILEFORGE_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

i64 parse_i64(const std::string& s) {
    i64 v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("bad integer: '" + s + "'");
    return v;
}

}  // namespace tileforge
