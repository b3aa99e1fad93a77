#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tileforge {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Floor division / remainder with sign-safe semantics: mod_floor(a, b) is
// always in [0, b) for b > 0.
constexpr i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr i64 mod_floor(i64 a, i64 b) { return a - floor_div(a, b) * b; }

// Overflow policy: all coordinate arithmetic is 64-bit. Products and sums
// that could leave the 64-bit range are routed through these checked ops,
// which throw std::overflow_error instead of wrapping.
i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);

i64 gcd_i64(i64 a, i64 b);
// Inverse of a modulo m (m >= 2); throws std::domain_error if gcd(a,m) != 1.
i64 mod_inverse(i64 a, i64 m);

bool is_prime(i64 n);

// Deterministic PRNG used by all seeded searches. mt19937_64 has a fully
// specified output sequence, and bounded() avoids the implementation-defined
// std::uniform_int_distribution, so runs reproduce across platforms.
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}
    u64 next() { return eng_(); }
    u64 bounded(u64 n) { return n ? eng_() % n : 0; }

private:
    std::mt19937_64 eng_;
};

// Number of worker threads: min(hardware, TILEFORGE_THREADS if set).
unsigned thread_budget();

// Runs fn(i) for i in [0, n). May split the range over threads; every index
// is executed exactly once and writes only to its own slot, so results are
// identical to the sequential order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::vector<std::string> split_ws(const std::string& s);
i64 parse_i64(const std::string& s);

}  // namespace tileforge
