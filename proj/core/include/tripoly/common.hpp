#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tripoly {

using u64 = std::uint64_t;

/// Enumeration or materialization limit was hit.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed ring spec, polynomial text, or vector text.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands belong to different rings or have incompatible arities.
struct RingMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element rejected by the triangular membership criteria.
struct MembershipViolation : std::runtime_error {
    MembershipViolation(int component, const std::string& reason)
        : std::runtime_error("component " + std::to_string(component) + ": " + reason),
          component(component) {}
    int component;
};

/// Vector-polynomial does not have the triangular shape.
struct NotTriangular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse requested for a non-invertible element.
struct NotAUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 checked_mul(u64 a, u64 b) {
    if (a != 0 && b > ~u64{0} / a) throw std::overflow_error("u64 overflow in multiplication");
    return a * b;
}

inline u64 checked_pow(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

/// q must be a power of the prime p.
inline bool is_power_of(u64 q, u64 p) {
    if (q == 0) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint16_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 1;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Splits [0, count) into contiguous chunks and runs fn(begin, end) on each,
/// using at most `jobs` threads. The chunking is deterministic; callers must
/// merge results in chunk order if order matters.
inline void parallel_chunks(std::size_t count, int jobs,
                            const std::function<void(std::size_t, std::size_t, int)>& fn) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 1 || count < 1024) {
        fn(0, count, 0);
        return;
    }
    std::size_t n = static_cast<std::size_t>(jobs);
    if (n > count) n = count;
    std::vector<std::thread> workers;
    workers.reserve(n);
    std::size_t chunk = (count + n - 1) / n;
    for (std::size_t w = 0; w < n; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&fn, lo, hi, w] { fn(lo, hi, static_cast<int>(w)); });
    }
    for (auto& t : workers) t.join();
}

}  // namespace tripoly
