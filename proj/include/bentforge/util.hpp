// Small shared helpers: parity, hex I/O, modular canonicalization, trial
// division, FNV hashing and a chunked parallel-for with deterministic merge.
#ifndef BENTFORGE_UTIL_HPP
#define BENTFORGE_UTIL_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>

namespace bentforge {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bentforge

namespace bentforge::util {

inline int parity(uint64_t v) { return std::popcount(v) & 1; }

inline int64_t mod_pos(int64_t k, int64_t m) {
    int64_t r = k % m;
    return r < 0 ? r + m : r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Distinct prime factors by trial division. Intended for inputs < 2^32.
inline std::vector<uint64_t> distinct_prime_factors(uint64_t v) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
        if (v % p == 0) {
            ps.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) ps.push_back(v);
    return ps;
}

inline std::string to_hex(uint64_t v) {
    if (v == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    while (v) {
        s.insert(s.begin(), digits[v & 0xf]);
        v >>= 4;
    }
    return s;
}

inline uint64_t parse_hex(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty hex string");
    size_t pos = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) pos = 2;
    uint64_t v = 0;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("bad hex digit in \"" + s + "\"");
        if (v >> 60) throw std::invalid_argument("hex value too large: \"" + s + "\"");
        v = (v << 4) | uint64_t(d);
    }
    return v;
}

inline uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Runs fn(begin, end) over contiguous chunks of [0, total). With threads <= 1
// everything happens inline; otherwise each chunk runs on its own worker and
// results land in caller-owned disjoint slices, so the merge is order-stable.
inline void parallel_chunks(uint64_t total, int threads,
                            const std::function<void(uint64_t, uint64_t)>& fn) {
    if (threads <= 1 || total < 2) {
        fn(0, total);
        return;
    }
    uint64_t nchunk = std::min<uint64_t>(uint64_t(threads), total);
    std::vector<std::thread> pool;
    pool.reserve(nchunk);
    uint64_t step = total / nchunk, rem = total % nchunk, begin = 0;
    for (uint64_t i = 0; i < nchunk; ++i) {
        uint64_t len = step + (i < rem ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace bentforge::util

#endif
