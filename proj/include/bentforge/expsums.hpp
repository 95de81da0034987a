// Integer-valued exponential sums over GF(2^m) and GF(2^n): Kloosterman and
// Dillon-type sums, the binary weight of residues mod 2^n - 1, and the
// congruence checks that tie Walsh coefficients to Kloosterman values.
// Everything accumulates in 64-bit signed integers; no floating point.
#ifndef BENTFORGE_EXPSUMS_HPP
#define BENTFORGE_EXPSUMS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bentforge/boolfun.hpp"
#include "bentforge/field.hpp"
#include "bentforge/util.hpp"

namespace bentforge::expsums {

using field::FieldCtx;

// K_m(a) = 1 + sum_{x != 0} (-1)^{Tr(a x + 1/x)} over the given field.
inline int64_t kloosterman(const FieldCtx& F, uint32_t a) {
    int64_t s = 1;
    for (uint32_t x = 1; x < F.size(); ++x)
        s += F.trace(F.add(F.mul(a, x), F.inv(x))) ? -1 : 1;
    return s;
}

// Same sum with the argument and the summation range inside the index-2
// subfield of F (elements fixed by Frobenius^(n/2)). Values agree with
// kloosterman() over an abstract GF(2^m) because traces restrict.
inline int64_t kloosterman_in_subfield(const FieldCtx& F, uint32_t a_sub) {
    int n = F.degree();
    if (n % 2 != 0) throw std::domain_error("index-2 subfield requires even degree");
    int m = n / 2;
    if (!F.in_subfield(a_sub, m))
        throw std::domain_error("argument does not lie in the index-2 subfield");
    int64_t s = 1;
    for (uint32_t y : field::subfield_elements(F, m)) {
        if (y == 0) continue;
        s += F.trace_rel(F.add(F.mul(a_sub, y), F.inv(y)), m) ? -1 : 1;
    }
    return s;
}

// B = sum_{x != 0} (-1)^{Tr(a x^(2^m - 1) + c x)} with n = 2m.
inline int64_t dillon_sum(const FieldCtx& F, uint32_t a, uint32_t c) {
    if (F.degree() % 2 != 0) throw std::domain_error("Dillon sum requires even degree");
    if (a == 0 || c == 0) throw std::domain_error("Dillon sum requires nonzero a and c");
    int m = F.degree() / 2;
    int64_t e = (int64_t(1) << m) - 1;
    int64_t s = 0;
    for (uint32_t x = 1; x < F.size(); ++x)
        s += F.trace(F.add(F.mul(a, F.pow(x, e)), F.mul(c, x))) ? -1 : 1;
    return s;
}

// Binary weight of the canonical representative of k modulo 2^n - 1; zero
// when 2^n - 1 divides k.
inline int weight_mod(int64_t k, int n) {
    if (n < 1) throw std::invalid_argument("weight_mod needs n >= 1");
    int64_t order = (int64_t(1) << n) - 1;
    return std::popcount(uint64_t(util::mod_pos(k, order)));
}

// Brute-force check of wt(a) + wt(b) + wt(s) + wt(t) >= 2m with
// s = u - a + b and t = u + a - b mod 2^(2m) - 1, u in {(2^(2m)-1)/3, twice
// that}. Cross-validates the digraph certificate.
inline bool string_inequality_oracle(int m, int u_choice, int64_t a, int64_t b) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    int n = 2 * m;
    int64_t order = (int64_t(1) << n) - 1;
    int64_t u = (order / 3) * (u_choice ? 2 : 1);
    int64_t s = util::mod_pos(u - a + b, order);
    int64_t t = util::mod_pos(u + a - b, order);
    return weight_mod(a, n) + weight_mod(b, n) + weight_mod(s, n) + weight_mod(t, n) >= n;
}

// Inverse of an odd residue modulo 2^M by Newton iteration.
inline uint64_t odd_inverse_mod_2pow(uint64_t a, int M) {
    uint64_t mask = M >= 64 ? ~uint64_t(0) : (uint64_t(1) << M) - 1;
    uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv = (inv * (2 - a * inv)) & mask;
    return inv & mask;
}

namespace detail {

// Truth table of Tr(a x^(2^m - 1)) + Tr^2_1(x^((2^n - 1)/3)).
inline std::vector<uint8_t> binomial_a1_table(const FieldCtx& F, uint32_t a) {
    int m = F.degree() / 2;
    int64_t e1 = (int64_t(1) << m) - 1;
    int64_t e2 = F.order() / 3;
    std::vector<uint8_t> t(F.size(), 0);
    for (uint32_t x = 1; x < F.size(); ++x)
        t[x] = uint8_t(F.trace(F.mul(a, F.pow(x, e1))) ^ F.trace_rel(F.pow(x, e2), 2));
    return t;
}

}  // namespace detail

// W_{f_{a,1}}(c) = (4 - K_m(a^(2^m + 1))) / 3 + 2^m  (mod 2^(m+1)), the
// division read as multiplication by the inverse of 3 mod 2^(m+1). Defined
// for even m only.
inline bool walsh_congruence_check(const field::FieldCtxPtr& Fn, uint32_t a, uint32_t c) {
    const FieldCtx& F = *Fn;
    int n = F.degree();
    if (n % 4 != 0) throw std::domain_error("walsh congruence requires n = 2m with m even");
    if (a == 0 || c == 0) throw std::domain_error("requires nonzero a and c");
    int m = n / 2;
    boolfun::BooleanFunction f(Fn, detail::binomial_a1_table(F, a));
    int64_t w = boolfun::walsh_at(f, c);
    int64_t k = kloosterman_in_subfield(F, F.pow(a, (int64_t(1) << m) + 1));
    int64_t mod = int64_t(1) << (m + 1);
    int64_t inv3 = int64_t(odd_inverse_mod_2pow(3, m + 1));
    int64_t rhs = util::mod_pos(util::mod_pos(4 - k, mod) * inv3 + (int64_t(1) << m), mod);
    return util::mod_pos(w, mod) == rhs;
}

}  // namespace bentforge::expsums

#endif
