// Modular add-and-carry machinery: for s = sum_i t_i a^(i) mod 2^n - 1 with
// prescribed binary digit sequences, the unique n-periodic carry sequence
// with entries in [t_-, t_+ - 1], plus the digit/weight bookkeeping used by
// the weight-inequality argument.
#ifndef BENTFORGE_CARRY_HPP
#define BENTFORGE_CARRY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bentforge/util.hpp"

namespace bentforge::carry {

struct PeriodicBitSeq {
    int n = 0;
    std::vector<uint8_t> bits;

    PeriodicBitSeq() = default;
    PeriodicBitSeq(int period, std::vector<uint8_t> b) : n(period), bits(std::move(b)) {
        if (n < 1 || bits.size() != size_t(n))
            throw std::invalid_argument("bit sequence length must equal the period");
        for (uint8_t v : bits)
            if (v > 1) throw std::invalid_argument("sequence entries must be bits");
    }

    // Canonical digits of v mod 2^n - 1: representative in [0, 2^n - 2], the
    // all-zero string when the value is divisible.
    static PeriodicBitSeq from_value(int64_t v, int period) {
        int64_t order = (int64_t(1) << period) - 1;
        uint64_t r = uint64_t(util::mod_pos(v, order));
        std::vector<uint8_t> b(period);
        for (int j = 0; j < period; ++j) b[j] = (r >> j) & 1;
        return PeriodicBitSeq(period, std::move(b));
    }

    uint8_t at(int j) const { return bits[util::mod_pos(j, n)]; }
    int64_t value() const {
        int64_t v = 0;
        for (int j = 0; j < n; ++j) v |= int64_t(bits[j]) << j;
        return v;
    }
    int weight() const {
        int w = 0;
        for (uint8_t b : bits) w += b;
        return w;
    }
    bool is_constant() const {
        for (uint8_t b : bits)
            if (b != bits[0]) return false;
        return true;
    }
};

struct CarrySolution {
    PeriodicBitSeq digits;
    std::vector<int> carries;  // carries[j] pairs with digits[j]
    int carry_min = 0;         // t_-
    int carry_max = 0;         // t_+ - 1
};

namespace detail {

// One sweep of the cyclic recurrence 2 c_j + s_j = rhs_j + c_{j-1} with
// floor division, starting the cycle at index `start` with incoming carry
// `gamma`. Returns the wrap-around carry.
inline int sweep(const std::vector<int>& rhs, const std::vector<uint8_t>& s, int start,
                 int gamma, std::vector<int>& c) {
    int n = int(rhs.size());
    int cur = gamma;
    for (int k = 0; k < n; ++k) {
        int j = (start + k) % n;
        cur = (rhs[j] - int(s[j]) + cur) >> 1;  // arithmetic shift = floor
        c[j] = cur;
    }
    return cur;
}

}  // namespace detail

// Digits of s = sum_i t_i a^(i) mod 2^n - 1 together with the unique bounded
// carry sequence. The carry vector is found by iterating the cyclic
// recurrence from the largest admissible wrap carry until stable; starting
// at the top makes the iteration decrease monotonically onto the unique
// solution, which the exactness check below certifies. Uniqueness is then
// re-derived independently from every starting index.
inline CarrySolution solve_carries(int n, const std::vector<int>& coeffs,
                                   const std::vector<PeriodicBitSeq>& seqs) {
    if (n < 1 || n > 62) throw std::invalid_argument("period out of range");
    if (coeffs.empty() || coeffs.size() != seqs.size())
        throw std::invalid_argument("need matching, nonempty coefficient and sequence lists");
    int t_minus = 0, t_plus = 0;
    bool any_nonconstant = false;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) throw std::invalid_argument("coefficients must be nonzero");
        if (seqs[i].n != n) throw std::invalid_argument("sequence period mismatch");
        (coeffs[i] < 0 ? t_minus : t_plus) += coeffs[i];
        any_nonconstant |= !seqs[i].is_constant();
    }
    if (!any_nonconstant)
        throw std::invalid_argument("all sequences constant: bounded carries are not determined");

    int64_t total = 0;
    for (size_t i = 0; i < coeffs.size(); ++i) total += int64_t(coeffs[i]) * seqs[i].value();
    PeriodicBitSeq digits = PeriodicBitSeq::from_value(total, n);

    std::vector<int> rhs(n, 0);
    for (int j = 0; j < n; ++j)
        for (size_t i = 0; i < coeffs.size(); ++i) rhs[j] += coeffs[i] * int(seqs[i].bits[j]);

    auto solve_from = [&](int start) {
        std::vector<int> c(n, 0);
        int gamma = t_plus - 1;
        int max_sweeps = t_plus - t_minus + 2;
        bool stable = false;
        for (int it = 0; it < max_sweeps && !stable; ++it) {
            int next = detail::sweep(rhs, digits.bits, start, gamma, c);
            stable = (next == gamma);
            gamma = next;
        }
        if (!stable) throw std::logic_error("carry iteration failed to stabilize");
        return c;
    };

    CarrySolution out;
    out.digits = digits;
    out.carries = solve_from(0);
    out.carry_min = t_minus;
    out.carry_max = t_plus - 1;

    for (int j = 0; j < n; ++j) {
        int prev = out.carries[util::mod_pos(j - 1, n)];
        if (2 * out.carries[j] + int(digits.bits[j]) != rhs[j] + prev)
            throw std::logic_error("carry recurrence violated at index " + std::to_string(j));
        if (out.carries[j] < t_minus || out.carries[j] > t_plus - 1)
            throw std::logic_error("carry out of bounds at index " + std::to_string(j));
    }
    for (int start = 1; start < n; ++start)
        if (solve_from(start) != out.carries)
            throw std::logic_error("carry sequence not unique across starting indices");
    return out;
}

// The paired systems s = u - a + b and t = u + a - b mod 2^(2m) - 1, solved
// with coefficient patterns (1, -1, 1) and (1, 1, -1) on (u, a, b); carries
// range over {-1, 0, 1}.
struct StringSystems {
    int n = 0;
    PeriodicBitSeq u, a, b;
    CarrySolution s_side;  // carries c_j, digits s_j
    CarrySolution t_side;  // carries d_j, digits t_j
    int64_t weight_sum = 0;  // sum_j (a_j + b_j - c_j - d_j)
};

inline StringSystems solve_string_systems(int m, int u_choice, int64_t a, int64_t b) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    StringSystems sys;
    sys.n = 2 * m;
    int64_t order = (int64_t(1) << sys.n) - 1;
    int64_t u = (order / 3) * (u_choice ? 2 : 1);
    sys.u = PeriodicBitSeq::from_value(u, sys.n);
    sys.a = PeriodicBitSeq::from_value(a, sys.n);
    sys.b = PeriodicBitSeq::from_value(b, sys.n);
    sys.s_side = solve_carries(sys.n, {1, -1, 1}, {sys.u, sys.a, sys.b});
    sys.t_side = solve_carries(sys.n, {1, 1, -1}, {sys.u, sys.a, sys.b});
    for (int j = 0; j < sys.n; ++j)
        sys.weight_sum += int64_t(sys.a.bits[j]) + sys.b.bits[j] - sys.s_side.carries[j] -
                          sys.t_side.carries[j];
    return sys;
}

inline int64_t weight_identity_value(int m, int u_choice, int64_t a, int64_t b) {
    return solve_string_systems(m, u_choice, a, b).weight_sum;
}

// Nonnegativity of sum_j (a_j + b_j - c_j - d_j); equivalent to the weight
// inequality via the carry sum identity.
inline bool weight_identity_check(int m, int u_choice, int64_t a, int64_t b) {
    return weight_identity_value(m, u_choice, a, b) >= 0;
}

}  // namespace bentforge::carry

#endif
