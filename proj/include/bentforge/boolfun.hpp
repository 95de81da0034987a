// Boolean functions on GF(2^n) as truth tables: exact Walsh spectra via a
// fast transform with a dual-basis index relabeling, bentness and
// hyper-bentness tests, duals, decimations and trace-polynomial evaluation.
#ifndef BENTFORGE_BOOLFUN_HPP
#define BENTFORGE_BOOLFUN_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bentforge/field.hpp"
#include "bentforge/util.hpp"

namespace bentforge::boolfun {

using field::FieldCtx;
using field::FieldCtxPtr;

class BooleanFunction {
public:
    BooleanFunction(FieldCtxPtr ctx, std::vector<uint8_t> table)
        : ctx_(std::move(ctx)), table_(std::move(table)) {
        if (table_.size() != ctx_->size())
            throw std::invalid_argument("truth table length " + std::to_string(table_.size()) +
                                        " does not match field size " +
                                        std::to_string(ctx_->size()));
        for (uint8_t b : table_)
            if (b > 1) throw std::invalid_argument("truth table entries must be bits");
    }

    static BooleanFunction zero(FieldCtxPtr ctx) {
        std::vector<uint8_t> t(ctx->size(), 0);
        return BooleanFunction(std::move(ctx), std::move(t));
    }

    const FieldCtx& ctx() const { return *ctx_; }
    const FieldCtxPtr& ctx_ptr() const { return ctx_; }
    uint32_t size() const { return uint32_t(table_.size()); }
    uint8_t operator()(uint32_t x) const { return table_[x]; }
    const std::vector<uint8_t>& table() const { return table_; }

private:
    FieldCtxPtr ctx_;
    std::vector<uint8_t> table_;
};

struct WalshSpectrum {
    int n = 0;
    std::vector<int32_t> values;

    int64_t parseval_sum() const {
        int64_t s = 0;
        for (int32_t v : values) s += int64_t(v) * v;
        return s;
    }
    bool parseval_ok() const { return parseval_sum() == (int64_t(1) << (2 * n)); }

    std::map<int32_t, uint32_t> histogram() const {
        std::map<int32_t, uint32_t> h;
        for (int32_t v : values) ++h[v];
        return h;
    }
    std::set<int32_t> value_set() const { return {values.begin(), values.end()}; }
};

// Direct O(2^n) evaluation of a single Walsh coefficient; the slow oracle for
// walsh_transform.
inline int64_t walsh_at(const BooleanFunction& f, uint32_t b) {
    const FieldCtx& F = f.ctx();
    int64_t s = 0;
    for (uint32_t x = 0; x < F.size(); ++x)
        s += ((f(x) ^ F.trace(F.mul(b, x))) ? -1 : 1);
    return s;
}

namespace detail {

// Rows of the Gram matrix G_ij = Tr(beta_i beta_j) of the coordinate basis,
// packed as bit masks. Tr(b x) = <Gb, x>, which turns the field-indexed
// transform into the plain Hadamard butterfly.
inline std::vector<uint32_t> gram_rows(const FieldCtx& F) {
    int n = F.degree();
    std::vector<uint32_t> rows(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (F.trace(F.mul(uint32_t(1) << i, uint32_t(1) << j)))
                rows[i] |= uint32_t(1) << j;
    return rows;
}

inline uint32_t gram_apply(const std::vector<uint32_t>& rows, uint32_t b) {
    uint32_t u = 0;
    while (b) {
        int i = std::countr_zero(b);
        u ^= rows[i];
        b &= b - 1;
    }
    return u;
}

inline void fwht(std::vector<int32_t>& a) {
    size_t n = a.size();
    for (size_t len = 1; len < n; len <<= 1)
        for (size_t i = 0; i < n; i += 2 * len)
            for (size_t j = i; j < i + len; ++j) {
                int32_t x = a[j], y = a[j + len];
                a[j] = x + y;
                a[j + len] = x - y;
            }
}

}  // namespace detail

inline WalshSpectrum walsh_transform(const BooleanFunction& f) {
    const FieldCtx& F = f.ctx();
    std::vector<int32_t> buf(F.size());
    for (uint32_t x = 0; x < F.size(); ++x) buf[x] = f(x) ? -1 : 1;
    detail::fwht(buf);
    auto rows = detail::gram_rows(F);
    WalshSpectrum s;
    s.n = F.degree();
    s.values.resize(F.size());
    for (uint32_t b = 0; b < F.size(); ++b) s.values[b] = buf[detail::gram_apply(rows, b)];
    return s;
}

inline void require_even_degree(int n) {
    if (n % 2 != 0)
        throw std::domain_error("bentness is defined for even degree only, got n = " +
                                std::to_string(n));
}

inline bool is_bent(const WalshSpectrum& s) {
    require_even_degree(s.n);
    int32_t w = int32_t(1) << (s.n / 2);
    for (int32_t v : s.values)
        if (v != w && v != -w) return false;
    return true;
}

inline bool is_bent(const BooleanFunction& f) {
    require_even_degree(f.ctx().degree());
    return is_bent(walsh_transform(f));
}

// Bentness via the weaker congruence W(b) = 2^m mod 2^(m+1) on b != 0, which
// is equivalent to the exact +-2^m condition.
inline bool is_bent_mod(const WalshSpectrum& s) {
    require_even_degree(s.n);
    int m = s.n / 2;
    int64_t mod = int64_t(1) << (m + 1), want = int64_t(1) << m;
    for (size_t b = 1; b < s.values.size(); ++b)
        if (util::mod_pos(s.values[b], mod) != want) return false;
    return true;
}

inline bool is_bent_mod(const BooleanFunction& f) {
    require_even_degree(f.ctx().degree());
    return is_bent_mod(walsh_transform(f));
}

inline BooleanFunction dual(const BooleanFunction& f) {
    const FieldCtx& F = f.ctx();
    require_even_degree(F.degree());
    WalshSpectrum s = walsh_transform(f);
    if (!is_bent(s)) throw std::domain_error("dual of a non-bent function");
    int m = F.degree() / 2;
    int32_t w = int32_t(1) << m;
    std::vector<uint8_t> d(F.size());
    int64_t mod2 = int64_t(1) << (m + 2);
    for (uint32_t b = 0; b < F.size(); ++b) {
        d[b] = s.values[b] == -w ? 1 : 0;
        int64_t signedw = d[b] ? -int64_t(w) : int64_t(w);
        if (util::mod_pos(s.values[b] - signedw, mod2) != 0)
            throw std::logic_error("dual sign fails the mod 2^(m+2) self-check");
    }
    return BooleanFunction(f.ctx_ptr(), std::move(d));
}

inline BooleanFunction decimate(const BooleanFunction& f, int64_t k) {
    const FieldCtx& F = f.ctx();
    int64_t kc = util::mod_pos(k, F.order());
    if (util::gcd_u64(uint64_t(kc), F.order()) != 1)
        throw std::domain_error("decimation exponent " + std::to_string(k) +
                                " is not coprime to 2^n - 1");
    std::vector<uint8_t> t(F.size());
    for (uint32_t x = 0; x < F.size(); ++x) t[x] = f(F.pow(x, kc));
    return BooleanFunction(f.ctx_ptr(), std::move(t));
}

// Smallest representative of the cyclotomic coset of k under doubling.
inline uint32_t coset_leader(uint32_t k, int n, uint64_t order) {
    uint64_t best = k, v = k;
    for (int j = 1; j < n; ++j) {
        v = (v * 2) % order;
        best = std::min(best, v);
    }
    return uint32_t(best);
}

// Scans one representative per cyclotomic coset of the exponents coprime to
// 2^n - 1; k -> 2k only permutes spectrum magnitudes, so this covers every
// decimation class.
inline bool is_hyper_bent(const BooleanFunction& f, int threads = 1) {
    const FieldCtx& F = f.ctx();
    require_even_degree(F.degree());
    std::vector<uint32_t> reps;
    for (uint32_t k = 1; k < F.order(); ++k) {
        if (util::gcd_u64(k, F.order()) != 1) continue;
        if (coset_leader(k, F.degree(), F.order()) == k) reps.push_back(k);
    }
    if (threads <= 1) {
        for (uint32_t k : reps)
            if (!is_bent(decimate(f, k))) return false;
        return true;
    }
    std::vector<uint8_t> ok(reps.size(), 0);
    util::parallel_chunks(reps.size(), threads, [&](uint64_t lo, uint64_t hi) {
        for (uint64_t i = lo; i < hi; ++i) ok[i] = is_bent(decimate(f, reps[i])) ? 1 : 0;
    });
    return std::all_of(ok.begin(), ok.end(), [](uint8_t b) { return b != 0; });
}

// 0 iff x is zero or a cube; the complement is where Tr^2_1(x^((2^n-1)/3))
// takes the value 1.
inline int cube_coset_indicator(const FieldCtx& F, uint32_t x) {
    require_even_degree(F.degree());
    if (x == 0) return 0;
    return F.pow(x, F.order() / 3) == 1 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Trace polynomials: f(x) = sum_i Tr^{d_i}_1(c_i x^{e_i}).

struct TraceTerm {
    uint32_t coeff = 0;
    uint64_t exponent = 0;
    int subfield_degree = 0;
};

struct TracePolynomial {
    std::vector<TraceTerm> terms;

    int evaluate(const FieldCtx& F, uint32_t x) const {
        int acc = 0;
        for (const TraceTerm& t : terms) {
            uint32_t v = F.mul(t.coeff, F.pow(x, int64_t(t.exponent)));
            acc ^= F.trace_rel(v, t.subfield_degree);  // rejects values outside the subfield
        }
        return acc;
    }

    BooleanFunction to_function(FieldCtxPtr ctx) const {
        std::vector<uint8_t> t(ctx->size());
        for (uint32_t x = 0; x < ctx->size(); ++x) t[x] = uint8_t(evaluate(*ctx, x));
        return BooleanFunction(std::move(ctx), std::move(t));
    }
};

// ---------------------------------------------------------------------------
// Truth-table hex I/O: byte j holds inputs 8j..8j+7, bit (x & 7) within the
// byte, bytes emitted in ascending order of x.

inline std::string table_to_hex(const BooleanFunction& f) {
    static const char* digits = "0123456789abcdef";
    std::vector<uint8_t> bytes((f.size() + 7) / 8, 0);
    for (uint32_t x = 0; x < f.size(); ++x)
        if (f(x)) bytes[x >> 3] |= uint8_t(1) << (x & 7);
    std::string s;
    s.reserve(2 * bytes.size());
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

inline BooleanFunction table_from_hex(FieldCtxPtr ctx, const std::string& hex) {
    size_t nbytes = (ctx->size() + 7) / 8;
    if (hex.size() != 2 * nbytes)
        throw std::invalid_argument("expected " + std::to_string(2 * nbytes) +
                                    " hex digits for n = " + std::to_string(ctx->degree()));
    std::vector<uint8_t> table(ctx->size(), 0);
    for (size_t j = 0; j < nbytes; ++j) {
        uint8_t byte = uint8_t(util::parse_hex(hex.substr(2 * j, 2)));
        for (int b = 0; b < 8; ++b) {
            uint32_t x = uint32_t(8 * j + b);
            if (x < ctx->size()) table[x] = (byte >> b) & 1;
            else if ((byte >> b) & 1)
                throw std::invalid_argument("hex table has bits beyond 2^n inputs");
        }
    }
    return BooleanFunction(std::move(ctx), std::move(table));
}

inline nlohmann::json spectrum_to_json(const WalshSpectrum& s) {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [v, c] : s.histogram()) hist.push_back({{"value", v}, {"count", c}});
    return {{"n", s.n}, {"values", s.values}, {"histogram", hist}};
}

}  // namespace bentforge::boolfun

#endif
