// Exact arithmetic in GF(2^n) for n <= 24: polynomial-basis contexts with an
// explicit modulus, quadratic tower extensions, absolute/relative traces and
// deterministic subfield embeddings. Contexts are immutable once built and
// safe to share across threads.
#ifndef BENTFORGE_FIELD_HPP
#define BENTFORGE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bentforge/util.hpp"

namespace bentforge::field {

// ---------------------------------------------------------------------------
// GF(2)[x] on bit-packed encodings (bit i = coefficient of x^i).

inline int poly_degree(uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

inline uint64_t poly_mod(uint64_t a, uint64_t p) {
    int dp = poly_degree(p);
    int da;
    while ((da = poly_degree(a)) >= dp) a ^= p << (da - dp);
    return a;
}

inline uint64_t poly_gcd(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = poly_mod(a, b);
        a = b;
        b = t;
    }
    return a;
}

// Carryless square: spreads the low 32 bits of a to even positions.
inline uint64_t poly_square(uint64_t a) {
    uint64_t r = 0;
    for (int i = 0; a >> i; ++i)
        if ((a >> i) & 1) r |= uint64_t(1) << (2 * i);
    return r;
}

// Irreducibility over GF(2) via gcd(x^(2^k) - x, p) = 1 for k <= deg/2.
inline bool poly_is_irreducible(uint64_t p) {
    int d = poly_degree(p);
    if (d < 1) return false;
    uint64_t t = 2;  // x
    for (int k = 1; k <= d / 2; ++k) {
        t = poly_mod(poly_square(t), p);
        if (poly_gcd(t ^ 2, p) != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

struct FieldSpec {
    int degree = 0;
    uint32_t modulus = 0;  // degree+1 bits, monic

    void validate() const {
        if (degree < 1 || degree > 24)
            throw std::invalid_argument("field degree must be in [1, 24], got " +
                                        std::to_string(degree));
        if (poly_degree(modulus) != degree)
            throw std::invalid_argument("modulus 0x" + util::to_hex(modulus) +
                                        " is not monic of degree " + std::to_string(degree));
        if (!poly_is_irreducible(modulus))
            throw std::invalid_argument("modulus 0x" + util::to_hex(modulus) +
                                        " is reducible over GF(2)");
    }
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
public:
    enum class Kind { polynomial, quadratic_tower };

    static FieldCtxPtr make(FieldSpec spec) {
        spec.validate();
        return FieldCtxPtr(new FieldCtx(spec));
    }

    // GF(2^(2m)) = base[w] / (w^2 + w + gamma); irreducible iff Tr(gamma) = 1.
    // Elements encode as lo | (hi << m) for lo + hi*w, so the base field
    // embeds with unchanged encodings.
    static FieldCtxPtr make_quadratic_extension(FieldCtxPtr base, uint32_t gamma) {
        if (!base) throw std::invalid_argument("null base context");
        if (2 * base->degree() > 24)
            throw std::invalid_argument("tower degree exceeds supported limit of 24");
        if (gamma >= base->size() || base->trace(gamma) != 1)
            throw std::invalid_argument("gamma must satisfy Tr(gamma) = 1 in the base field");
        return FieldCtxPtr(new FieldCtx(std::move(base), gamma));
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    Kind kind() const { return kind_; }
    int degree() const { return n_; }
    uint32_t size() const { return size_; }
    uint32_t order() const { return size_ - 1; }
    uint32_t modulus() const { return modulus_; }  // 0 for towers
    const FieldCtxPtr& base() const { return base_; }
    uint32_t tower_gamma() const { return gamma_; }
    uint32_t generator() const { return generator_; }
    uint32_t trace_mask() const { return trace_mask_; }

    std::string describe() const {
        if (kind_ == Kind::polynomial)
            return "gf2e(n=" + std::to_string(n_) + ", mod=0x" + util::to_hex(modulus_) + ")";
        return "tower(" + base_->describe() + ", gamma=0x" + util::to_hex(gamma_) + ")";
    }

    uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (!log_.empty()) {
            if (a == 0 || b == 0) return 0;
            uint32_t s = log_[a] + log_[b];
            if (s >= order()) s -= order();
            return exp_[s];
        }
        return mul_notable(a, b);
    }

    // Reduce-path multiplication, independent of the log/exp tables; kept as
    // the oracle the table path is tested against.
    uint32_t mul_notable(uint32_t a, uint32_t b) const {
        if (kind_ == Kind::polynomial) {
            uint32_t r = 0, top = uint32_t(1) << n_;
            while (a) {
                if (a & 1) r ^= b;
                a >>= 1;
                b <<= 1;
                if (b & top) b ^= modulus_;
            }
            return r;
        }
        const FieldCtx& B = *base_;
        int m = B.degree();
        uint32_t lomask = B.size() - 1;
        uint32_t a0 = a & lomask, a1 = a >> m, b0 = b & lomask, b1 = b >> m;
        uint32_t p0 = B.mul_notable(a0, b0);
        uint32_t p1 = B.mul_notable(a1, b1);
        uint32_t mid = B.mul_notable(a0 ^ a1, b0 ^ b1);
        uint32_t lo = p0 ^ B.mul_notable(p1, gamma_);
        uint32_t hi = mid ^ p0;
        return lo | (hi << m);
    }

    uint32_t sqr(uint32_t a) const { return mul(a, a); }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        if (!log_.empty()) {
            uint32_t l = log_[a];
            return exp_[l == 0 ? 0 : order() - l];
        }
        return pow(a, int64_t(order()) - 1);
    }

    // Square-and-multiply; exponents are taken modulo 2^n - 1 for nonzero
    // bases. pow(0, e) is 0 for e > 0, 1 for e = 0, and rejected for e < 0.
    uint32_t pow(uint32_t a, int64_t e) const {
        if (a == 0) {
            if (e > 0) return 0;
            if (e == 0) return 1;
            throw std::domain_error("zero raised to a negative power");
        }
        uint64_t em = uint64_t(util::mod_pos(e, order()));
        uint32_t r = 1, base = a;
        while (em) {
            if (em & 1) r = mul(r, base);
            base = mul(base, base);
            em >>= 1;
        }
        return r;
    }

    int trace(uint32_t a) const { return util::parity(a & trace_mask_); }

    bool in_subfield(uint32_t a, int d) const {
        uint32_t t = a;
        for (int i = 0; i < d; ++i) t = sqr(t);
        return t == a;
    }

    // Trace of the order-2^d subfield down to GF(2), evaluated on an element
    // already lying in that subfield.
    int trace_rel(uint32_t a, int d) const {
        if (d < 1 || n_ % d != 0)
            throw std::invalid_argument("subfield degree " + std::to_string(d) +
                                        " does not divide " + std::to_string(n_));
        if (!in_subfield(a, d))
            throw std::domain_error("element 0x" + util::to_hex(a) +
                                    " is not fixed by Frobenius^" + std::to_string(d));
        uint32_t acc = a, t = a;
        for (int i = 1; i < d; ++i) {
            t = sqr(t);
            acc ^= t;
        }
        if (acc > 1) throw std::logic_error("relative trace left the prime field");
        return int(acc);
    }

private:
    explicit FieldCtx(const FieldSpec& spec)
        : kind_(Kind::polynomial), n_(spec.degree), modulus_(spec.modulus) {
        finish_construction();
    }

    FieldCtx(FieldCtxPtr base, uint32_t gamma)
        : kind_(Kind::quadratic_tower), n_(2 * base->degree()), base_(std::move(base)),
          gamma_(gamma) {
        finish_construction();
    }

    void finish_construction() {
        size_ = uint32_t(1) << n_;
        trace_mask_ = 0;
        for (int i = 0; i < n_; ++i) {
            uint32_t acc = uint32_t(1) << i, t = acc;
            for (int j = 1; j < n_; ++j) {
                t = mul_notable(t, t);
                acc ^= t;
            }
            if (acc > 1) throw std::logic_error("trace of basis element not in GF(2)");
            if (acc) trace_mask_ |= uint32_t(1) << i;
        }
        find_generator();
        if (n_ <= 16) build_tables();
    }

    uint32_t pow_notable(uint32_t a, uint64_t e) const {
        uint32_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_notable(r, base);
            base = mul_notable(base, base);
            e >>= 1;
        }
        return r;
    }

    void find_generator() {
        if (order() == 1) {
            generator_ = 1;
            return;
        }
        auto primes = util::distinct_prime_factors(order());
        for (uint32_t g = 2; g < size_; ++g) {
            bool ok = true;
            for (uint64_t p : primes)
                if (pow_notable(g, order() / p) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                generator_ = g;
                return;
            }
        }
        throw std::logic_error("no multiplicative generator found");
    }

    void build_tables() {
        exp_.assign(order(), 0);
        log_.assign(size_, 0);
        uint32_t v = 1;
        for (uint32_t i = 0; i < order(); ++i) {
            exp_[i] = v;
            log_[v] = i;
            v = mul_notable(v, generator_);
        }
        if (v != 1) throw std::logic_error("generator order mismatch while building tables");
    }

    Kind kind_;
    int n_;
    uint32_t size_ = 0;
    uint32_t modulus_ = 0;
    FieldCtxPtr base_;
    uint32_t gamma_ = 0;
    uint32_t trace_mask_ = 0;
    uint32_t generator_ = 0;
    std::vector<uint32_t> exp_, log_;
};

// Value-semantics wrapper binding an encoding to its context. Mixing
// contexts in one expression is a usage error.
struct FieldElement {
    uint32_t v = 0;
    const FieldCtx* ctx = nullptr;

    FieldElement() = default;
    FieldElement(uint32_t value, const FieldCtx& c) : v(value), ctx(&c) {
        if (value >= c.size())
            throw std::invalid_argument("encoding 0x" + util::to_hex(value) +
                                        " out of range for " + c.describe());
    }

    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (a.ctx != b.ctx)
            throw std::invalid_argument("field elements belong to different contexts");
    }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        check_same(a, b);
        return {a.ctx->add(a.v, b.v), *a.ctx};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        check_same(a, b);
        return {a.ctx->mul(a.v, b.v), *a.ctx};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.ctx == b.ctx && a.v == b.v;
    }
    FieldElement inverse() const { return {ctx->inv(v), *ctx}; }
    FieldElement pow(int64_t e) const { return {ctx->pow(v, e), *ctx}; }
    int trace() const { return ctx->trace(v); }
};

// ---------------------------------------------------------------------------
// Subfield embeddings.

struct Embedding {
    FieldCtxPtr source, target;
    uint32_t image_of_generator = 0;
    std::vector<uint32_t> fwd;                    // indexed by source encoding
    std::unordered_map<uint32_t, uint32_t> rev;

    uint32_t embed(uint32_t x) const { return fwd[x]; }

    std::optional<uint32_t> preimage(uint32_t y) const {
        auto it = rev.find(y);
        if (it == rev.end()) return std::nullopt;
        return it->second;
    }
};

// All elements of the order-2^d subfield of tgt, ascending by encoding.
inline std::vector<uint32_t> subfield_elements(const FieldCtx& tgt, int d) {
    if (d < 1 || tgt.degree() % d != 0)
        throw std::invalid_argument("no subfield of degree " + std::to_string(d));
    uint64_t want = uint64_t(1) << d;
    uint64_t power = tgt.order() / ((uint64_t(1) << d) - 1);
    std::vector<bool> seen(tgt.size(), false);
    seen[0] = true;
    uint64_t found = 1;
    for (uint32_t x = 1; x < tgt.size() && found < want; ++x) {
        uint32_t y = tgt.pow(x, int64_t(power));
        if (!seen[y]) {
            seen[y] = true;
            ++found;
        }
    }
    if (found != want) throw std::logic_error("subfield enumeration incomplete");
    std::vector<uint32_t> out;
    out.reserve(want);
    for (uint32_t y = 0; y < tgt.size(); ++y)
        if (seen[y]) out.push_back(y);
    return out;
}

// Ring embedding of source into target, sending the source generator to the
// root of the source modulus with the numerically smallest encoding. The
// source must be a polynomial-basis context whose degree divides the
// target's.
inline Embedding make_embedding(FieldCtxPtr source, FieldCtxPtr target) {
    if (!source || !target) throw std::invalid_argument("null context");
    if (source->kind() != FieldCtx::Kind::polynomial)
        throw std::invalid_argument("embedding source must be a polynomial-basis context");
    int d = source->degree(), n = target->degree();
    if (n % d != 0)
        throw std::invalid_argument("source degree " + std::to_string(d) +
                                    " does not divide target degree " + std::to_string(n));

    uint32_t mod = source->modulus();
    std::optional<uint32_t> root;
    for (uint32_t y : subfield_elements(*target, d)) {
        uint32_t h = 0;  // Horner over GF(2) coefficients of the source modulus
        for (int i = d; i >= 0; --i) h = target->mul(h, y) ^ uint32_t((mod >> i) & 1);
        if (h == 0) {
            root = y;
            break;  // ascending scan: first root has the smallest encoding
        }
    }
    if (!root) throw std::logic_error("source modulus has no root in the target subfield");

    Embedding e;
    e.source = std::move(source);
    e.target = std::move(target);
    e.image_of_generator = *root;
    std::vector<uint32_t> gpow(d);
    gpow[0] = 1;
    for (int i = 1; i < d; ++i) gpow[i] = e.target->mul(gpow[i - 1], *root);
    e.fwd.assign(e.source->size(), 0);
    for (uint32_t x = 0; x < e.source->size(); ++x) {
        uint32_t img = 0;
        for (int i = 0; i < d; ++i)
            if ((x >> i) & 1) img ^= gpow[i];
        e.fwd[x] = img;
    }
    e.rev.reserve(e.fwd.size());
    for (uint32_t x = 0; x < e.source->size(); ++x) e.rev.emplace(e.fwd[x], x);
    if (e.rev.size() != e.fwd.size()) throw std::logic_error("embedding is not injective");
    return e;
}

}  // namespace bentforge::field

#endif
