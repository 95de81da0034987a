// Truncated arithmetic in Z_q / 2^M, the unramified degree-n extension of
// the 2-adic integers with residue field GF(2^n): Teichmuller lifts, Gauss
// sums, and the character-sum identities (interpolation, Stickelberger,
// Davenport-Hasse, the Kloosterman and Dillon Gauss-sum lemmas) as exact
// checkable predicates. The modulus is the trivial 0/1-coefficient lift of
// the field modulus, so reduction mod 2 is free.
#ifndef BENTFORGE_PADIC_HPP
#define BENTFORGE_PADIC_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bentforge/expsums.hpp"
#include "bentforge/field.hpp"
#include "bentforge/util.hpp"

namespace bentforge::padic {

using field::FieldCtx;
using field::FieldCtxPtr;

struct PadicElement {
    std::vector<uint64_t> c;  // polynomial-basis coordinates, each < 2^M

    bool operator==(const PadicElement& o) const { return c == o.c; }
};

class PadicCtx {
public:
    // Precision is capped at 28 so coefficient products plus reduction fit
    // comfortably in uint64 accumulators.
    PadicCtx(FieldCtxPtr base_field, int precision)
        : F_(std::move(base_field)), M_(precision) {
        if (!F_) throw std::invalid_argument("null field context");
        if (F_->kind() != FieldCtx::Kind::polynomial)
            throw std::invalid_argument("the trivial lift needs a polynomial-basis field");
        if (M_ < 1 || M_ > 28) throw std::invalid_argument("precision must be in [1, 28]");
        n_ = F_->degree();
        q_ = F_->size();
        mask_ = (uint64_t(1) << M_) - 1;
        if (n_ % 2 == 0) subfield_units_ = nonzero_subfield(n_ / 2);
        build_teichmuller_table();
        build_gauss_table();
    }

    const FieldCtx& field() const { return *F_; }
    int degree() const { return n_; }
    int precision() const { return M_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& subfield_units() const { return subfield_units_; }

    // -- ring operations ------------------------------------------------

    PadicElement zero() const { return PadicElement{std::vector<uint64_t>(n_, 0)}; }

    PadicElement scalar(int64_t v) const {
        PadicElement e = zero();
        e.c[0] = uint64_t(util::mod_pos(v, int64_t(1) << M_));
        return e;
    }

    PadicElement add(const PadicElement& a, const PadicElement& b) const {
        PadicElement r = a;
        for (int i = 0; i < n_; ++i) r.c[i] = (r.c[i] + b.c[i]) & mask_;
        return r;
    }

    PadicElement sub(const PadicElement& a, const PadicElement& b) const {
        PadicElement r = a;
        for (int i = 0; i < n_; ++i) r.c[i] = (r.c[i] - b.c[i]) & mask_;
        return r;
    }

    PadicElement neg(const PadicElement& a) const { return sub(zero(), a); }

    PadicElement scalar_mul(const PadicElement& a, uint64_t s) const {
        PadicElement r = a;
        for (int i = 0; i < n_; ++i) r.c[i] = (r.c[i] * (s & mask_)) & mask_;
        return r;
    }

    PadicElement mul(const PadicElement& a, const PadicElement& b) const {
        std::vector<uint64_t> t(2 * n_ - 1, 0);
        for (int i = 0; i < n_; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < n_; ++j) t[i + j] = (t[i + j] + a.c[i] * b.c[j]) & mask_;
        }
        uint32_t mod = F_->modulus();
        for (int i = 2 * n_ - 2; i >= n_; --i) {
            uint64_t v = t[i] & mask_;
            if (v == 0) continue;
            t[i] = 0;
            for (int j = 0; j < n_; ++j)
                if ((mod >> j) & 1) t[i - n_ + j] = (t[i - n_ + j] - v) & mask_;
        }
        PadicElement r = zero();
        for (int i = 0; i < n_; ++i) r.c[i] = t[i] & mask_;
        return r;
    }

    uint32_t reduce_mod2(const PadicElement& a) const {
        uint32_t x = 0;
        for (int i = 0; i < n_; ++i) x |= uint32_t(a.c[i] & 1) << i;
        return x;
    }

    PadicElement trivial_lift(uint32_t x) const {
        PadicElement e = zero();
        for (int i = 0; i < n_; ++i) e.c[i] = (x >> i) & 1;
        return e;
    }

    bool congruent(const PadicElement& a, const PadicElement& b, int bits) const {
        if (bits > M_) throw std::invalid_argument("congruence bits exceed precision");
        uint64_t m = (uint64_t(1) << bits) - 1;
        for (int i = 0; i < n_; ++i)
            if (((a.c[i] - b.c[i]) & m) != 0) return false;
        return true;
    }

    // Min 2-adic valuation over the coordinates (M for the zero element).
    int v2(const PadicElement& a) const {
        int v = M_;
        for (int i = 0; i < n_; ++i)
            if (a.c[i] & mask_) v = std::min(v, std::countr_zero(a.c[i] & mask_));
        return v;
    }

    // -- Teichmuller lift and Gauss sums --------------------------------

    // The unique lift with omega(x)^(2^n - 1) = 1 and omega(x) = x mod 2,
    // computed by iterating t -> t^(2^n); each pass gains a bit of
    // precision.
    const PadicElement& teichmuller(uint32_t x) const {
        if (x == 0 || x >= q_) throw std::domain_error("Teichmuller lift needs a unit argument");
        return teich_[x];
    }

    // G(k) = sum_{x != 0} omega(x)^(-k) (-1)^(Tr x), an element of Z_q/2^M.
    const PadicElement& gauss_sum(int64_t k) const {
        return gauss_[size_t(util::mod_pos(k, q_ - 1))];
    }

    // Gbar(i) = sum over the nonzero index-2 subfield of
    // omega^(-(2^m + 1) i)(x) (-1)^(Tr^m_1 x): the subfield Gauss sum under
    // the norm-compatible character.
    PadicElement subfield_gauss_sum(int64_t i) const {
        require_even();
        int m = n_ / 2;
        int64_t e = util::mod_pos(-((int64_t(1) << m) + 1) * i, q_ - 1);
        PadicElement acc = zero();
        for (uint32_t y : subfield_units_) {
            const PadicElement& t = teich_[F_->pow(y, e)];
            acc = F_->trace_rel(y, m) ? sub(acc, t) : add(acc, t);
        }
        return acc;
    }

    // -- identity checks -------------------------------------------------

    // (-1)^(Tr x) = (q - 1)^(-1) sum_k G(k) omega^k(x) for every unit x.
    bool interpolation_check() const {
        uint64_t invq1 = expsums::odd_inverse_mod_2pow(q_ - 1, M_);
        for (uint32_t x = 1; x < q_; ++x) {
            PadicElement s = zero();
            for (uint32_t k = 0; k + 1 < q_; ++k)
                s = add(s, mul(gauss_[k], teich_[F_->pow(x, k)]));
            if (!(scalar_mul(s, invq1) == scalar(F_->trace(x) ? -1 : 1))) return false;
        }
        return true;
    }

    // G(k) = 2^wt(k) mod 2^(wt(k) + 1).
    bool stickelberger_check(int64_t k) const {
        int wt = expsums::weight_mod(k, n_);
        if (wt + 1 > M_) throw std::invalid_argument("precision too small for wt(k) + 1 bits");
        return congruent(gauss_sum(k), scalar(int64_t(1) << wt), wt + 1);
    }

    // G((2^m + 1) i) = -Gbar(i)^2 exactly in Z_q/2^M.
    bool davenport_hasse_check(int64_t i) const {
        require_even();
        int m = n_ / 2;
        PadicElement gb = subfield_gauss_sum(i);
        return gauss_sum(((int64_t(1) << m) + 1) * i) == neg(mul(gb, gb));
    }

    // sum_{x in subfield, x != 0} (-1)^(Tr^m(a x + 1/x)) =
    //   (2^m - 1)^(-1) sum_i Gbar(i)^2 omega^((2^m + 1) i)(a),
    // for a unit a of the index-2 subfield (given embedded).
    bool kloosterman_gauss_identity_check(uint32_t a_hat) const {
        require_even();
        int m = n_ / 2;
        if (a_hat == 0 || !F_->in_subfield(a_hat, m))
            throw std::domain_error("argument must be a nonzero index-2 subfield element");
        int64_t lhs = 0;
        for (uint32_t y : subfield_units_)
            lhs += F_->trace_rel(F_->add(F_->mul(a_hat, y), F_->inv(y)), m) ? -1 : 1;
        PadicElement rhs = zero();
        int64_t sub_order = (int64_t(1) << m) - 1;
        for (int64_t i = 0; i < sub_order; ++i) {
            PadicElement gb = subfield_gauss_sum(i);
            int64_t e = util::mod_pos(((int64_t(1) << m) + 1) * i, q_ - 1);
            rhs = add(rhs, mul(mul(gb, gb), teich_[F_->pow(a_hat, e)]));
        }
        rhs = scalar_mul(rhs, expsums::odd_inverse_mod_2pow(uint64_t(sub_order), M_));
        return rhs == scalar(lhs);
    }

    // B = (q - 1)^(-1) sum_i G(i) G(-(2^m - 1) i) omega(a^i c^(-(2^m - 1) i))
    // against the exact integer Dillon sum.
    bool dillon_gauss_identity_check(uint32_t a, uint32_t c) const {
        require_even();
        int m = n_ / 2;
        int64_t B = expsums::dillon_sum(*F_, a, c);
        PadicElement s = zero();
        for (int64_t i = 0; i + 1 < int64_t(q_); ++i) {
            int64_t ei = util::mod_pos(-((int64_t(1) << m) - 1) * i, q_ - 1);
            uint32_t arg = F_->mul(F_->pow(a, i), F_->pow(c, ei));
            s = add(s, mul(mul(gauss_[size_t(i)], gauss_[size_t(ei)]), teich_[arg]));
        }
        s = scalar_mul(s, expsums::odd_inverse_mod_2pow(q_ - 1, M_));
        return s == scalar(B);
    }

private:
    void require_even() const {
        if (n_ % 2 != 0) throw std::domain_error("operation needs even degree");
    }

    std::vector<uint32_t> nonzero_subfield(int d) const {
        std::vector<uint32_t> out;
        for (uint32_t y : field::subfield_elements(*F_, d))
            if (y != 0) out.push_back(y);
        return out;
    }

    PadicElement frobenius_power_q(PadicElement t) const {
        for (int i = 0; i < n_; ++i) t = mul(t, t);
        return t;
    }

    void build_teichmuller_table() {
        teich_.resize(q_);
        for (uint32_t x = 1; x < q_; ++x) {
            PadicElement t = trivial_lift(x);
            for (int it = 0; it < M_; ++it) t = frobenius_power_q(t);
            if (!(frobenius_power_q(t) == t))
                throw std::logic_error("Teichmuller iteration did not stabilize");
            if (reduce_mod2(t) != x)
                throw std::logic_error("Teichmuller lift has wrong reduction");
            teich_[x] = std::move(t);
        }
    }

    void build_gauss_table() {
        gauss_.resize(q_ - 1);
        for (uint32_t k = 0; k + 1 < q_; ++k) {
            int64_t e = util::mod_pos(-int64_t(k), q_ - 1);
            PadicElement acc = zero();
            for (uint32_t x = 1; x < q_; ++x) {
                const PadicElement& t = teich_[F_->pow(x, e)];
                acc = F_->trace(x) ? sub(acc, t) : add(acc, t);
            }
            gauss_[k] = std::move(acc);
        }
    }

    FieldCtxPtr F_;
    int M_, n_ = 0;
    uint32_t q_ = 0;
    uint64_t mask_ = 0;
    std::vector<uint32_t> subfield_units_;
    std::vector<PadicElement> teich_;
    std::vector<PadicElement> gauss_;
};

}  // namespace bentforge::padic

#endif
