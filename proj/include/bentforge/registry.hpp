// Degree -> modulus registry with JSON overrides and a shared context cache.
// Built-in defaults: 0x5b for degree 6, lexicographically least irreducible
// polynomials elsewhere.
#ifndef BENTFORGE_REGISTRY_HPP
#define BENTFORGE_REGISTRY_HPP

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "bentforge/field.hpp"
#include "bentforge/util.hpp"

namespace bentforge::registry {

using field::FieldCtx;
using field::FieldCtxPtr;
using field::FieldSpec;

inline uint32_t lex_least_modulus(int degree) {
    if (degree < 1 || degree > 24)
        throw std::invalid_argument("degree out of supported range [1, 24]");
    for (uint32_t c = uint32_t(1) << degree; c < (uint32_t(1) << (degree + 1)); ++c)
        if (field::poly_is_irreducible(c)) return c;
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

class FieldRegistry {
public:
    FieldRegistry() { moduli_[6] = 0x5b; }

    uint32_t modulus_for(int degree) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = moduli_.find(degree);
        if (it != moduli_.end()) return it->second;
        auto cached = lexleast_.find(degree);
        if (cached != lexleast_.end()) return cached->second;
        uint32_t m = lex_least_modulus(degree);
        lexleast_[degree] = m;
        return m;
    }

    void set_modulus(int degree, uint32_t modulus) {
        FieldSpec spec{degree, modulus};
        spec.validate();
        std::lock_guard<std::mutex> lk(mu_);
        moduli_[degree] = modulus;
        ctx_cache_.erase(degree);
    }

    // JSON object mapping decimal degree to hex modulus, e.g. {"6": "5b"}.
    void load_json(const nlohmann::json& j) {
        if (!j.is_object())
            throw std::invalid_argument("registry must be a JSON object of degree -> hex modulus");
        for (auto it = j.begin(); it != j.end(); ++it) {
            int degree;
            try {
                degree = std::stoi(it.key());
            } catch (const std::exception&) {
                throw std::invalid_argument("registry entry \"" + it.key() +
                                            "\": degree is not an integer");
            }
            if (!it.value().is_string())
                throw std::invalid_argument("registry entry \"" + it.key() +
                                            "\": modulus must be a hex string");
            uint64_t mod;
            try {
                mod = util::parse_hex(it.value().get<std::string>());
                FieldSpec spec{degree, uint32_t(mod)};
                spec.validate();
            } catch (const std::exception& e) {
                throw std::invalid_argument("registry entry \"" + it.key() + "\": " + e.what());
            }
            set_modulus(degree, uint32_t(mod));
        }
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open registry file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw std::invalid_argument("registry file " + path + ": " + e.what());
        }
        load_json(j);
    }

    FieldCtxPtr get(int degree) const {
        uint32_t mod = modulus_for(degree);
        std::lock_guard<std::mutex> lk(mu_);
        auto it = ctx_cache_.find(degree);
        if (it != ctx_cache_.end()) return it->second;
        FieldCtxPtr ctx = FieldCtx::make(FieldSpec{degree, mod});
        ctx_cache_[degree] = ctx;
        return ctx;
    }

    // Content hash over the explicit entries; lex-least fallbacks are fully
    // determined by the degree so they do not contribute.
    std::string content_hash() const {
        std::lock_guard<std::mutex> lk(mu_);
        uint64_t h = 0xcbf29ce484222325ull;
        for (const auto& [d, m] : moduli_)
            h = util::fnv1a(std::to_string(d) + "=" + util::to_hex(m) + ";", h);
        return util::to_hex(h);
    }

    std::map<int, uint32_t> explicit_entries() const {
        std::lock_guard<std::mutex> lk(mu_);
        return moduli_;
    }

private:
    mutable std::mutex mu_;
    std::map<int, uint32_t> moduli_;
    mutable std::map<int, uint32_t> lexleast_;
    mutable std::map<int, FieldCtxPtr> ctx_cache_;
};

}  // namespace bentforge::registry

#endif
