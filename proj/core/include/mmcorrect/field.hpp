#pragma once

#include <cstdint>
#include <stdexcept>

namespace mmc {

// Prime field GF(p).  Residues live in [0, p); p is checked at
// construction and limited to p < 2^31 so products fit a 64-bit lane.
struct FieldSpec {
    uint32_t p;

    explicit FieldSpec(uint32_t prime) : p(prime) {
        if (p < 2 || !is_prime(p)) {
            throw std::invalid_argument("FieldSpec: characteristic must be a prime >= 2");
        }
        if (p >= (1u << 31)) {
            throw std::invalid_argument("FieldSpec: p must be < 2^31");
        }
    }

    bool operator==(const FieldSpec& o) const { return p == o.p; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t(a) * b) % p);
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }

    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t base = a % p, acc = 1;
        while (e) {
            if (e & 1) acc = (acc * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return static_cast<uint32_t>(acc);
    }
    // p prime, a != 0
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("FieldSpec::inv: zero has no inverse");
        return pow(a, p - 2);
    }

    static bool is_prime(uint32_t v) {
        if (v < 2) return false;
        if (v % 2 == 0) return v == 2;
        for (uint64_t d = 3; d * d <= v; d += 2) {
            if (v % d == 0) return false;
        }
        return true;
    }
};

inline const FieldSpec& f2() {
    static const FieldSpec f(2);
    return f;
}

}  // namespace mmc
