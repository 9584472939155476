#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmc {

// All probabilities, densities and agreement values are exact rationals.
using Rat = mpq_class;

inline Rat make_rat(long num, unsigned long den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2_rat(long e) {
    mpz_class v = 1;
    v <<= (e < 0 ? -e : e);
    return e < 0 ? make_rat(1, v) : Rat(v);
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return make_rat(num, den);
}

// Smallest integer e >= 0 with 2^e >= q (q > 0).
inline unsigned long ceil_log2_rat(const Rat& q) {
    if (q <= 0) throw std::invalid_argument("ceil_log2_rat: argument must be positive");
    unsigned long e = 0;
    mpz_class pw = 1;
    while (Rat(pw) < q) {
        pw <<= 1;
        ++e;
    }
    return e;
}

// Parses "num/den" (or a bare integer) into an exact rational.
// `where` names the config location for error messages.
Rat parse_rational(const std::string& text, const std::string& where = "");

inline std::string rat_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace mmc
