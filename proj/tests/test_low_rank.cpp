#include <doctest.h>

#include "mmcorrect/low_rank.hpp"

using namespace mmc;

TEST_CASE("k = 0 expands to the zero matrix and multiplies to zero") {
    Rng rng(21);
    const LowRankF2 l = sample_low_rank(6, 9, 0, rng);
    CHECK(l.expand() == MatF2(6, 9));
    const MatF2 d = MatF2::random(9, 4, rng);
    CHECK(lowrank_mul(l, d, Side::Left) == MatF2(6, 4));

    const FieldSpec f(5);
    const LowRankFp lp = sample_low_rank(f, 6, 9, 0, rng);
    CHECK(lp.expand() == MatFp(f, 6, 9));
}

TEST_CASE("k = m makes every column a base column") {
    Rng rng(22);
    const LowRankF2 l = sample_low_rank(7, 7, 7, rng);
    REQUIRE(l.base().has_value());
    CHECK(*l.coeffs() == MatF2::identity(7));
    CHECK(l.expand() == *l.base());
}

TEST_CASE("expansion rank is bounded by k; mean rank matches the distribution") {
    Rng rng(23);
    // E[rank] for 4 uniform columns of F_2^16 is 4 - 15/2^16 + O(2^-28)
    // (deficiency from any column landing in the span of the others);
    // a 10^4-sample mean concentrates within +-0.001 of 3.99977.
    double total = 0;
    for (int s = 0; s < 10000; ++s) {
        const LowRankF2 l = sample_low_rank(16, 16, 4, rng);
        const uint32_t r = rank(l.expand());
        REQUIRE(r <= 4);
        total += r;
    }
    const double mean = total / 10000;
    CHECK(mean > 3.995);
    CHECK(mean <= 4.0);
}

TEST_CASE("first k expanded columns equal the base columns") {
    Rng rng(24);
    const LowRankF2 l = sample_low_rank(10, 14, 5, rng);
    const MatF2 dense = l.expand();
    for (uint32_t i = 0; i < 10; ++i) {
        for (uint32_t j = 0; j < 5; ++j) {
            REQUIRE(dense.get(i, j) == l.base()->get(i, j));
        }
    }
}

TEST_CASE("factored product equals the dense product") {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const LowRankF2 l = sample_low_rank(16, 16, 3, rng);
        const MatF2 d = MatF2::random(16, 16, rng);
        CHECK(lowrank_mul(l, d, Side::Left) == mat_mul(l.expand(), d));
        CHECK(lowrank_mul(l, d, Side::Right) == mat_mul(d, l.expand()));
    }
    const FieldSpec f(7);
    for (int trial = 0; trial < 10; ++trial) {
        const LowRankFp l = sample_low_rank(f, 9, 9, 3, rng);
        const MatFp d = MatFp::random(f, 9, 9, rng);
        CHECK(lowrank_mul(l, d, Side::Left) == mat_mul(l.expand(), d));
        CHECK(lowrank_mul(l, d, Side::Right) == mat_mul(d, l.expand()));
    }
}

TEST_CASE("identity factorization acts as the identity") {
    Rng rng(26);
    const uint32_t n = 8;
    const LowRankF2 l(n, n, n, MatF2::identity(n), MatF2::identity(n));
    const MatF2 d = MatF2::random(n, n, rng);
    CHECK(lowrank_mul(l, d, Side::Left) == d);
    CHECK(lowrank_mul(l, d, Side::Right) == d);
}

TEST_CASE("constructor validates the factored form") {
    Rng rng(27);
    CHECK_THROWS_AS(sample_low_rank(4, 4, 5, rng), std::invalid_argument);
    // leading block must be the identity
    MatF2 base = MatF2::random(4, 2, rng);
    MatF2 coeffs(2, 4);
    coeffs.set(0, 0, 1);  // (1,1) left unset
    CHECK_THROWS_AS(LowRankF2(4, 4, 2, base, coeffs), std::invalid_argument);
    CHECK_THROWS_AS(LowRankF2(4, 4, 0, base, coeffs), std::invalid_argument);
}
