#include <doctest.h>

#include "mmcorrect/mat_fp.hpp"

using namespace mmc;

namespace {

MatFp schoolbook(const MatFp& a, const MatFp& b) {
    MatFp c(a.field(), a.rows(), b.cols());
    const uint64_t p = a.field().p;
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < b.cols(); ++j) {
            uint64_t acc = 0;
            for (uint32_t k = 0; k < a.cols(); ++k) {
                acc = (acc + uint64_t(a.get(i, k)) * b.get(k, j)) % p;
            }
            c.set(i, j, uint32_t(acc));
        }
    }
    return c;
}

}  // namespace

TEST_CASE("field spec validates primality") {
    CHECK_THROWS_AS(FieldSpec(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(91), std::invalid_argument);  // 7*13
    CHECK(FieldSpec(2).p == 2);
    CHECK(FieldSpec(2147483647).p == 2147483647u);  // 2^31 - 1
    CHECK_THROWS_AS(FieldSpec(2147483649u), std::invalid_argument);
}

TEST_CASE("field arithmetic") {
    const FieldSpec f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.neg(0) == 0);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("random 8x8 over F_5 matches the schoolbook oracle") {
    const FieldSpec f(5);
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const MatFp a = MatFp::random(f, 8, 8, rng);
        const MatFp b = MatFp::random(f, 8, 8, rng);
        REQUIRE(mat_mul(a, b) == schoolbook(a, b));
    }
}

TEST_CASE("products match schoolbook over assorted primes and shapes") {
    Rng rng(8);
    for (uint32_t p : {2u, 3u, 17u, 65537u, 2147483647u}) {
        const FieldSpec f(p);
        for (int trial = 0; trial < 25; ++trial) {
            const uint32_t n = 1 + uint32_t(rng.below(12));
            const uint32_t k = 1 + uint32_t(rng.below(12));
            const uint32_t m = 1 + uint32_t(rng.below(12));
            const MatFp a = MatFp::random(f, n, k, rng);
            const MatFp b = MatFp::random(f, k, m, rng);
            REQUIRE(mat_mul(a, b) == schoolbook(a, b));
        }
    }
}

TEST_CASE("identity and group laws over F_5") {
    const FieldSpec f(5);
    Rng rng(9);
    const MatFp a = MatFp::random(f, 6, 6, rng);
    const MatFp b = MatFp::random(f, 6, 6, rng);
    const MatFp zero(f, 6, 6);
    CHECK(mat_mul(MatFp::identity(f, 6), a) == a);
    CHECK(mat_add(a, zero) == a);
    CHECK(mat_sub(mat_add(a, b), b) == a);
    CHECK_THROWS_AS(mat_add(a, MatFp(FieldSpec(7), 6, 6)), std::invalid_argument);
}

TEST_CASE("cyclic shift over F_p follows the index rule") {
    const FieldSpec f(11);
    Rng rng(10);
    const MatFp a = MatFp::random(f, 4, 6, rng);
    const MatFp s = cyclic_shift(a, {3, 2});
    for (uint32_t i = 0; i < 4; ++i) {
        for (uint32_t j = 0; j < 6; ++j) {
            CHECK(s.get(i, j) == a.get((i + 4 - 3) % 4, (j + 6 - 2) % 6));
        }
    }
    CHECK(cyclic_shift(cyclic_shift(a, {1, 5}), {3, 1}) == a);
}

TEST_CASE("shift proposition over F_7") {
    const FieldSpec f(7);
    Rng rng(12);
    for (uint32_t n : {2u, 5u}) {
        const MatFp a = MatFp::random(f, n, n, rng);
        const MatFp b = MatFp::random(f, n, n, rng);
        const MatFp ab = mat_mul(a, b);
        for (uint32_t pi = 0; pi < n; ++pi) {
            for (uint32_t sg = 0; sg < n; ++sg) {
                REQUIRE(mat_mul(cyclic_shift(a, {pi, 0}), cyclic_shift(b, {0, sg})) ==
                        cyclic_shift(ab, {pi, sg}));
            }
        }
    }
}

TEST_CASE("entry histogram over F_3 is uniform to 1%") {
    const FieldSpec f(3);
    Rng rng(13);
    uint64_t counts[3] = {0, 0, 0};
    const uint64_t draws = 1000000;
    const MatFp m = MatFp::random(f, 1000, 1000, rng);
    for (uint32_t v : m.values()) ++counts[v];
    for (int v = 0; v < 3; ++v) {
        const double freq = double(counts[v]) / double(draws);
        CHECK(freq == doctest::Approx(1.0 / 3).epsilon(0.03));  // 1/3 +- 1%
    }
}

TEST_CASE("rank over F_p") {
    const FieldSpec f(5);
    CHECK(rank(MatFp(f, 4, 4)) == 0);
    CHECK(rank(MatFp::identity(f, 8)) == 8);
    MatFp a(f, 3, 3);
    // third row = row0 + 2*row1
    const uint32_t rows[3][3] = {{1, 2, 3}, {4, 0, 1}, {4, 2, 0}};
    for (uint32_t i = 0; i < 3; ++i) {
        for (uint32_t j = 0; j < 3; ++j) a.set(i, j, rows[i][j]);
    }
    CHECK(rank(a) == 2);
}
