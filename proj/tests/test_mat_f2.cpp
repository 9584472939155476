#include <doctest.h>

#include "mmcorrect/coordinate_stats.hpp"
#include "mmcorrect/mat_f2.hpp"

using namespace mmc;

namespace {

// independent triple-loop reference product
MatF2 schoolbook(const MatF2& a, const MatF2& b) {
    MatF2 c(a.rows(), b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < b.cols(); ++j) {
            int acc = 0;
            for (uint32_t k = 0; k < a.cols(); ++k) acc ^= a.get(i, k) & b.get(k, j);
            c.set(i, j, acc);
        }
    }
    return c;
}

MatF2 from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const uint32_t n = uint32_t(rows.size());
    const uint32_t m = uint32_t(rows.begin()->size());
    MatF2 a(n, m);
    uint32_t i = 0;
    for (const auto& r : rows) {
        uint32_t j = 0;
        for (int v : r) a.set(i, j++, v);
        ++i;
    }
    return a;
}

}  // namespace

TEST_CASE("identity times A is A") {
    Rng rng(11);
    for (uint32_t n : {1u, 2u, 7u, 64u}) {
        const MatF2 a = MatF2::random(n, n, rng);
        CHECK(mat_mul(MatF2::identity(n), a) == a);
        CHECK(mat_mul(a, MatF2::identity(n)) == a);
    }
}

TEST_CASE("hand-checked 2x2 product") {
    const MatF2 a = from_rows({{1, 1}, {0, 1}});
    const MatF2 b = from_rows({{1, 0}, {1, 1}});
    CHECK(mat_mul(a, b) == from_rows({{0, 1}, {1, 1}}));
}

TEST_CASE("product matches the schoolbook oracle") {
    Rng rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        const uint32_t n = 1 + uint32_t(rng.below(32));
        const uint32_t k = 1 + uint32_t(rng.below(32));
        const uint32_t m = 1 + uint32_t(rng.below(32));
        const MatF2 a = MatF2::random(n, k, rng);
        const MatF2 b = MatF2::random(k, m, rng);
        const MatF2 c = mat_mul(a, b);
        REQUIRE(c == schoolbook(a, b));
        REQUIRE(c.is_canonical());
    }
}

TEST_CASE("table-driven product agrees with row accumulation across the threshold") {
    Rng rng(33);
    for (uint32_t k : {255u, 256u, 257u, 300u}) {
        const MatF2 a = MatF2::random(40, k, rng);
        const MatF2 b = MatF2::random(k, 70, rng);
        const MatF2 lhs = detail::mat_mul_m4r(a, b);
        CHECK(lhs == detail::mat_mul_rowxor(a, b));
        CHECK(lhs == mat_mul(a, b));
        CHECK(lhs.is_canonical());
    }
}

TEST_CASE("add and sub") {
    Rng rng(44);
    const MatF2 a = MatF2::random(9, 13, rng);
    const MatF2 zero(9, 13);
    CHECK(mat_add(a, zero) == a);
    CHECK(mat_add(a, a) == zero);  // characteristic 2
    CHECK(mat_sub(mat_add(a, a), a) == a);
    CHECK_THROWS_AS(mat_add(a, MatF2(9, 12)), std::invalid_argument);
}

TEST_CASE("agreement basics") {
    Rng rng(55);
    const MatF2 a = MatF2::random(17, 31, rng);
    CHECK(agreement(a, a) == Rat(1));
    CHECK(agreement(from_rows({{0, 1}, {1, 0}}), from_rows({{0, 1}, {1, 1}})) ==
          make_rat(3, 4));
    CHECK_THROWS_AS(agreement(a, MatF2(3, 3)), std::invalid_argument);
}

TEST_CASE("mean agreement of zero matrix with AB over all n=2 pairs") {
    // exhaustive enumeration over all 256 input pairs
    const MatF2 zero(2, 2);
    Rat total(0);
    for (uint64_t ai = 0; ai < 16; ++ai) {
        for (uint64_t bi = 0; bi < 16; ++bi) {
            total += agreement(zero, mat_mul(mat_from_index(2, ai), mat_from_index(2, bi)));
        }
    }
    // each product entry is 1 for exactly 3/8 of the pairs
    CHECK(total / 256 == make_rat(5, 8));
}

TEST_CASE("cyclic shift definition and inverses") {
    Rng rng(66);
    const MatF2 a = MatF2::random(5, 5, rng);
    CHECK(cyclic_shift(a, {0, 0}) == a);

    const MatF2 m = from_rows({{1, 0}, {0, 1}});
    // rows rotate downward: [[a,b],[c,d]] -> [[c,d],[a,b]]
    CHECK(cyclic_shift(m, {1, 0}) == from_rows({{0, 1}, {1, 0}}));

    for (int trial = 0; trial < 50; ++trial) {
        const uint32_t n = 1 + uint32_t(rng.below(9));
        const uint32_t mm = 1 + uint32_t(rng.below(130));
        const MatF2 x = MatF2::random(n, mm, rng);
        const uint32_t pi = uint32_t(rng.below(n));
        const uint32_t sg = uint32_t(rng.below(mm));
        const MatF2 shifted = cyclic_shift(x, {pi, sg});
        REQUIRE(shifted.is_canonical());
        // index rule: shifted(i,j) = x((i-pi) mod n, (j-sg) mod m)
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < mm; ++j) {
                REQUIRE(shifted.get(i, j) == x.get((i + n - pi) % n, (j + mm - sg) % mm));
            }
        }
        CHECK(cyclic_shift(shifted, {(n - pi) % n, (mm - sg) % mm}) == x);
    }
    CHECK_THROWS_AS(cyclic_shift(a, {5, 0}), std::invalid_argument);
}

TEST_CASE("agreement is shift invariant") {
    Rng rng(77);
    const MatF2 a = MatF2::random(8, 8, rng);
    const MatF2 b = MatF2::random(8, 8, rng);
    for (uint32_t pi = 0; pi < 8; ++pi) {
        for (uint32_t sg = 0; sg < 8; ++sg) {
            CHECK(agreement(cyclic_shift(a, {pi, sg}), cyclic_shift(b, {pi, sg})) ==
                  agreement(a, b));
        }
    }
}

TEST_CASE("shift proposition: A^{pi,0} B^{0,sigma} = (AB)^{pi,sigma}") {
    Rng rng(88);
    // exhaustive over all shift pairs at small n
    for (uint32_t n : {1u, 2u, 5u, 8u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const MatF2 a = MatF2::random(n, n, rng);
            const MatF2 b = MatF2::random(n, n, rng);
            const MatF2 ab = mat_mul(a, b);
            for (uint32_t pi = 0; pi < n; ++pi) {
                for (uint32_t sg = 0; sg < n; ++sg) {
                    REQUIRE(mat_mul(cyclic_shift(a, {pi, 0}), cyclic_shift(b, {0, sg})) ==
                            cyclic_shift(ab, {pi, sg}));
                }
            }
        }
    }
    // randomized at n = 128
    for (int trial = 0; trial < 20; ++trial) {
        const uint32_t n = 128;
        const MatF2 a = MatF2::random(n, n, rng);
        const MatF2 b = MatF2::random(n, n, rng);
        const uint32_t pi = uint32_t(rng.below(n));
        const uint32_t sg = uint32_t(rng.below(n));
        REQUIRE(mat_mul(cyclic_shift(a, {pi, 0}), cyclic_shift(b, {0, sg})) ==
                cyclic_shift(mat_mul(a, b), {pi, sg}));
    }
}

TEST_CASE("uniform sampling is seed-deterministic") {
    Rng r1(123), r2(123);
    CHECK(MatF2::random(10, 67, r1) == MatF2::random(10, 67, r2));
    Rng r3(124);
    CHECK(MatF2::random(10, 67, r3) != MatF2::random(10, 67, r1));
}

TEST_CASE("uniform sampling hits all 2x2 matrices uniformly") {
    Rng rng(99);
    const int samples = 100000;
    int counts[16] = {0};
    for (int s = 0; s < samples; ++s) {
        const MatF2 m = sample_uniform_f2(2, 2, rng);
        int idx = 0;
        for (uint32_t i = 0; i < 2; ++i) {
            for (uint32_t j = 0; j < 2; ++j) idx |= m.get(i, j) << (i * 2 + j);
        }
        ++counts[idx];
    }
    for (int v = 0; v < 16; ++v) {
        const double freq = double(counts[v]) / samples;
        CHECK(freq == doctest::Approx(1.0 / 16).epsilon(0.16));  // 1/16 +- 0.01
    }
}

TEST_CASE("rank") {
    CHECK(rank(MatF2(7, 5)) == 0);
    CHECK(rank(MatF2::identity(9)) == 9);
    const MatF2 a = from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});  // rows sum to 0
    CHECK(rank(a) == 2);
}

TEST_CASE("degenerate 1x1 matrices work everywhere") {
    MatF2 one(1, 1);
    one.set(0, 0, 1);
    CHECK(mat_mul(one, one) == one);
    CHECK(cyclic_shift(one, {0, 0}) == one);
    CHECK(agreement(one, one) == Rat(1));
    CHECK(rank(one) == 1);
}

TEST_CASE("dot_f2 evaluates entrywise parity") {
    const MatF2 a = from_rows({{1, 0}, {1, 1}});
    const MatF2 b = from_rows({{1, 1}, {0, 1}});
    CHECK(dot_f2(a, b) == 0);  // overlap at (0,0) and (1,1)
    const MatF2 c = from_rows({{1, 1}, {1, 1}});
    CHECK(dot_f2(a, c) == 1);
}
