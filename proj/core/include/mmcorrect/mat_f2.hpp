#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

struct ShiftPair {
    uint32_t pi;
    uint32_t sigma;
};

// Dense matrix over GF(2), rows bit-packed into 64-bit words, bit j of a
// row stored at word j/64, bit j%64.  Padding bits past column m are kept
// zero (canonical form); equality is plain word comparison.
class MatF2 {
public:
    MatF2(uint32_t rows, uint32_t cols);

    static MatF2 identity(uint32_t n);
    static MatF2 random(uint32_t rows, uint32_t cols, Rng& rng);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    size_t words_per_row() const { return wpr_; }

    int get(uint32_t i, uint32_t j) const {
        return static_cast<int>((w_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u);
    }
    void set(uint32_t i, uint32_t j, int v) {
        uint64_t& w = w_[i * wpr_ + (j >> 6)];
        const uint64_t m = uint64_t(1) << (j & 63);
        w = v ? (w | m) : (w & ~m);
    }

    std::span<uint64_t> row(uint32_t i) { return {w_.data() + i * wpr_, wpr_}; }
    std::span<const uint64_t> row(uint32_t i) const { return {w_.data() + i * wpr_, wpr_}; }
    std::span<const uint64_t> words() const { return {w_.data(), w_.size()}; }

    bool operator==(const MatF2& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

    bool is_zero() const;
    size_t popcount() const;
    // true iff all padding bits beyond column m are zero
    bool is_canonical() const;
    // mask of valid bits in the last word of a row
    uint64_t last_word_mask() const { return lastmask_; }

    MatF2 transposed() const;

private:
    uint32_t rows_, cols_;
    size_t wpr_;
    uint64_t lastmask_;
    std::vector<uint64_t> w_;
};

MatF2 mat_mul(const MatF2& a, const MatF2& b);
MatF2 mat_add(const MatF2& a, const MatF2& b);
MatF2 mat_sub(const MatF2& a, const MatF2& b);  // == mat_add over GF(2)
Rat agreement(const MatF2& a, const MatF2& b);
MatF2 cyclic_shift(const MatF2& a, ShiftPair s);
MatF2 sample_uniform_f2(uint32_t rows, uint32_t cols, Rng& rng);
uint32_t rank(const MatF2& a);

// <a, b> = sum_{i,j} a_ij * b_ij over GF(2); the functional evaluation
// used by structured oracles and subspace membership tests.
int dot_f2(const MatF2& a, const MatF2& b);

namespace detail {
// Reference row-accumulation product and the 8-bit-table product; mat_mul
// dispatches between them on the inner dimension.
MatF2 mat_mul_rowxor(const MatF2& a, const MatF2& b);
MatF2 mat_mul_m4r(const MatF2& a, const MatF2& b);
inline constexpr uint32_t kM4rThreshold = 256;
}  // namespace detail

}  // namespace mmc
