#pragma once

#include <cstdint>
#include <optional>

#include "mmcorrect/mat_f2.hpp"
#include "mmcorrect/mat_fp.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

enum class Side { Left, Right };

// Random rank-<=k matrix stored factored: the first k columns (base) are
// sampled uniformly, every remaining column is a random linear combination
// of them.  coeffs is k x m with the leading k x k block equal to the
// identity, so dense expansion = base * coeffs and the first k expanded
// columns are the base columns themselves.
//
// k = 0 is the zero matrix; the factors are then absent.
template <class Mat>
class LowRankMat {
public:
    // validates shapes and the identity block; `field` is required for the
    // k = 0 prime-field case (otherwise it is read off the factors)
    LowRankMat(uint32_t rows, uint32_t cols, uint32_t k, std::optional<Mat> base,
               std::optional<Mat> coeffs, std::optional<FieldSpec> field = std::nullopt);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    uint32_t rank_bound() const { return k_; }
    const std::optional<Mat>& base() const { return base_; }
    const std::optional<Mat>& coeffs() const { return coeffs_; }

    // O(k*rows*cols) expansion through the factors.  Needed whenever the
    // matrix is combined entrywise (e.g. forming A - L); the dense n^3
    // product path is never taken.
    Mat expand() const;

private:
    uint32_t rows_, cols_, k_;
    std::optional<Mat> base_;    // rows x k
    std::optional<Mat> coeffs_;  // k x cols, leading k x k block = I
    std::optional<FieldSpec> field_;
};

using LowRankF2 = LowRankMat<MatF2>;
using LowRankFp = LowRankMat<MatFp>;

LowRankF2 sample_low_rank(uint32_t rows, uint32_t cols, uint32_t k, Rng& rng);
LowRankFp sample_low_rank(FieldSpec field, uint32_t rows, uint32_t cols, uint32_t k,
                          Rng& rng);

// L*d (side=Left) or d*L (side=Right) through the factored form; costs
// O(k * rows * cols) instead of a dense product.
template <class Mat>
Mat lowrank_mul(const LowRankMat<Mat>& l, const Mat& d, Side side);

}  // namespace mmc
