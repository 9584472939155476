#include "mmcorrect/low_rank.hpp"

#include <stdexcept>

namespace mmc {

template <class Mat>
LowRankMat<Mat>::LowRankMat(uint32_t rows, uint32_t cols, uint32_t k,
                            std::optional<Mat> base, std::optional<Mat> coeffs,
                            std::optional<FieldSpec> field)
    : rows_(rows),
      cols_(cols),
      k_(k),
      base_(std::move(base)),
      coeffs_(std::move(coeffs)),
      field_(field) {
    if (k > cols) throw std::invalid_argument("LowRankMat: k out of range");
    if (k == 0) {
        if (base_ || coeffs_) {
            throw std::invalid_argument("LowRankMat: k=0 admits no factors");
        }
        if constexpr (std::is_same_v<Mat, MatFp>) {
            if (!field_) throw std::invalid_argument("LowRankMat: k=0 over GF(p) needs a field");
        }
        return;
    }
    if (!base_ || !coeffs_) throw std::invalid_argument("LowRankMat: missing factors");
    if (base_->rows() != rows || base_->cols() != k) {
        throw std::invalid_argument("LowRankMat: base shape mismatch");
    }
    if (coeffs_->rows() != k || coeffs_->cols() != cols) {
        throw std::invalid_argument("LowRankMat: coeffs shape mismatch");
    }
    if constexpr (std::is_same_v<Mat, MatFp>) {
        if (!(base_->field() == coeffs_->field())) {
            throw std::invalid_argument("LowRankMat: factor field mismatch");
        }
        field_ = base_->field();
    }
    for (uint32_t i = 0; i < k; ++i) {
        for (uint32_t j = 0; j < k; ++j) {
            const uint32_t want = i == j ? 1 : 0;
            if (uint32_t(coeffs_->get(i, j)) != want) {
                throw std::invalid_argument(
                    "LowRankMat: leading block of coeffs must be the identity");
            }
        }
    }
}

template <class Mat>
Mat LowRankMat<Mat>::expand() const {
    if (k_ == 0) {
        if constexpr (std::is_same_v<Mat, MatF2>) {
            return MatF2(rows_, cols_);
        } else {
            return MatFp(*field_, rows_, cols_);
        }
    }
    return mat_mul(*base_, *coeffs_);
}

LowRankF2 sample_low_rank(uint32_t rows, uint32_t cols, uint32_t k, Rng& rng) {
    if (k > cols) throw std::invalid_argument("sample_low_rank: k out of range");
    if (k == 0) return LowRankF2(rows, cols, 0, std::nullopt, std::nullopt);
    MatF2 base = MatF2::random(rows, k, rng);
    MatF2 coeffs(k, cols);
    for (uint32_t i = 0; i < k; ++i) coeffs.set(i, i, 1);
    for (uint32_t j = k; j < cols; ++j) {
        for (uint32_t i = 0; i < k; ++i) coeffs.set(i, j, int(rng.bit()));
    }
    return LowRankF2(rows, cols, k, std::move(base), std::move(coeffs));
}

LowRankFp sample_low_rank(FieldSpec field, uint32_t rows, uint32_t cols, uint32_t k,
                          Rng& rng) {
    if (k > cols) throw std::invalid_argument("sample_low_rank: k out of range");
    if (k == 0) return LowRankFp(rows, cols, 0, std::nullopt, std::nullopt, field);
    MatFp base = MatFp::random(field, rows, k, rng);
    MatFp coeffs(field, k, cols);
    for (uint32_t i = 0; i < k; ++i) coeffs.set(i, i, 1 % field.p);
    for (uint32_t j = k; j < cols; ++j) {
        for (uint32_t i = 0; i < k; ++i) coeffs.set(i, j, uint32_t(rng.below(field.p)));
    }
    return LowRankFp(rows, cols, k, std::move(base), std::move(coeffs));
}

namespace {

template <class Mat>
Mat zero_like(const Mat& shape_src, uint32_t rows, uint32_t cols) {
    if constexpr (std::is_same_v<Mat, MatF2>) {
        (void)shape_src;
        return MatF2(rows, cols);
    } else {
        return MatFp(shape_src.field(), rows, cols);
    }
}

}  // namespace

template <class Mat>
Mat lowrank_mul(const LowRankMat<Mat>& l, const Mat& d, Side side) {
    if (side == Side::Left) {
        // L * d
        if (d.rows() != l.cols()) throw std::invalid_argument("lowrank_mul: shape mismatch");
        if (l.rank_bound() == 0) return zero_like(d, l.rows(), d.cols());
        return mat_mul(*l.base(), mat_mul(*l.coeffs(), d));
    }
    // d * L
    if (d.cols() != l.rows()) throw std::invalid_argument("lowrank_mul: shape mismatch");
    if (l.rank_bound() == 0) return zero_like(d, d.rows(), l.cols());
    return mat_mul(mat_mul(d, *l.base()), *l.coeffs());
}

template class LowRankMat<MatF2>;
template class LowRankMat<MatFp>;
template MatF2 lowrank_mul(const LowRankMat<MatF2>&, const MatF2&, Side);
template MatFp lowrank_mul(const LowRankMat<MatFp>&, const MatFp&, Side);

}  // namespace mmc
