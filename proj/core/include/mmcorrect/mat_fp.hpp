#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmcorrect/field.hpp"
#include "mmcorrect/mat_f2.hpp"  // ShiftPair
#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

// Dense matrix over GF(p), row-major residues in [0, p).
class MatFp {
public:
    MatFp(FieldSpec field, uint32_t rows, uint32_t cols);

    static MatFp identity(FieldSpec field, uint32_t n);
    static MatFp random(FieldSpec field, uint32_t rows, uint32_t cols, Rng& rng);

    const FieldSpec& field() const { return field_; }
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    uint32_t get(uint32_t i, uint32_t j) const { return v_[size_t(i) * cols_ + j]; }
    void set(uint32_t i, uint32_t j, uint32_t val);

    std::span<const uint32_t> values() const { return {v_.data(), v_.size()}; }

    bool operator==(const MatFp& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
    }

    bool is_zero() const;

private:
    FieldSpec field_;
    uint32_t rows_, cols_;
    std::vector<uint32_t> v_;
};

MatFp mat_mul(const MatFp& a, const MatFp& b);
MatFp mat_add(const MatFp& a, const MatFp& b);
MatFp mat_sub(const MatFp& a, const MatFp& b);
Rat agreement(const MatFp& a, const MatFp& b);
MatFp cyclic_shift(const MatFp& a, ShiftPair s);
MatFp sample_uniform_fp(FieldSpec field, uint32_t rows, uint32_t cols, Rng& rng);
uint32_t rank(const MatFp& a);

}  // namespace mmc
