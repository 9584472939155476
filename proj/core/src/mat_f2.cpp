#include "mmcorrect/mat_f2.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace mmc {

namespace {

void check_same_shape(const MatF2& a, const MatF2& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
}

// dst = src << s (bit shift over the packed row), dst has the same word count
void shl_bits(const uint64_t* src, uint64_t* dst, size_t words, uint32_t s) {
    const size_t ws = s >> 6;
    const uint32_t bs = s & 63;
    if (bs == 0) {
        for (size_t w = words; w-- > 0;) {
            dst[w] = w >= ws ? src[w - ws] : 0;
        }
    } else {
        for (size_t w = words; w-- > 0;) {
            uint64_t hi = w >= ws ? src[w - ws] << bs : 0;
            uint64_t lo = w >= ws + 1 ? src[w - ws - 1] >> (64 - bs) : 0;
            dst[w] = hi | lo;
        }
    }
}

// dst = src >> s
void shr_bits(const uint64_t* src, uint64_t* dst, size_t words, uint32_t s) {
    const size_t ws = s >> 6;
    const uint32_t bs = s & 63;
    if (bs == 0) {
        for (size_t w = 0; w < words; ++w) {
            dst[w] = w + ws < words ? src[w + ws] : 0;
        }
    } else {
        for (size_t w = 0; w < words; ++w) {
            uint64_t lo = w + ws < words ? src[w + ws] >> bs : 0;
            uint64_t hi = w + ws + 1 < words ? src[w + ws + 1] << (64 - bs) : 0;
            dst[w] = lo | hi;
        }
    }
}

}  // namespace

MatF2::MatF2(uint32_t rows, uint32_t cols)
    : rows_(rows), cols_(cols), wpr_((size_t(cols) + 63) / 64) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("MatF2: dimensions must be >= 1");
    }
    const uint32_t rem = cols_ & 63;
    lastmask_ = rem ? ((uint64_t(1) << rem) - 1) : ~uint64_t(0);
    w_.assign(size_t(rows_) * wpr_, 0);
}

MatF2 MatF2::identity(uint32_t n) {
    MatF2 m(n, n);
    for (uint32_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

MatF2 MatF2::random(uint32_t rows, uint32_t cols, Rng& rng) {
    MatF2 m(rows, cols);
    for (uint32_t i = 0; i < rows; ++i) {
        auto r = m.row(i);
        for (auto& w : r) w = rng.next();
        r[m.wpr_ - 1] &= m.lastmask_;
    }
    return m;
}

bool MatF2::is_zero() const {
    for (uint64_t w : w_) {
        if (w) return false;
    }
    return true;
}

size_t MatF2::popcount() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool MatF2::is_canonical() const {
    for (uint32_t i = 0; i < rows_; ++i) {
        if (row(i)[wpr_ - 1] & ~lastmask_) return false;
    }
    return true;
}

MatF2 MatF2::transposed() const {
    MatF2 t(cols_, rows_);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t j = 0; j < cols_; ++j) {
            if (get(i, j)) t.set(j, i, 1);
        }
    }
    return t;
}

namespace detail {

MatF2 mat_mul_rowxor(const MatF2& a, const MatF2& b) {
    MatF2 c(a.rows(), b.cols());
    const size_t wpr = c.words_per_row();
    for (uint32_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        auto crow = c.row(i);
        for (size_t wk = 0; wk < a.words_per_row(); ++wk) {
            uint64_t w = arow[wk];
            while (w) {
                const uint32_t k = uint32_t(wk * 64) + std::countr_zero(w);
                auto brow = b.row(k);
                for (size_t t = 0; t < wpr; ++t) crow[t] ^= brow[t];
                w &= w - 1;
            }
        }
    }
    return c;
}

// Eight rows of b at a time: all 256 XOR combinations are tabulated once,
// every row of a then contributes one table lookup per group.
MatF2 mat_mul_m4r(const MatF2& a, const MatF2& b) {
    const uint32_t kdim = a.cols();
    MatF2 c(a.rows(), b.cols());
    const size_t wpr = c.words_per_row();
    std::vector<uint64_t> table(256 * wpr);

    for (uint32_t k0 = 0; k0 < kdim; k0 += 8) {
        const uint32_t g = std::min(8u, kdim - k0);
        const uint32_t entries = 1u << g;
        std::memset(table.data(), 0, entries * wpr * sizeof(uint64_t));
        for (uint32_t bit = 0; bit < g; ++bit) {
            auto brow = b.row(k0 + bit);
            const uint32_t lo = 1u << bit;
            for (uint32_t s = 0; s < lo; ++s) {
                const uint64_t* src = table.data() + size_t(s) * wpr;
                uint64_t* dst = table.data() + size_t(lo + s) * wpr;
                for (size_t t = 0; t < wpr; ++t) dst[t] = src[t] ^ brow[t];
            }
        }
        for (uint32_t i = 0; i < a.rows(); ++i) {
            auto arow = a.row(i);
            // g bits of the row starting at k0
            const size_t wk = k0 >> 6;
            const uint32_t bs = k0 & 63;
            uint64_t bits = arow[wk] >> bs;
            if (bs && wk + 1 < a.words_per_row()) bits |= arow[wk + 1] << (64 - bs);
            const uint32_t idx = uint32_t(bits) & (entries - 1);
            if (!idx) continue;
            const uint64_t* src = table.data() + size_t(idx) * wpr;
            auto crow = c.row(i);
            for (size_t t = 0; t < wpr; ++t) crow[t] ^= src[t];
        }
    }
    return c;
}

}  // namespace detail

MatF2 mat_mul(const MatF2& a, const MatF2& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: dimension mismatch");
    }
    if (a.cols() >= detail::kM4rThreshold) return detail::mat_mul_m4r(a, b);
    return detail::mat_mul_rowxor(a, b);
}

MatF2 mat_add(const MatF2& a, const MatF2& b) {
    check_same_shape(a, b, "mat_add");
    MatF2 c = a;
    for (uint32_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        auto brow = b.row(i);
        for (size_t t = 0; t < c.words_per_row(); ++t) crow[t] ^= brow[t];
    }
    return c;
}

MatF2 mat_sub(const MatF2& a, const MatF2& b) { return mat_add(a, b); }

Rat agreement(const MatF2& a, const MatF2& b) {
    check_same_shape(a, b, "agreement");
    size_t diff = 0;
    auto aw = a.words();
    auto bw = b.words();
    for (size_t t = 0; t < aw.size(); ++t) diff += std::popcount(aw[t] ^ bw[t]);
    const unsigned long total = (unsigned long)a.rows() * a.cols();
    return make_rat(long(total - diff), total);
}

MatF2 cyclic_shift(const MatF2& a, ShiftPair s) {
    const uint32_t n = a.rows(), m = a.cols();
    if (s.pi >= n || s.sigma >= m) {
        throw std::invalid_argument("cyclic_shift: shift out of range");
    }
    MatF2 c(n, m);
    const size_t wpr = a.words_per_row();
    std::vector<uint64_t> left(wpr), right(wpr);
    for (uint32_t i = 0; i < n; ++i) {
        const uint32_t src = (i + n - s.pi) % n;
        auto srow = a.row(src);
        auto drow = c.row(i);
        if (s.sigma == 0) {
            std::memcpy(drow.data(), srow.data(), wpr * sizeof(uint64_t));
            continue;
        }
        // bit j of dst = bit (j - sigma mod m) of src
        shl_bits(srow.data(), left.data(), wpr, s.sigma);
        shr_bits(srow.data(), right.data(), wpr, m - s.sigma);
        for (size_t t = 0; t < wpr; ++t) drow[t] = left[t] | right[t];
        drow[wpr - 1] &= a.last_word_mask();
    }
    return c;
}

MatF2 sample_uniform_f2(uint32_t rows, uint32_t cols, Rng& rng) {
    return MatF2::random(rows, cols, rng);
}

uint32_t rank(const MatF2& a) {
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(a.rows());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        rows.emplace_back(a.row(i).begin(), a.row(i).end());
    }
    const size_t wpr = a.words_per_row();
    uint32_t rk = 0;
    for (uint32_t col = 0; col < a.cols() && rk < a.rows(); ++col) {
        const size_t wc = col >> 6;
        const uint64_t bit = uint64_t(1) << (col & 63);
        uint32_t pivot = rk;
        while (pivot < a.rows() && !(rows[pivot][wc] & bit)) ++pivot;
        if (pivot == a.rows()) continue;
        std::swap(rows[rk], rows[pivot]);
        for (uint32_t r = rk + 1; r < a.rows(); ++r) {
            if (rows[r][wc] & bit) {
                for (size_t t = wc; t < wpr; ++t) rows[r][t] ^= rows[rk][t];
            }
        }
        ++rk;
    }
    return rk;
}

int dot_f2(const MatF2& a, const MatF2& b) {
    check_same_shape(a, b, "dot_f2");
    size_t c = 0;
    auto aw = a.words();
    auto bw = b.words();
    for (size_t t = 0; t < aw.size(); ++t) c += std::popcount(aw[t] & bw[t]);
    return int(c & 1);
}

}  // namespace mmc
