#include "mmcorrect/mat_fp.hpp"

#include <stdexcept>

namespace mmc {

namespace {

void check_compatible(const MatFp& a, const MatFp& b, const char* op) {
    if (!(a.field() == b.field())) {
        throw std::invalid_argument(std::string(op) + ": field mismatch");
    }
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

MatFp::MatFp(FieldSpec field, uint32_t rows, uint32_t cols)
    : field_(field), rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("MatFp: dimensions must be >= 1");
    }
    v_.assign(size_t(rows) * cols, 0);
}

void MatFp::set(uint32_t i, uint32_t j, uint32_t val) {
    if (val >= field_.p) throw std::invalid_argument("MatFp::set: value not a residue");
    v_[size_t(i) * cols_ + j] = val;
}

MatFp MatFp::identity(FieldSpec field, uint32_t n) {
    MatFp m(field, n, n);
    for (uint32_t i = 0; i < n; ++i) m.set(i, i, 1 % field.p);
    return m;
}

MatFp MatFp::random(FieldSpec field, uint32_t rows, uint32_t cols, Rng& rng) {
    MatFp m(field, rows, cols);
    for (auto& v : m.v_) v = uint32_t(rng.below(field.p));
    return m;
}

bool MatFp::is_zero() const {
    for (uint32_t v : v_) {
        if (v) return false;
    }
    return true;
}

MatFp mat_mul(const MatFp& a, const MatFp& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("mat_mul: field mismatch");
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    const uint64_t p = a.field().p;
    MatFp c(a.field(), a.rows(), b.cols());
    // terms are < 2^62; reduce the lane whenever the top bit region fills,
    // so the accumulation never wraps
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < b.cols(); ++j) {
            uint64_t acc = 0;
            for (uint32_t k = 0; k < a.cols(); ++k) {
                acc += uint64_t(a.get(i, k)) * b.get(k, j);
                if (acc >> 63) acc %= p;
            }
            c.set(i, j, uint32_t(acc % p));
        }
    }
    return c;
}

MatFp mat_add(const MatFp& a, const MatFp& b) {
    check_compatible(a, b, "mat_add");
    MatFp c(a.field(), a.rows(), a.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < a.cols(); ++j) {
            c.set(i, j, a.field().add(a.get(i, j), b.get(i, j)));
        }
    }
    return c;
}

MatFp mat_sub(const MatFp& a, const MatFp& b) {
    check_compatible(a, b, "mat_sub");
    MatFp c(a.field(), a.rows(), a.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < a.cols(); ++j) {
            c.set(i, j, a.field().sub(a.get(i, j), b.get(i, j)));
        }
    }
    return c;
}

Rat agreement(const MatFp& a, const MatFp& b) {
    check_compatible(a, b, "agreement");
    unsigned long eq = 0;
    auto av = a.values();
    auto bv = b.values();
    for (size_t t = 0; t < av.size(); ++t) eq += av[t] == bv[t];
    return make_rat(long(eq), (unsigned long)a.rows() * a.cols());
}

MatFp cyclic_shift(const MatFp& a, ShiftPair s) {
    const uint32_t n = a.rows(), m = a.cols();
    if (s.pi >= n || s.sigma >= m) {
        throw std::invalid_argument("cyclic_shift: shift out of range");
    }
    MatFp c(a.field(), n, m);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < m; ++j) {
            c.set(i, j, a.get((i + n - s.pi) % n, (j + m - s.sigma) % m));
        }
    }
    return c;
}

MatFp sample_uniform_fp(FieldSpec field, uint32_t rows, uint32_t cols, Rng& rng) {
    return MatFp::random(field, rows, cols, rng);
}

uint32_t rank(const MatFp& a) {
    const auto& f = a.field();
    std::vector<std::vector<uint32_t>> rows(a.rows());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        rows[i].assign(a.values().begin() + size_t(i) * a.cols(),
                       a.values().begin() + size_t(i + 1) * a.cols());
    }
    uint32_t rk = 0;
    for (uint32_t col = 0; col < a.cols() && rk < a.rows(); ++col) {
        uint32_t pivot = rk;
        while (pivot < a.rows() && rows[pivot][col] == 0) ++pivot;
        if (pivot == a.rows()) continue;
        std::swap(rows[rk], rows[pivot]);
        const uint32_t piv_inv = f.inv(rows[rk][col]);
        for (uint32_t r = rk + 1; r < a.rows(); ++r) {
            if (rows[r][col] == 0) continue;
            const uint32_t factor = f.mul(rows[r][col], piv_inv);
            for (uint32_t t = col; t < a.cols(); ++t) {
                rows[r][t] = f.sub(rows[r][t], f.mul(factor, rows[rk][t]));
            }
        }
        ++rk;
    }
    return rk;
}

}  // namespace mmc
