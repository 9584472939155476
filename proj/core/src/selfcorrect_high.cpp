#include "mmcorrect/selfcorrect_high.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmc {

namespace {

void check_alpha(const Rat& alpha) {
    if (alpha <= 0 || alpha >= make_rat(1, 8)) {
        throw std::invalid_argument("alpha must lie in (0, 1/8)");
    }
}

}  // namespace

uint32_t choose_repetitions(uint32_t n, const Rat& alpha, const Rat& failure_target) {
    check_alpha(alpha);
    if (n < 2) throw std::invalid_argument("choose_repetitions: n >= 2");
    if (failure_target <= 0 || failure_target > 1) {
        throw std::invalid_argument("choose_repetitions: failure target in (0, 1]");
    }
    const double gap = 0.5 - 4.0 * alpha.get_d();
    const double need = std::log(1.0 / failure_target.get_d()) / (2.0 * gap * gap);
    uint32_t k = need <= 1.0 ? 1 : uint32_t(std::ceil(need));
    if (k % 2 == 0) ++k;
    return k;
}

HighParams HighParams::derive(uint32_t n, Rat alpha, Rat failure_target) {
    check_alpha(alpha);
    HighParams p;
    p.alpha = std::move(alpha);
    p.failure_target = failure_target == 0
                           ? make_rat(1, mpz_class(uint64_t(n) * n * n))
                           : std::move(failure_target);
    p.k = choose_repetitions(n, p.alpha, p.failure_target);
    return p;
}

void HighParams::validate(uint32_t field_p) const {
    check_alpha(alpha);
    if (k < 1) throw std::invalid_argument("HighParams: k >= 1");
    if (field_p == 2 && k % 2 == 0) {
        throw std::invalid_argument("HighParams: k must be odd over GF(2)");
    }
}

namespace {

MatF2 sample_like(const MatF2&, uint32_t n, Rng& rng) { return MatF2::random(n, n, rng); }
MatFp sample_like(const MatFp& proto, uint32_t n, Rng& rng) {
    return MatFp::random(proto.field(), n, n, rng);
}

}  // namespace

template <class Mat>
HighResult<Mat> self_correct_high(const Mat& a, const Mat& b, const OracleModel& model,
                                  const HighParams& params, Rng& rng) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("self_correct_high: inputs must be square n x n");
    }
    params.validate(model.field().p);
    const uint32_t n = a.rows();
    const uint32_t k = params.k;
    const uint64_t base_seed = rng.next();

    constexpr bool is_f2 = std::is_same_v<Mat, MatF2>;
    // per-entry vote accumulators
    std::vector<uint32_t> one_votes;      // GF(2): count of 1 results
    std::vector<Mat> all_results;         // GF(p): full per-repetition values
    if constexpr (is_f2) {
        one_votes.assign(size_t(n) * n, 0);
    } else {
        all_results.reserve(k);
    }

    HighResult<Mat> res{Mat(a), 0, k};
    for (uint32_t r = 0; r < k; ++r) {
        Rng rep_rng(mix_seed(base_seed, r));
        const Mat rmask = sample_like(a, n, rep_rng);
        const Mat smask = sample_like(a, n, rep_rng);
        const uint32_t pi = uint32_t(rep_rng.below(n));
        const uint32_t sigma = uint32_t(rep_rng.below(n));

        const Mat ar = cyclic_shift(mat_add(a, rmask), {pi, 0});
        const Mat rr = cyclic_shift(rmask, {pi, 0});
        const Mat bs = cyclic_shift(mat_add(b, smask), {0, sigma});
        const Mat ss = cyclic_shift(smask, {0, sigma});

        const Mat q1 = invoke(model, ar, bs);
        const Mat q2 = invoke(model, rr, bs);
        const Mat q3 = invoke(model, ar, ss);
        const Mat q4 = invoke(model, rr, ss);
        res.oracle_calls += 4;

        const Mat m = mat_add(mat_sub(mat_sub(q1, q2), q3), q4);
        const Mat cr = cyclic_shift(m, {(n - pi) % n, (n - sigma) % n});

        if constexpr (is_f2) {
            for (uint32_t i = 0; i < n; ++i) {
                for (uint32_t j = 0; j < n; ++j) one_votes[size_t(i) * n + j] += cr.get(i, j);
            }
        } else {
            all_results.push_back(cr);
        }
    }

    if constexpr (is_f2) {
        MatF2 out(n, n);
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                // k odd: strict majority always exists
                if (2 * one_votes[size_t(i) * n + j] > k) out.set(i, j, 1);
            }
        }
        res.output = out;
    } else {
        MatFp out(a.field(), n, n);
        std::vector<uint32_t> vals(k);
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                for (uint32_t r = 0; r < k; ++r) vals[r] = all_results[r].get(i, j);
                std::sort(vals.begin(), vals.end());
                // plurality; scanning ascending breaks ties toward the
                // smallest residue
                uint32_t best = vals[0], best_count = 0;
                uint32_t run_start = 0;
                for (uint32_t r = 1; r <= k; ++r) {
                    if (r == k || vals[r] != vals[run_start]) {
                        const uint32_t len = r - run_start;
                        if (len > best_count) {
                            best_count = len;
                            best = vals[run_start];
                        }
                        run_start = r;
                    }
                }
                out.set(i, j, best);
            }
        }
        res.output = out;
    }
    return res;
}

template HighResult<MatF2> self_correct_high(const MatF2&, const MatF2&, const OracleModel&,
                                             const HighParams&, Rng&);
template HighResult<MatFp> self_correct_high(const MatFp&, const MatFp&, const OracleModel&,
                                             const HighParams&, Rng&);

}  // namespace mmc
