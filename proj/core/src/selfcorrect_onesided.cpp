#include "mmcorrect/selfcorrect_onesided.hpp"

#include <cmath>
#include <stdexcept>

#include "mmcorrect/errors.hpp"

namespace mmc {

TernaryMat::TernaryMat(MatF2 known, MatF2 value)
    : known_(std::move(known)), value_(std::move(value)) {
    if (known_.rows() != known_.cols() || value_.rows() != value_.cols() ||
        known_.rows() != value_.rows()) {
        throw std::invalid_argument("TernaryMat: masks must be square and same size");
    }
    // keep values canonical: unknown positions read as 0
    value_ = [&] {
        MatF2 v = value_;
        for (uint32_t i = 0; i < v.rows(); ++i) {
            auto vr = v.row(i);
            auto kr = known_.row(i);
            for (size_t t = 0; t < v.words_per_row(); ++t) vr[t] &= kr[t];
        }
        return v;
    }();
}

void OneSidedParams::validate() const {
    if (delta <= 0 || delta > make_rat(1, 2)) {
        throw std::invalid_argument("OneSidedParams: delta must lie in (0, 1/2]");
    }
    if (t < 1) throw std::invalid_argument("OneSidedParams: t >= 1");
    if (budget < 1) throw std::invalid_argument("OneSidedParams: budget >= 1");
    if (theory_mode) {
        const Rat four_over_delta = 4 / delta;
        // strict bound: 2^(t-2) > 4/delta
        if (t < 3 || pow2_rat(long(t) - 2) <= four_over_delta) {
            throw std::invalid_argument("OneSidedParams: theory mode needs t > log2(4/delta) + 2");
        }
        const unsigned long want_k = ceil_log2_rat(pow_rat(four_over_delta, 8));
        if (k != want_k) {
            throw std::invalid_argument("OneSidedParams: theory mode needs k = ceil(8*log2(4/delta))");
        }
    }
}

OneSidedParams derive_params(const Rat& delta, uint32_t n, const ParamOverrides& o) {
    if (delta <= 0 || delta > make_rat(1, 2)) {
        throw std::invalid_argument("derive_params: delta must lie in (0, 1/2]");
    }
    OneSidedParams p;
    p.delta = delta;
    const Rat four_over_delta = 4 / delta;
    p.t = uint32_t(ceil_log2_rat(four_over_delta)) + 3;
    p.k = uint32_t(ceil_log2_rat(pow_rat(four_over_delta, 8)));  // ceil(8*log2(4/delta))
    p.theory_mode = true;
    p.delta0_hint = o.delta0_hint;
    if (p.delta0_hint) {
        const double d0 = p.delta0_hint->get_d();
        const double r = 3.0 * std::log(double(n) * n * n) / (delta.get_d() * d0);
        p.budget = uint32_t(std::min(std::ceil(r), 1e9));
    } else {
        p.budget = kDefaultRepetitionBudget;
    }
    if (o.t) p.t = *o.t;
    if (o.k) p.k = *o.k;
    if (o.budget) p.budget = *o.budget;
    if (o.early_exit) p.early_exit = *o.early_exit;
    if (o.theory_mode) {
        p.theory_mode = *o.theory_mode;
    } else if (o.t || o.k) {
        p.theory_mode = false;  // overrides below the theory bounds are test mode
    }
    p.validate();
    return p;
}

std::vector<MatF2> share_split(const MatF2& m, uint32_t t, Rng& rng) {
    if (t < 1) throw std::invalid_argument("share_split: t >= 1");
    std::vector<MatF2> shares;
    shares.reserve(t);
    MatF2 rest = m;
    for (uint32_t r = 0; r + 1 < t; ++r) {
        shares.push_back(MatF2::random(m.rows(), m.cols(), rng));
        rest = mat_sub(rest, shares.back());
    }
    shares.push_back(rest);
    return shares;
}

PassResult good_coordinate_pass(const MatF2& a, const MatF2& b, const OracleModel& model,
                                const OneSidedParams& params, Rng& rng) {
    if (model.field().p != 2) {
        throw std::invalid_argument("good_coordinate_pass: GF(2) oracles only");
    }
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("good_coordinate_pass: inputs must be square n x n");
    }
    const uint32_t n = a.rows();
    const uint32_t t = params.t;

    // sampling order: L_A, L_B, R shares, then the S share lists
    const LowRankF2 la = sample_low_rank(n, n, 2 * params.k, rng);
    const LowRankF2 lb = sample_low_rank(n, n, 2 * params.t * params.k, rng);
    const MatF2 ma = mat_sub(a, la.expand());
    const MatF2 mb = mat_sub(b, lb.expand());

    const std::vector<MatF2> r_shares = share_split(ma, t, rng);
    std::vector<std::vector<MatF2>> s_lists;
    s_lists.reserve(t);
    for (uint32_t r = 0; r < t; ++r) s_lists.push_back(share_split(mb, t, rng));

    // all-ones mask and running parity of the t^2 oracle answers
    MatF2 all_one(n, n);
    MatF2 parity(n, n);
    bool first = true;
    uint64_t calls = 0;
    for (uint32_t r = 0; r < t; ++r) {
        for (uint32_t s = 0; s < t; ++s) {
            const MatF2 out = invoke(model, r_shares[r], s_lists[r][s]);
            ++calls;
            parity = mat_add(parity, out);
            if (first) {
                all_one = out;
                first = false;
            } else {
                for (uint32_t i = 0; i < n; ++i) {
                    auto m1 = all_one.row(i);
                    auto m2 = out.row(i);
                    for (size_t w = 0; w < all_one.words_per_row(); ++w) m1[w] &= m2[w];
                }
            }
        }
    }

    // cross terms M_A L_B + L_A M_B + L_A L_B via the factored forms
    MatF2 cross = lowrank_mul(lb, ma, Side::Right);
    cross = mat_add(cross, lowrank_mul(la, mb, Side::Left));
    if (la.rank_bound() > 0 && lb.rank_bound() > 0) {
        const MatF2 inner = mat_mul(mat_mul(*la.coeffs(), *lb.base()), *lb.coeffs());
        cross = mat_add(cross, mat_mul(*la.base(), inner));
    }

    return PassResult{TernaryMat(all_one, mat_add(parity, cross)), calls};
}

OneSidedResult reduce_one_sided(const MatF2& a, const MatF2& b, const OracleModel& model,
                                const OneSidedParams& params, Rng& rng) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("reduce_one_sided: inputs must be square n x n");
    }
    params.validate();
    const uint32_t n = a.rows();
    const uint64_t base_seed = rng.next();

    OneSidedResult res{false, MatF2(n, n), TernaryMat(n), 0, 0};
    size_t remaining = size_t(n) * n;
    for (uint32_t rep = 0; rep < params.budget; ++rep) {
        Rng rep_rng(mix_seed(base_seed, rep));
        const uint32_t pi = uint32_t(rep_rng.below(n));
        const uint32_t sigma = uint32_t(rep_rng.below(n));
        PassResult pass = good_coordinate_pass(cyclic_shift(a, {pi, 0}),
                                               cyclic_shift(b, {0, sigma}), model, params,
                                               rep_rng);
        res.oracle_calls += pass.oracle_calls;
        res.repetitions = rep + 1;

        // pass output approximates (AB)^{pi,sigma}; un-shift the trusted entries
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) {
                const auto v = pass.out.get((i + pi) % n, (j + sigma) % n);
                if (!v) continue;
                const auto prev = res.partial.get(i, j);
                if (!prev) {
                    res.partial.set(i, j, *v);
                    --remaining;
                } else if (*prev != *v) {
                    throw InvariantViolation(
                        "reduce_one_sided: two completed values disagree at (" +
                        std::to_string(i) + "," + std::to_string(j) +
                        "); the oracle violated its one-sided contract");
                }
            }
        }
        if (params.early_exit && remaining == 0) break;
    }

    if (remaining == 0) {
        res.complete = true;
        res.product = res.partial.values();
    }
    return res;
}

Lemma48Result lemma48_hit_rate(uint32_t n, uint32_t k, uint32_t ell,
                               const std::vector<MatF2>& constraints, uint64_t trials,
                               Rng& rng) {
    if (constraints.size() != k) {
        throw std::invalid_argument("lemma48_hit_rate: need exactly k constraints");
    }
    if (ell < 2 * k) throw std::invalid_argument("lemma48_hit_rate: ell >= 2k required");
    if (trials == 0) throw std::invalid_argument("lemma48_hit_rate: trials >= 1");
    if (k > 0) {
        // reject dependent constraint sets: flatten to k x n^2 and rank-check
        MatF2 flat(k, n * n);
        for (uint32_t c = 0; c < k; ++c) {
            if (constraints[c].rows() != n || constraints[c].cols() != n) {
                throw std::invalid_argument("lemma48_hit_rate: constraint shape mismatch");
            }
            for (uint32_t i = 0; i < n; ++i) {
                for (uint32_t j = 0; j < n; ++j) {
                    if (constraints[c].get(i, j)) flat.set(c, i * n + j, 1);
                }
            }
        }
        if (rank(flat) != k) {
            throw std::invalid_argument("lemma48_hit_rate: constraints are linearly dependent");
        }
    }

    const MatF2 a = MatF2::random(n, n, rng);  // the fixed target matrix
    Lemma48Result res;
    res.trials = trials;
    for (uint64_t tr = 0; tr < trials; ++tr) {
        const LowRankF2 l = sample_low_rank(n, n, ell, rng);
        const MatF2 m = mat_sub(a, l.expand());
        bool hit = true;
        for (const MatF2& c : constraints) {
            if (dot_f2(c, m) != 0) {
                hit = false;
                break;
            }
        }
        res.hits += hit;
    }
    res.frequency = make_rat(long(res.hits), (unsigned long)trials);
    const double f = res.frequency.get_d();
    res.half_width = 1.96 * std::sqrt(f * (1.0 - f) / double(trials));
    res.bound = make_rat(1, mpz_class(2) << k);  // 1 / (2 * 2^k)
    return res;
}

}  // namespace mmc
