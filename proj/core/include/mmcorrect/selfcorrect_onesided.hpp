#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmcorrect/low_rank.hpp"
#include "mmcorrect/mat_f2.hpp"
#include "mmcorrect/oracle.hpp"
#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

// n x n matrix over GF(2) extended with an "unknown" value.  `value` bits
// are meaningful only where `known` is set.
class TernaryMat {
public:
    explicit TernaryMat(uint32_t n) : known_(n, n), value_(n, n) {}
    TernaryMat(MatF2 known, MatF2 value);

    uint32_t n() const { return known_.rows(); }
    bool is_known(uint32_t i, uint32_t j) const { return known_.get(i, j) != 0; }
    std::optional<int> get(uint32_t i, uint32_t j) const {
        if (!is_known(i, j)) return std::nullopt;
        return value_.get(i, j);
    }
    void set(uint32_t i, uint32_t j, int v) {
        known_.set(i, j, 1);
        value_.set(i, j, v);
    }

    size_t known_count() const { return known_.popcount(); }
    size_t unknown_count() const { return size_t(n()) * n() - known_count(); }
    const MatF2& known_mask() const { return known_; }
    const MatF2& values() const { return value_; }

private:
    MatF2 known_;
    MatF2 value_;
};

// Reduction parameters.  In theory mode t and k follow the bounds
// t > log2(4/delta) + 2 and k = ceil(8 * log2(4/delta)); test mode admits
// any t >= 1, k >= 0 (soundness holds for every choice, only the fill rate
// changes).
struct OneSidedParams {
    Rat delta;                      // declared average advantage of the oracle
    uint32_t t = 1;                 // share count
    uint32_t k = 0;                 // rank parameter
    uint32_t budget = 4096;         // max repetitions R
    std::optional<Rat> delta0_hint; // per-pass fill-probability hint
    bool early_exit = true;
    bool theory_mode = false;

    void validate() const;
};

inline constexpr uint32_t kDefaultRepetitionBudget = 4096;

struct ParamOverrides {
    std::optional<uint32_t> t, k, budget;
    std::optional<Rat> delta0_hint;
    std::optional<bool> early_exit, theory_mode;
};

// Theory defaults: t = ceil(log2(4/delta)) + 3, k = ceil(8*log2(4/delta)),
// R = ceil(3*ln(n^3) / (delta*delta0_hint)) when a hint is given, else the
// default budget cap.  Any field may be overridden; overriding t below the
// theory bound switches theory_mode off.
OneSidedParams derive_params(const Rat& delta, uint32_t n,
                             const ParamOverrides& overrides = {});

// Additive share decomposition: the first t-1 shares are uniform, the last
// completes the sum, so every share is marginally uniform.
std::vector<MatF2> share_split(const MatF2& m, uint32_t t, Rng& rng);

struct PassResult {
    TernaryMat out;
    uint64_t oracle_calls = 0;
};

// One good-coordinate pass: splits off low-rank parts L_A (rank <= 2k) and
// L_B (rank <= 2tk), writes A = L_A + M_A, B = L_B + M_B, decomposes M_A
// into t shares and M_B into t independent share lists, queries the oracle
// on all t^2 share pairs, and trusts exactly the coordinates where every
// answer is 1 (one-sided answers of 1 are never wrong).  Trusted entries of
// sum_{r,s} ALG(R_r, S^(r)_s) equal (M_A M_B)_{i,j}; the low-rank cross
// terms are added back through their factored forms.  Exactly t^2 oracle
// invocations.
PassResult good_coordinate_pass(const MatF2& a, const MatF2& b, const OracleModel& model,
                                const OneSidedParams& params, Rng& rng);

struct OneSidedResult {
    bool complete = false;
    MatF2 product;      // meaningful iff complete
    TernaryMat partial; // final accumulator state
    uint32_t repetitions = 0;
    uint64_t oracle_calls = 0;
};

// Runs good-coordinate passes on independently shifted inputs until the
// output matrix is complete or the repetition budget is exhausted.  Writes
// never conflict for an honestly one-sided oracle; a conflict raises
// InvariantViolation.
OneSidedResult reduce_one_sided(const MatF2& a, const MatF2& b, const OracleModel& model,
                                const OneSidedParams& params, Rng& rng);

struct Lemma48Result {
    uint64_t hits = 0;
    uint64_t trials = 0;
    Rat frequency{0};
    double half_width = 0;
    Rat bound{0};  // 1 / (2 * 2^k)
};

// Monte-Carlo check that M_A = A - L^ell lands in a fixed codimension-k
// subspace of matrix space with frequency >= 1/(2*2^k).  Constraints are k
// linearly independent functionals represented as n x n indicator matrices;
// ell >= 2k is required.
Lemma48Result lemma48_hit_rate(uint32_t n, uint32_t k, uint32_t ell,
                               const std::vector<MatF2>& constraints, uint64_t trials,
                               Rng& rng);

}  // namespace mmc
