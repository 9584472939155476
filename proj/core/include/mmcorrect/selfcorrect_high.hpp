#pragma once

#include <cstdint>

#include "mmcorrect/oracle.hpp"
#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

// Parameters of the high-agreement self-corrector.  alpha is the assumed
// per-entry error budget of the oracle, k the number of repetitions voted
// over (kept odd over GF(2) so votes cannot tie).
struct HighParams {
    Rat alpha;            // in (0, 1/8)
    uint32_t k = 1;
    Rat failure_target;   // per-entry failure probability aimed for

    static HighParams derive(uint32_t n, Rat alpha, Rat failure_target = Rat(0));
    void validate(uint32_t field_p) const;
};

// Smallest odd k >= ln(1/failure_target) / (2 * (1/2 - 4*alpha)^2), the
// Hoeffding repetition count for a majority of per-repetition successes
// with probability >= 1 - 4*alpha each.
uint32_t choose_repetitions(uint32_t n, const Rat& alpha, const Rat& failure_target);

template <class Mat>
struct HighResult {
    Mat output;
    uint64_t oracle_calls = 0;
    uint32_t repetitions = 0;
};

// Self-correction by additive masking, random cyclic shifts, and per-entry
// plurality voting: each repetition draws uniform R, S and shifts pi, sigma,
// queries the oracle on the four masked/shifted combinations
//   (A+R)^{pi,0}(B+S)^{0,sigma}, R(B+S), (A+R)S, RS
// whose signed sum telescopes to (AB)^{pi,sigma}, and un-shifts the result.
// Exactly 4k oracle invocations.  Repetition r uses the derived stream
// mix_seed(base, r), so threading cannot change the output.
template <class Mat>
HighResult<Mat> self_correct_high(const Mat& a, const Mat& b, const OracleModel& model,
                                  const HighParams& params, Rng& rng);

}  // namespace mmc
