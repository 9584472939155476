#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmcorrect/mat_f2.hpp"
#include "mmcorrect/mat_fp.hpp"
#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

enum class OracleKind {
    Exact,                 // always returns A*B
    TwoSidedFlip,          // each entry replaced by a different field element w.p. alpha
    OneSidedMask,          // GF(2): 1-entries kept w.p. rho, 0-entries always 0
    CoordinateRestricted,  // OneSidedMask, then zero outside a fixed coordinate set
    InputStructured,       // OneSidedMask when A satisfies linear constraints, else 0
};

// A deterministic stand-in for an average-case multiplier.  All noise is a
// keyed hash of (digest(A,B), i, j, seed), so for a fixed seed the model is
// a pure function of its inputs yet looks freshly random across distinct
// input pairs.
class OracleModel {
public:
    static OracleModel exact(FieldSpec field, uint64_t seed);
    static OracleModel two_sided_flip(FieldSpec field, Rat alpha_flip, uint64_t seed);
    static OracleModel one_sided_mask(Rat rho, uint64_t seed);  // GF(2) only
    static OracleModel coordinate_restricted(MatF2 good_set, Rat rho, uint64_t seed);
    static OracleModel input_structured(std::vector<MatF2> constraints, Rat rho,
                                        uint64_t seed);

    OracleKind kind() const { return kind_; }
    const FieldSpec& field() const { return field_; }
    uint64_t seed() const { return seed_; }
    const Rat& alpha_flip() const { return alpha_flip_; }
    const Rat& rho() const { return rho_; }
    const MatF2& good_set() const { return *good_set_; }
    const std::vector<MatF2>& constraints() const { return constraints_; }

    bool one_sided() const {
        return kind_ == OracleKind::OneSidedMask || kind_ == OracleKind::CoordinateRestricted ||
               kind_ == OracleKind::InputStructured;
    }

private:
    OracleModel(OracleKind kind, FieldSpec field, uint64_t seed);

    OracleKind kind_;
    FieldSpec field_;
    uint64_t seed_;
    Rat alpha_flip_{0};
    Rat rho_{1};
    std::optional<MatF2> good_set_;
    std::vector<MatF2> constraints_;

    // floor(prob * 2^64) with an "always" flag for prob == 1
    struct Threshold {
        uint64_t t = 0;
        bool always = false;
        bool hit(uint64_t h) const { return always || h < t; }
    };
    Threshold flip_thr_, keep_thr_;
    static Threshold make_threshold(const Rat& prob);

    friend MatF2 invoke(const OracleModel&, const MatF2&, const MatF2&);
    friend MatFp invoke(const OracleModel&, const MatFp&, const MatFp&);
};

// 128-bit input digest used to key the noise.
struct Digest128 {
    uint64_t a, b;
};
Digest128 digest(const MatF2& x, const MatF2& y);
Digest128 digest(const MatFp& x, const MatFp& y);

MatF2 invoke(const OracleModel& model, const MatF2& a, const MatF2& b);
MatFp invoke(const OracleModel& model, const MatFp& a, const MatFp& b);

struct AgreementEstimate {
    Rat estimate;       // equal entries / total entries, exact
    double half_width;  // binomial-style 95% interval
    uint64_t trials;
};

// Mean agreement of invoke(A,B) with A*B over uniform inputs.
AgreementEstimate estimate_average_agreement(const OracleModel& model, uint32_t n,
                                             uint64_t trials, Rng& rng);

}  // namespace mmc
