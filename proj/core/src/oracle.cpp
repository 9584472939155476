#include "mmcorrect/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mmc {

namespace {

constexpr uint64_t kDigestSeedA = 0x243F6A8885A308D3ULL;
constexpr uint64_t kDigestSeedB = 0x13198A2E03707344ULL;

void absorb(Digest128& d, uint64_t w) {
    d.a = splitmix64(d.a ^ w);
    d.b = splitmix64(d.b ^ (w * 0xC2B2AE3D27D4EB4FULL + 0x9E3779B97F4A7C15ULL));
}

uint64_t entry_hash(const Digest128& d, uint32_t i, uint32_t j, uint64_t seed,
                    uint64_t salt) {
    uint64_t h = d.a;
    h = splitmix64(h ^ (uint64_t(i) * 0x9E3779B97F4A7C15ULL));
    h = splitmix64(h ^ (uint64_t(j) * 0xC2B2AE3D27D4EB4FULL));
    h = splitmix64(h ^ d.b);
    return splitmix64(h ^ seed ^ salt);
}

constexpr uint64_t kSaltDecision = 0x5851F42D4C957F2DULL;
constexpr uint64_t kSaltValue = 0x14057B7EF767814FULL;

void check_square_pair(uint32_t ar, uint32_t ac, uint32_t br, uint32_t bc) {
    if (ar != ac || br != bc || ar != br) {
        throw std::invalid_argument("invoke: oracle inputs must be square n x n matrices");
    }
}

}  // namespace

OracleModel::OracleModel(OracleKind kind, FieldSpec field, uint64_t seed)
    : kind_(kind), field_(field), seed_(seed) {}

OracleModel::Threshold OracleModel::make_threshold(const Rat& prob) {
    if (prob < 0 || prob > 1) {
        throw std::invalid_argument("oracle probability must lie in [0, 1]");
    }
    Threshold thr;
    if (prob == 1) {
        thr.always = true;
        return thr;
    }
    mpz_class scaled = prob.get_num() << 64;
    scaled /= prob.get_den();
    thr.t = scaled.get_ui();  // exact: scaled < 2^64 since prob < 1
    return thr;
}

OracleModel OracleModel::exact(FieldSpec field, uint64_t seed) {
    return OracleModel(OracleKind::Exact, field, seed);
}

OracleModel OracleModel::two_sided_flip(FieldSpec field, Rat alpha_flip, uint64_t seed) {
    OracleModel m(OracleKind::TwoSidedFlip, field, seed);
    m.alpha_flip_ = std::move(alpha_flip);
    m.flip_thr_ = make_threshold(m.alpha_flip_);
    return m;
}

OracleModel OracleModel::one_sided_mask(Rat rho, uint64_t seed) {
    OracleModel m(OracleKind::OneSidedMask, f2(), seed);
    m.rho_ = std::move(rho);
    m.keep_thr_ = make_threshold(m.rho_);
    return m;
}

OracleModel OracleModel::coordinate_restricted(MatF2 good_set, Rat rho, uint64_t seed) {
    if (good_set.rows() != good_set.cols()) {
        throw std::invalid_argument("coordinate_restricted: good set mask must be square");
    }
    OracleModel m(OracleKind::CoordinateRestricted, f2(), seed);
    m.rho_ = std::move(rho);
    m.keep_thr_ = make_threshold(m.rho_);
    m.good_set_ = std::move(good_set);
    return m;
}

OracleModel OracleModel::input_structured(std::vector<MatF2> constraints, Rat rho,
                                          uint64_t seed) {
    OracleModel m(OracleKind::InputStructured, f2(), seed);
    m.rho_ = std::move(rho);
    m.keep_thr_ = make_threshold(m.rho_);
    m.constraints_ = std::move(constraints);
    return m;
}

Digest128 digest(const MatF2& x, const MatF2& y) {
    Digest128 d{kDigestSeedA, kDigestSeedB};
    absorb(d, 2);
    absorb(d, (uint64_t(x.rows()) << 32) | x.cols());
    for (uint64_t w : x.words()) absorb(d, w);
    absorb(d, 0x1D872B41B9E0E2A6ULL);  // delimiter
    for (uint64_t w : y.words()) absorb(d, w);
    return d;
}

Digest128 digest(const MatFp& x, const MatFp& y) {
    Digest128 d{kDigestSeedA, kDigestSeedB};
    absorb(d, x.field().p);
    absorb(d, (uint64_t(x.rows()) << 32) | x.cols());
    for (uint32_t v : x.values()) absorb(d, v);
    absorb(d, 0x1D872B41B9E0E2A6ULL);
    for (uint32_t v : y.values()) absorb(d, v);
    return d;
}

MatF2 invoke(const OracleModel& model, const MatF2& a, const MatF2& b) {
    if (model.field().p != 2) throw std::invalid_argument("invoke: model field is not GF(2)");
    check_square_pair(a.rows(), a.cols(), b.rows(), b.cols());
    const uint32_t n = a.rows();

    MatF2 out = mat_mul(a, b);
    if (model.kind() == OracleKind::Exact) return out;

    if (model.kind() == OracleKind::InputStructured) {
        for (const MatF2& c : model.constraints()) {
            if (c.rows() != n || c.cols() != n) {
                throw std::invalid_argument("invoke: constraint shape mismatch");
            }
            if (dot_f2(c, a) != 0) return MatF2(n, n);  // constraint violated
        }
    }
    if (model.kind() == OracleKind::CoordinateRestricted &&
        model.good_set().rows() != n) {
        throw std::invalid_argument("invoke: good set mask shape mismatch");
    }

    const Digest128 d = digest(a, b);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            const uint64_t h = entry_hash(d, i, j, model.seed(), kSaltDecision);
            if (model.kind() == OracleKind::TwoSidedFlip) {
                if (model.flip_thr_.hit(h)) out.set(i, j, out.get(i, j) ^ 1);
                continue;
            }
            // one-sided kinds: only 1-entries may survive
            if (!out.get(i, j)) continue;
            bool keep = model.keep_thr_.hit(h);
            if (keep && model.kind() == OracleKind::CoordinateRestricted) {
                keep = model.good_set().get(i, j) != 0;
            }
            if (!keep) out.set(i, j, 0);
        }
    }
    return out;
}

MatFp invoke(const OracleModel& model, const MatFp& a, const MatFp& b) {
    if (!(model.field() == a.field()) || !(a.field() == b.field())) {
        throw std::invalid_argument("invoke: field mismatch");
    }
    check_square_pair(a.rows(), a.cols(), b.rows(), b.cols());
    if (model.one_sided()) {
        throw std::invalid_argument("invoke: one-sided models are GF(2) only");
    }
    const uint32_t n = a.rows();
    MatFp out = mat_mul(a, b);
    if (model.kind() == OracleKind::Exact) return out;

    const uint32_t p = model.field().p;
    const Digest128 d = digest(a, b);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            const uint64_t h = entry_hash(d, i, j, model.seed(), kSaltDecision);
            if (!model.flip_thr_.hit(h)) continue;
            // replace by a uniformly chosen *different* residue
            const uint64_t v = entry_hash(d, i, j, model.seed(), kSaltValue);
            const uint32_t offset = 1 + uint32_t(v % (p - 1));
            out.set(i, j, (out.get(i, j) + offset) % p);
        }
    }
    return out;
}

AgreementEstimate estimate_average_agreement(const OracleModel& model, uint32_t n,
                                             uint64_t trials, Rng& rng) {
    if (trials == 0) throw std::invalid_argument("estimate_average_agreement: trials >= 1");
    unsigned long equal = 0;
    const unsigned long per_trial = (unsigned long)n * n;
    if (model.field().p == 2) {
        for (uint64_t t = 0; t < trials; ++t) {
            MatF2 a = MatF2::random(n, n, rng);
            MatF2 b = MatF2::random(n, n, rng);
            Rat agr = agreement(invoke(model, a, b), mat_mul(a, b));
            equal += mpz_class(agr.get_num() * per_trial / agr.get_den()).get_ui();
        }
    } else {
        for (uint64_t t = 0; t < trials; ++t) {
            MatFp a = MatFp::random(model.field(), n, n, rng);
            MatFp b = MatFp::random(model.field(), n, n, rng);
            Rat agr = agreement(invoke(model, a, b), mat_mul(a, b));
            equal += mpz_class(agr.get_num() * per_trial / agr.get_den()).get_ui();
        }
    }
    const unsigned long total = per_trial * trials;
    AgreementEstimate est;
    est.estimate = make_rat(long(equal), total);
    est.trials = trials;
    const double p_hat = est.estimate.get_d();
    est.half_width = 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / double(total));
    return est;
}

}  // namespace mmc
