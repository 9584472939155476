#include "mmcorrect/coordinate_stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmc {

bool CoordinateStats::is_good(Coord c) const {
    return std::find(good.begin(), good.end(), c) != good.end();
}

MatF2 mat_from_index(uint32_t n, uint64_t idx) {
    MatF2 m(n, n);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            if ((idx >> (i * n + j)) & 1) m.set(i, j, 1);
        }
    }
    return m;
}

CoordinateStats exact_coordinate_stats(const OracleModel& model, uint32_t n,
                                       uint32_t y_witnesses) {
    if (model.field().p != 2) {
        throw std::invalid_argument("exact_coordinate_stats: GF(2) models only");
    }
    if (n == 0 || n > 3) {
        throw std::invalid_argument(
            "exact_coordinate_stats: exhaustive mode is limited to n <= 3");
    }
    const uint32_t cells = n * n;
    const uint64_t count = uint64_t(1) << cells;  // matrices over GF(2)

    std::vector<MatF2> mats;
    mats.reserve(count);
    for (uint64_t idx = 0; idx < count; ++idx) mats.push_back(mat_from_index(n, idx));

    // per_a[a*cells + c]: number of B with output 1 at cell c for A = mats[a]
    std::vector<uint64_t> per_a(count * cells, 0);
    for (uint64_t ai = 0; ai < count; ++ai) {
        for (uint64_t bi = 0; bi < count; ++bi) {
            const MatF2 out = invoke(model, mats[ai], mats[bi]);
            for (uint32_t c = 0; c < cells; ++c) {
                per_a[ai * cells + c] += uint64_t(out.get(c / n, c % n));
            }
        }
    }

    CoordinateStats st;
    st.n = n;
    st.p.resize(cells);
    st.x_density.resize(cells);

    const mpz_class pairs = mpz_class(1) << (2 * cells);
    mpz_class ones_total = 0;
    std::vector<mpz_class> ones(cells, 0);
    for (uint32_t c = 0; c < cells; ++c) {
        for (uint64_t ai = 0; ai < count; ++ai) ones[c] += per_a[ai * cells + c];
        ones_total += ones[c];
        st.p[c] = make_rat(ones[c], pairs);
    }
    st.delta = make_rat(ones_total, pairs * cells);

    const Rat half_delta = st.delta / 2;
    const Rat quarter_delta = st.delta / 4;
    for (uint32_t c = 0; c < cells; ++c) {
        if (st.p[c] > half_delta) st.good.push_back({c / n, c % n});
    }

    // X_{i,j} membership: Pr_B[output 1] >= delta/4
    for (uint32_t c = 0; c < cells; ++c) {
        uint64_t members = 0;
        for (uint64_t ai = 0; ai < count; ++ai) {
            const Rat q = make_rat(long(per_a[ai * cells + c]), (unsigned long)count);
            if (q >= quarter_delta) ++members;
        }
        st.x_density[c] = make_rat(long(members), (unsigned long)count);
    }

    for (const Coord& g : st.good) {
        const uint32_t c = g.i * n + g.j;
        uint32_t taken = 0;
        for (uint64_t ai = 0; ai < count && taken < y_witnesses; ++ai) {
            const Rat q = make_rat(long(per_a[ai * cells + c]), (unsigned long)count);
            if (q >= quarter_delta) {
                st.y_samples.push_back({g, ai, q});
                ++taken;
            }
        }
    }
    return st;
}

GoodCoordinateEstimate estimate_good_coordinates(const OracleModel& model, uint32_t n,
                                                 uint64_t samples, const Rat& threshold,
                                                 Rng& rng) {
    if (samples == 0) throw std::invalid_argument("estimate_good_coordinates: samples >= 1");
    if (model.field().p != 2) {
        throw std::invalid_argument("estimate_good_coordinates: GF(2) models only");
    }
    GoodCoordinateEstimate est;
    est.n = n;
    est.samples = samples;
    est.threshold = threshold;
    est.ones.assign(size_t(n) * n, 0);
    for (uint64_t s = 0; s < samples; ++s) {
        MatF2 a = MatF2::random(n, n, rng);
        MatF2 b = MatF2::random(n, n, rng);
        const MatF2 out = invoke(model, a, b);
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = 0; j < n; ++j) est.ones[size_t(i) * n + j] += out.get(i, j);
        }
    }
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            if (est.estimate_at({i, j}) > threshold) est.coords.push_back({i, j});
        }
    }
    return est;
}

}  // namespace mmc
