#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmcorrect/oracle.hpp"
#include "mmcorrect/rational.hpp"

namespace mmc {

struct Coord {
    uint32_t i, j;
    bool operator==(const Coord&) const = default;
};

// Exact per-coordinate statistics of an oracle over all input pairs:
//  p[i][j]  = Pr_{A,B}[invoke(A,B)_{i,j} = 1]
//  delta    = mean of p
//  good     = coordinates with p > delta/2 (strict)
//  x_density[i][j] = Pr_A[ Pr_B[invoke(A,B)_{i,j}=1] >= delta/4 ]
// All values are exact rationals from full enumeration.
struct CoordinateStats {
    uint32_t n = 0;
    std::vector<Rat> p;          // n*n, row-major
    Rat delta{0};
    std::vector<Coord> good;
    std::vector<Rat> x_density;  // n*n, row-major

    struct YSample {
        Coord at;
        uint64_t a_index;  // enumeration index of the witness matrix A in X_{i,j}
        Rat density;       // Pr_B[invoke(A,B)_{i,j} = 1], exact
    };
    std::vector<YSample> y_samples;

    const Rat& p_at(Coord c) const { return p[size_t(c.i) * n + c.j]; }
    const Rat& x_at(Coord c) const { return x_density[size_t(c.i) * n + c.j]; }
    bool is_good(Coord c) const;
};

// Full enumeration of all |F|^(2n^2) input pairs; GF(2) and n <= 3 only.
// For every good coordinate up to `y_witnesses` members of X_{i,j} are
// recorded with the exact density of their Y set.
CoordinateStats exact_coordinate_stats(const OracleModel& model, uint32_t n,
                                       uint32_t y_witnesses = 2);

struct GoodCoordinateEstimate {
    uint32_t n = 0;
    uint64_t samples = 0;
    std::vector<uint64_t> ones;  // n*n per-coordinate counts of output 1
    Rat threshold{0};
    std::vector<Coord> coords;   // estimate strictly above threshold

    Rat estimate_at(Coord c) const {
        return make_rat(long(ones[size_t(c.i) * n + c.j]), (unsigned long)samples);
    }
};

// Sampled surrogate for the good-coordinate set at sizes where the
// exhaustive mode is unavailable.
GoodCoordinateEstimate estimate_good_coordinates(const OracleModel& model, uint32_t n,
                                                 uint64_t samples, const Rat& threshold,
                                                 Rng& rng);

// Decodes the enumeration index used by the exhaustive mode: bits of `idx`
// fill the matrix row-major, LSB first.
MatF2 mat_from_index(uint32_t n, uint64_t idx);

}  // namespace mmc
