#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmcorrect/rational.hpp"
#include "mmcorrect/rng.hpp"

namespace mmc {

// Subset of F_2^n represented by a 2^n-bit membership table; n <= 22.
class SubsetF2n {
public:
    explicit SubsetF2n(uint32_t n);

    static SubsetF2n full(uint32_t n);
    static SubsetF2n of_points(uint32_t n, const std::vector<uint32_t>& xs);
    // each point kept independently with probability num/den
    static SubsetF2n random(uint32_t n, const Rat& density, Rng& rng);
    // affine subspace {x : <x, r_i> = b_i}; constraints must be independent
    static SubsetF2n affine_subspace(uint32_t n,
                                     const std::vector<std::pair<uint32_t, int>>& constraints);

    uint32_t n() const { return n_; }
    uint64_t domain() const { return uint64_t(1) << n_; }
    uint64_t size() const { return size_; }
    Rat density() const { return make_rat(long(size_), (unsigned long)domain()); }

    bool contains(uint32_t x) const { return (w_[x >> 6] >> (x & 63)) & 1; }
    void insert(uint32_t x);
    void erase(uint32_t x);

    bool operator==(const SubsetF2n& o) const = default;

private:
    uint32_t n_;
    uint64_t size_;
    std::vector<uint64_t> w_;
};

// Unnormalized integer Walsh spectrum: S(r) = sum_x 1_A(x) * (-1)^<x,r>,
// i.e. 2^n times the normalized Fourier coefficient.  |S(r)| <= |A| and
// S(0) = |A|.
struct IntSpectrum {
    uint32_t n = 0;
    std::vector<int64_t> s;  // 2^n entries
};

// Exact fast transform in O(n * 2^n) integer operations.
IntSpectrum wht(const SubsetF2n& a);

struct ParsevalReport {
    bool ok = false;
    mpz_class sum_squares;  // sum_r S(r)^2
    mpz_class expected;     // |A| * 2^n
};

// Integer Parseval identity: sum_r S(r)^2 == |A| * 2^n.
ParsevalReport parseval_check(const SubsetF2n& a);

// {r : |S(r)| >= gamma * 2^n}, exact cross-multiplied comparison.
std::vector<uint32_t> spectrum_above(const SubsetF2n& a, const Rat& gamma);

// Dimension of the GF(2)-span of spectrum_above(a, gamma * density(a)).
uint32_t chang_dimension(const SubsetF2n& a, const Rat& gamma);

// dimension of span of a set of n-bit vectors
uint32_t span_dimension(const std::vector<uint32_t>& vecs);

// Sign assignment over R = {r != 0 : |S(r)| > (alpha/2) * 2^n}: one bit s_r
// per r, linear over the span structure of R, with
// sum_{r in R} S(r)^t * (-1)^{s_r} >= 0.  For even t the all-zero
// assignment works; for odd t the basis signs are searched (exhaustively up
// to 20 basis vectors, best-of-random beyond).
struct SignAssignment {
    std::vector<uint32_t> r_elems;      // all of R, ascending
    std::vector<uint8_t> signs;         // s_r per element of r_elems
    std::vector<uint32_t> basis;        // maximal independent subset of R
    std::vector<uint8_t> basis_signs;
    mpz_class weighted_sum;             // sum of S(r)^t * (-1)^{s_r} over R
};
SignAssignment sign_assignment(const SubsetF2n& a, uint32_t t);

// Affine subspace V = {v : <v,r> = s_r for all r in R}, dim = n - |basis|.
struct AffineSubspaceV {
    uint32_t n = 0;
    std::vector<uint32_t> basis_r;                         // independent constraints
    std::vector<uint8_t> basis_s;
    std::vector<std::pair<uint32_t, uint8_t>> constraints; // all (r, s_r), r in R
    uint32_t offset = 0;                                   // one member of V
    std::vector<uint32_t> space_basis;                     // dim generators

    uint32_t dim() const { return n - uint32_t(basis_r.size()); }
    uint64_t size() const { return uint64_t(1) << dim(); }
    bool contains(uint32_t v) const;
    // v = offset ^ xor of space_basis vectors selected by the bits of idx
    uint32_t member(uint64_t idx) const;
};

AffineSubspaceV bogolyubov_subspace(const SubsetF2n& a, uint32_t t);

// N_t(v) = #{(a_1..a_t) in A^t : a_1 + ... + a_t = v}, computed through the
// spectrum as 2^-n * sum_r S(r)^t * (-1)^<r,v> (exact integer division).
mpz_class convolution_count(const SubsetF2n& a, uint32_t t, uint32_t v);
std::vector<mpz_class> convolution_table(const SubsetF2n& a, uint32_t t);

struct BogolyubovPoint {
    uint32_t v;
    Rat probability;  // N_t(v) / 2^{n(t-1)}
    bool main_ok;
    bool particular_ok;  // meaningful when particular bound applies
};

struct BogolyubovReport {
    uint32_t n = 0, t = 0;
    Rat alpha{0};
    AffineSubspaceV subspace;
    Rat main_bound{0};                   // alpha^t (1 + 2^{2-t}) - alpha^{t-1} 2^{2-t}
    std::optional<Rat> particular_bound; // (alpha/2)^t when t > log2(1/alpha) + 2
    bool exhaustive = true;
    uint64_t checked_points = 0;
    uint64_t failures = 0;
    Rat min_probability{0};
    std::optional<BogolyubovPoint> first_failure;
    bool pass = false;
};

// Verifies the sumset lower bound at every point of the constructed
// subspace (exhaustively up to 2^20 points, sampled beyond).
BogolyubovReport bogolyubov_verify(const SubsetF2n& a, uint32_t t);

struct TailBoundReport {
    mpz_class tail;  // sum over r outside R u {0} of |S(r)|^t
    Rat bound;       // (alpha/2)^{t-2} (alpha - alpha^2) * 2^{nt}
    mpz_class offspec_energy;     // sum_{r != 0} S(r)^2
    mpz_class expected_energy;    // |A| 2^n - |A|^2
    bool ok = false;
};

// Exact check that the spectral tail outside R is small:
// sum_{r not in R, r != 0} |S(r)|^t <= (alpha/2)^{t-2} (alpha - alpha^2) 2^{nt}.
TailBoundReport tail_bound_check(const SubsetF2n& a, uint32_t t);

// Text format:  "f2set v1 n=<n>" header, then the 2^n membership bits as
// hex (most significant bit first within each nibble), whitespace ignored.
std::string serialize_subset(const SubsetF2n& a);
SubsetF2n parse_subset(std::istream& in, const std::string& name = "<stream>");
SubsetF2n parse_subset_file(const std::string& path);

}  // namespace mmc
