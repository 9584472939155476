#include "mmcorrect/fourier.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmcorrect/errors.hpp"

namespace mmc {

namespace {

constexpr uint32_t kMaxN = 22;
constexpr uint32_t kEnumerationCap = 20;       // exhaustive V scan up to 2^20 points
constexpr uint64_t kSampledPoints = 1u << 16;  // beyond that, sample this many
constexpr uint32_t kExhaustiveSignCap = 20;    // exhaustive sign search bound
constexpr uint64_t kRandomSignTries = 1u << 14;

void check_n(uint32_t n) {
    if (n == 0 || n > kMaxN) {
        throw std::invalid_argument("SubsetF2n: n must lie in [1, 22]");
    }
}

int parity32(uint32_t x) { return std::popcount(x) & 1; }

// |S(r)| >= gamma * 2^n  (or strictly >) as an integer cutoff on |S(r)|
int64_t spectrum_cutoff(uint32_t n, const Rat& gamma, bool strict) {
    mpz_class scaled = gamma.get_num() << n;  // gamma * 2^n = scaled / den
    mpz_class den = gamma.get_den();
    mpz_class cut;
    if (strict) {
        // smallest integer > gamma*2^n
        mpz_fdiv_q(cut.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        cut += 1;
    } else {
        // smallest integer >= gamma*2^n
        mpz_cdiv_q(cut.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    }
    if (!cut.fits_slong_p()) return INT64_MAX;
    return cut.get_si();
}

mpz_class int_pow(int64_t base, uint32_t e) {
    mpz_class b(long(base)), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// GF(2) echelon basis that remembers how each inserted vector decomposes
// over the independent ones.
class EchelonF2 {
public:
    // true if v is independent of the current basis; v then becomes raw
    // index raw_count()-1
    bool insert(uint32_t v) {
        uint64_t combo = 0;
        reduce(v, combo);
        if (v == 0) return false;
        combo |= uint64_t(1) << raw_.size();
        raw_.push_back(v);
        rows_.push_back({v, combo});
        return true;
    }

    // combination mask over raw indices, or nullopt if v is outside the span
    std::optional<uint64_t> express(uint32_t v) const {
        uint64_t combo = 0;
        reduce(v, combo);
        if (v != 0) return std::nullopt;
        return combo;
    }

    size_t raw_count() const { return raw_.size(); }

private:
    void reduce(uint32_t& v, uint64_t& combo) const {
        bool progress = true;
        while (v && progress) {
            progress = false;
            for (const auto& row : rows_) {
                const uint32_t pivot = uint32_t(1) << (31 - std::countl_zero(row.vec));
                if (v & pivot) {
                    v ^= row.vec;
                    combo ^= row.mask;
                    progress = true;
                }
            }
        }
    }

    struct Row {
        uint32_t vec;
        uint64_t mask;
    };
    std::vector<Row> rows_;
    std::vector<uint32_t> raw_;
};

// R = {r != 0 : |S(r)| > (alpha/2) 2^n}, the strict spectral support used
// by the subspace construction.
std::vector<uint32_t> strict_half_density_spectrum(const SubsetF2n& a,
                                                   const IntSpectrum& s) {
    const int64_t cut = spectrum_cutoff(a.n(), a.density() / 2, /*strict=*/true);
    std::vector<uint32_t> r;
    for (uint64_t x = 1; x < a.domain(); ++x) {
        const int64_t v = s.s[x];
        if ((v < 0 ? -v : v) >= cut) r.push_back(uint32_t(x));
    }
    return r;
}

}  // namespace

SubsetF2n::SubsetF2n(uint32_t n) : n_(n), size_(0) {
    check_n(n);
    w_.assign(size_t(domain() + 63) / 64, 0);
}

SubsetF2n SubsetF2n::full(uint32_t n) {
    SubsetF2n s(n);
    for (auto& w : s.w_) w = ~uint64_t(0);
    const uint32_t rem = s.domain() & 63;
    if (rem) s.w_.back() &= (uint64_t(1) << rem) - 1;
    s.size_ = s.domain();
    return s;
}

SubsetF2n SubsetF2n::of_points(uint32_t n, const std::vector<uint32_t>& xs) {
    SubsetF2n s(n);
    for (uint32_t x : xs) s.insert(x);
    return s;
}

SubsetF2n SubsetF2n::random(uint32_t n, const Rat& density, Rng& rng) {
    if (density < 0 || density > 1) {
        throw std::invalid_argument("SubsetF2n::random: density in [0, 1]");
    }
    SubsetF2n s(n);
    if (density == 1) return full(n);
    mpz_class scaled = density.get_num() << 64;
    scaled /= density.get_den();
    const uint64_t threshold = scaled.get_ui();
    for (uint64_t x = 0; x < s.domain(); ++x) {
        if (rng.next() < threshold) s.insert(uint32_t(x));
    }
    return s;
}

SubsetF2n SubsetF2n::affine_subspace(
    uint32_t n, const std::vector<std::pair<uint32_t, int>>& constraints) {
    check_n(n);
    std::vector<uint32_t> vecs;
    for (auto& [r, b] : constraints) {
        (void)b;
        vecs.push_back(r);
    }
    if (span_dimension(vecs) != constraints.size()) {
        throw std::invalid_argument("affine_subspace: constraints must be independent");
    }
    SubsetF2n s(n);
    for (uint64_t x = 0; x < s.domain(); ++x) {
        bool in = true;
        for (auto& [r, b] : constraints) {
            if (parity32(uint32_t(x) & r) != (b & 1)) {
                in = false;
                break;
            }
        }
        if (in) s.insert(uint32_t(x));
    }
    return s;
}

void SubsetF2n::insert(uint32_t x) {
    if (x >= domain()) throw std::invalid_argument("SubsetF2n::insert: point out of range");
    uint64_t& w = w_[x >> 6];
    const uint64_t m = uint64_t(1) << (x & 63);
    if (!(w & m)) {
        w |= m;
        ++size_;
    }
}

void SubsetF2n::erase(uint32_t x) {
    if (x >= domain()) throw std::invalid_argument("SubsetF2n::erase: point out of range");
    uint64_t& w = w_[x >> 6];
    const uint64_t m = uint64_t(1) << (x & 63);
    if (w & m) {
        w &= ~m;
        --size_;
    }
}

IntSpectrum wht(const SubsetF2n& a) {
    IntSpectrum sp;
    sp.n = a.n();
    const uint64_t dom = a.domain();
    sp.s.resize(dom);
    for (uint64_t x = 0; x < dom; ++x) sp.s[x] = a.contains(uint32_t(x)) ? 1 : 0;
    for (uint64_t len = 1; len < dom; len <<= 1) {
        for (uint64_t blk = 0; blk < dom; blk += len << 1) {
            for (uint64_t off = 0; off < len; ++off) {
                const int64_t u = sp.s[blk + off];
                const int64_t v = sp.s[blk + off + len];
                sp.s[blk + off] = u + v;
                sp.s[blk + off + len] = u - v;
            }
        }
    }
    return sp;
}

ParsevalReport parseval_check(const SubsetF2n& a) {
    const IntSpectrum sp = wht(a);
    unsigned __int128 sum = 0;
    for (int64_t v : sp.s) sum += static_cast<unsigned __int128>(v * v);
    ParsevalReport rep;
    rep.sum_squares = mpz_class(uint64_t(sum >> 64));
    rep.sum_squares <<= 64;
    rep.sum_squares += mpz_class(uint64_t(sum));
    rep.expected = mpz_class((unsigned long)a.size()) << a.n();
    rep.ok = rep.sum_squares == rep.expected;
    return rep;
}

std::vector<uint32_t> spectrum_above(const SubsetF2n& a, const Rat& gamma) {
    if (gamma <= 0) throw std::invalid_argument("spectrum_above: gamma must be positive");
    const IntSpectrum sp = wht(a);
    const int64_t cut = spectrum_cutoff(a.n(), gamma, /*strict=*/false);
    std::vector<uint32_t> out;
    for (uint64_t x = 0; x < a.domain(); ++x) {
        const int64_t v = sp.s[x];
        if ((v < 0 ? -v : v) >= cut) out.push_back(uint32_t(x));
    }
    return out;
}

uint32_t span_dimension(const std::vector<uint32_t>& vecs) {
    EchelonF2 e;
    for (uint32_t v : vecs) e.insert(v);
    return uint32_t(e.raw_count());
}

uint32_t chang_dimension(const SubsetF2n& a, const Rat& gamma) {
    if (gamma <= 0 || gamma > 1) {
        throw std::invalid_argument("chang_dimension: gamma in (0, 1]");
    }
    if (a.size() == 0) return 0;
    return span_dimension(spectrum_above(a, gamma * a.density()));
}

SignAssignment sign_assignment(const SubsetF2n& a, uint32_t t) {
    if (t < 3) throw std::invalid_argument("sign_assignment: t >= 3");
    const IntSpectrum sp = wht(a);
    SignAssignment out;
    out.r_elems = strict_half_density_spectrum(a, sp);

    EchelonF2 basis;
    std::vector<uint64_t> combos(out.r_elems.size());
    std::vector<uint32_t> basis_vecs;
    for (size_t idx = 0; idx < out.r_elems.size(); ++idx) {
        const uint32_t r = out.r_elems[idx];
        if (basis.insert(r)) {
            basis_vecs.push_back(r);
            combos[idx] = uint64_t(1) << (basis.raw_count() - 1);
        } else {
            combos[idx] = *basis.express(r);
        }
    }
    out.basis = basis_vecs;

    std::vector<mpz_class> powers(out.r_elems.size());
    for (size_t idx = 0; idx < out.r_elems.size(); ++idx) {
        powers[idx] = int_pow(sp.s[out.r_elems[idx]], t);
    }

    auto weighted_sum = [&](uint64_t assign) {
        mpz_class sum = 0;
        for (size_t idx = 0; idx < out.r_elems.size(); ++idx) {
            if (std::popcount(combos[idx] & assign) & 1) {
                sum -= powers[idx];
            } else {
                sum += powers[idx];
            }
        }
        return sum;
    };

    uint64_t chosen = 0;
    mpz_class sum;
    if (t % 2 == 0) {
        // even powers are nonnegative; all-zero signs always work
        sum = weighted_sum(0);
    } else {
        const size_t m = basis_vecs.size();
        bool found = false;
        if (m <= kExhaustiveSignCap) {
            for (uint64_t assign = 0; assign < (uint64_t(1) << m); ++assign) {
                sum = weighted_sum(assign);
                if (sum >= 0) {
                    chosen = assign;
                    found = true;
                    break;
                }
            }
            if (!found) {
                // impossible: the signed sums over all assignments average to 0
                throw InvariantViolation("sign_assignment: no assignment found");
            }
        } else {
            Rng rng(0x5167A55167A5ULL);  // fixed stream, results stay reproducible
            mpz_class best_sum;
            uint64_t best = 0;
            for (uint64_t tr = 0; tr < kRandomSignTries; ++tr) {
                const uint64_t assign = rng.next() & ((uint64_t(1) << m) - 1);
                sum = weighted_sum(assign);
                if (tr == 0 || sum > best_sum) {
                    best_sum = sum;
                    best = assign;
                }
                if (sum >= 0) break;
            }
            sum = best_sum;
            chosen = best;
            if (sum < 0) {
                throw InvariantViolation(
                    "sign_assignment: random search failed to find a nonnegative sum");
            }
        }
    }

    out.weighted_sum = sum;
    out.basis_signs.resize(basis_vecs.size());
    for (size_t bi = 0; bi < basis_vecs.size(); ++bi) {
        out.basis_signs[bi] = uint8_t((chosen >> bi) & 1);
    }
    out.signs.resize(out.r_elems.size());
    for (size_t idx = 0; idx < out.r_elems.size(); ++idx) {
        out.signs[idx] = uint8_t(std::popcount(combos[idx] & chosen) & 1);
    }
    return out;
}

bool AffineSubspaceV::contains(uint32_t v) const {
    for (const auto& [r, s] : constraints) {
        if (parity32(v & r) != int(s)) return false;
    }
    return true;
}

uint32_t AffineSubspaceV::member(uint64_t idx) const {
    uint32_t v = offset;
    for (size_t b = 0; b < space_basis.size(); ++b) {
        if ((idx >> b) & 1) v ^= space_basis[b];
    }
    return v;
}

AffineSubspaceV bogolyubov_subspace(const SubsetF2n& a, uint32_t t) {
    if (a.size() == 0) throw std::invalid_argument("bogolyubov_subspace: empty set");
    const SignAssignment sa = sign_assignment(a, t);

    AffineSubspaceV v;
    v.n = a.n();
    v.basis_r = sa.basis;
    v.basis_s = sa.basis_signs;
    for (size_t i = 0; i < sa.r_elems.size(); ++i) {
        v.constraints.push_back({sa.r_elems[i], sa.signs[i]});
    }

    // Solve <x, basis_r[i]> = basis_s[i]: bring the constraint matrix to
    // reduced row echelon form, pivot variables take the transformed rhs,
    // free variables span the solution space.
    const uint32_t n = a.n();
    std::vector<uint32_t> rows = v.basis_r;
    std::vector<uint8_t> rhs = v.basis_s;
    const size_t kdim = rows.size();
    std::vector<int> pivot_of_row(kdim, -1);
    std::vector<bool> col_is_pivot(n, false);
    size_t rank_rows = 0;
    for (uint32_t col = n; col-- > 0 && rank_rows < kdim;) {
        const uint32_t bit = uint32_t(1) << col;
        size_t piv = rank_rows;
        while (piv < kdim && !(rows[piv] & bit)) ++piv;
        if (piv == kdim) continue;
        std::swap(rows[rank_rows], rows[piv]);
        std::swap(rhs[rank_rows], rhs[piv]);
        for (size_t r2 = 0; r2 < kdim; ++r2) {
            if (r2 != rank_rows && (rows[r2] & bit)) {
                rows[r2] ^= rows[rank_rows];
                rhs[r2] ^= rhs[rank_rows];
            }
        }
        pivot_of_row[rank_rows] = int(col);
        col_is_pivot[col] = true;
        ++rank_rows;
    }
    if (rank_rows != kdim) {
        throw InvariantViolation("bogolyubov_subspace: basis unexpectedly dependent");
    }

    uint32_t offset = 0;
    for (size_t r = 0; r < kdim; ++r) {
        if (rhs[r]) offset |= uint32_t(1) << pivot_of_row[r];
    }
    v.offset = offset;

    for (uint32_t col = 0; col < n; ++col) {
        if (col_is_pivot[col]) continue;
        uint32_t vec = uint32_t(1) << col;
        for (size_t r = 0; r < kdim; ++r) {
            if (rows[r] & (uint32_t(1) << col)) vec |= uint32_t(1) << pivot_of_row[r];
        }
        v.space_basis.push_back(vec);
    }
    return v;
}

std::vector<mpz_class> convolution_table(const SubsetF2n& a, uint32_t t) {
    if (a.n() > 16 || t > 8 || t == 0) {
        throw std::invalid_argument("convolution_table: need n <= 16 and 1 <= t <= 8");
    }
    const IntSpectrum sp = wht(a);
    const uint64_t dom = a.domain();
    std::vector<mpz_class> table(dom);
    for (uint64_t r = 0; r < dom; ++r) table[r] = int_pow(sp.s[r], t);
    for (uint64_t len = 1; len < dom; len <<= 1) {
        for (uint64_t blk = 0; blk < dom; blk += len << 1) {
            for (uint64_t off = 0; off < len; ++off) {
                mpz_class u = table[blk + off];
                mpz_class w = table[blk + off + len];
                table[blk + off] = u + w;
                table[blk + off + len] = u - w;
            }
        }
    }
    for (uint64_t x = 0; x < dom; ++x) {
        if (!mpz_divisible_2exp_p(table[x].get_mpz_t(), a.n())) {
            throw InvariantViolation("convolution_table: spectral sum not divisible by 2^n");
        }
        mpz_class q;
        mpz_fdiv_q_2exp(q.get_mpz_t(), table[x].get_mpz_t(), a.n());
        table[x] = q;
    }
    return table;
}

mpz_class convolution_count(const SubsetF2n& a, uint32_t t, uint32_t v) {
    if (a.n() > 16 || t > 8 || t == 0) {
        throw std::invalid_argument("convolution_count: need n <= 16 and 1 <= t <= 8");
    }
    if (v >= a.domain()) throw std::invalid_argument("convolution_count: v out of range");
    const IntSpectrum sp = wht(a);
    mpz_class sum = 0;
    for (uint64_t r = 0; r < a.domain(); ++r) {
        const mpz_class term = int_pow(sp.s[r], t);
        if (parity32(uint32_t(r) & v)) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    if (!mpz_divisible_2exp_p(sum.get_mpz_t(), a.n())) {
        throw InvariantViolation("convolution_count: spectral sum not divisible by 2^n");
    }
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), sum.get_mpz_t(), a.n());
    return q;
}

BogolyubovReport bogolyubov_verify(const SubsetF2n& a, uint32_t t) {
    if (t < 3) throw std::invalid_argument("bogolyubov_verify: t >= 3");
    BogolyubovReport rep;
    rep.n = a.n();
    rep.t = t;
    rep.alpha = a.density();
    rep.subspace = bogolyubov_subspace(a, t);

    const Rat two_pow = pow2_rat(2 - long(t));  // 1 / 2^{t-2}
    rep.main_bound = pow_rat(rep.alpha, t) * (1 + two_pow) - pow_rat(rep.alpha, t - 1) * two_pow;
    // "in particular" regime: t > log2(1/alpha) + 2, i.e. alpha * 2^{t-2} > 1
    if (rep.alpha * pow2_rat(long(t) - 2) > 1) {
        rep.particular_bound = pow_rat(rep.alpha / 2, t);
    }

    const std::vector<mpz_class> table = convolution_table(a, t);
    const mpz_class denom = mpz_class(1) << (size_t(a.n()) * (t - 1));

    const uint32_t dim = rep.subspace.dim();
    rep.exhaustive = dim <= kEnumerationCap;
    const uint64_t points = rep.exhaustive ? (uint64_t(1) << dim) : kSampledPoints;
    Rng sample_rng(0xB0601B0601ULL);  // only used in the sampled regime

    bool have_min = false;
    for (uint64_t idx = 0; idx < points; ++idx) {
        const uint64_t pick = rep.exhaustive ? idx : sample_rng.below(uint64_t(1) << dim);
        const uint32_t v = rep.subspace.member(pick);
        const Rat prob = make_rat(table[v], denom);
        if (!have_min || prob < rep.min_probability) {
            rep.min_probability = prob;
            have_min = true;
        }
        const bool main_ok = prob >= rep.main_bound;
        const bool part_ok = !rep.particular_bound || prob >= *rep.particular_bound;
        if (!(main_ok && part_ok)) {
            ++rep.failures;
            if (!rep.first_failure) {
                rep.first_failure = BogolyubovPoint{v, prob, main_ok, part_ok};
            }
        }
        ++rep.checked_points;
    }
    rep.pass = rep.failures == 0;
    return rep;
}

TailBoundReport tail_bound_check(const SubsetF2n& a, uint32_t t) {
    if (t < 3) throw std::invalid_argument("tail_bound_check: t >= 3");
    const IntSpectrum sp = wht(a);
    const int64_t cut = spectrum_cutoff(a.n(), a.density() / 2, /*strict=*/true);

    TailBoundReport rep;
    rep.tail = 0;
    rep.offspec_energy = 0;
    for (uint64_t r = 1; r < a.domain(); ++r) {
        const int64_t v = sp.s[r];
        const int64_t av = v < 0 ? -v : v;
        rep.offspec_energy += mpz_class(long(v)) * long(v);
        if (av < cut) rep.tail += int_pow(av, t);
    }
    const mpz_class sz((unsigned long)a.size());
    rep.expected_energy = (sz << a.n()) - sz * sz;

    const Rat alpha = a.density();
    rep.bound = pow_rat(alpha / 2, t - 2) * (alpha - alpha * alpha) * pow2_rat(long(a.n()) * t);
    rep.ok = Rat(rep.tail) <= rep.bound && rep.offspec_energy == rep.expected_energy;
    return rep;
}

std::string serialize_subset(const SubsetF2n& a) {
    std::ostringstream out;
    out << "f2set v1 n=" << a.n() << "\n";
    const uint64_t nibbles = (a.domain() + 3) / 4;
    for (uint64_t nb = 0; nb < nibbles; ++nb) {
        int v = 0;
        for (uint32_t b = 0; b < 4; ++b) {
            const uint64_t x = nb * 4 + b;
            if (x < a.domain() && a.contains(uint32_t(x))) v |= 8 >> b;
        }
        out << char(v < 10 ? '0' + v : 'a' + v - 10);
        if ((nb + 1) % 64 == 0) out << "\n";
    }
    if (nibbles % 64 != 0) out << "\n";
    return out.str();
}

SubsetF2n parse_subset(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header)) throw ConfigError(name + ":1: empty input");
    if (header.rfind("f2set v1 ", 0) != 0) {
        throw ConfigError(name + ":1: expected 'f2set v1' header");
    }
    const auto pos = header.find("n=");
    if (pos == std::string::npos) throw ConfigError(name + ":1: missing 'n=' in header");
    uint32_t n = 0;
    try {
        n = uint32_t(std::stoul(header.substr(pos + 2)));
    } catch (const std::exception&) {
        throw ConfigError(name + ":1: malformed 'n=' value");
    }
    if (n == 0 || n > kMaxN) throw ConfigError(name + ":1: n must lie in [1, 22]");

    SubsetF2n s(n);
    const uint64_t nibbles = (s.domain() + 3) / 4;
    uint64_t nb = 0;
    char c;
    while (in.get(c)) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        } else {
            throw ConfigError(name + ": invalid hex digit '" + std::string(1, c) + "'");
        }
        if (nb >= nibbles) throw ConfigError(name + ": more data than 2^n bits");
        for (uint32_t b = 0; b < 4; ++b) {
            if ((v >> (3 - b)) & 1) {
                const uint64_t x = nb * 4 + b;
                if (x >= s.domain()) {
                    throw ConfigError(name + ": nonzero padding bit past 2^n");
                }
                s.insert(uint32_t(x));
            }
        }
        ++nb;
    }
    if (nb != nibbles) {
        throw ConfigError(name + ": expected " + std::to_string(nibbles) +
                          " hex digits, got " + std::to_string(nb));
    }
    return s;
}

SubsetF2n parse_subset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open for reading");
    return parse_subset(in, path);
}

}  // namespace mmc
