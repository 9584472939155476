#include "mmcorrect/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mmcorrect/errors.hpp"
#include "mmcorrect/rational.hpp"

namespace mmc {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

char to_hex(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

uint64_t parse_header_field(const std::string& header, const std::string& key,
                            const std::string& name) {
    const std::string tag = key + "=";
    auto pos = header.find(tag);
    if (pos == std::string::npos) {
        throw ConfigError(name + ":1: missing '" + key + "=' in header");
    }
    uint64_t value = 0;
    const char* first = header.data() + pos + tag.size();
    const char* last = header.data() + header.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
        throw ConfigError(name + ":1: malformed '" + key + "=' value");
    }
    return value;
}

}  // namespace

std::string serialize_matrix(const MatF2& m) {
    std::ostringstream out;
    out << "ffmat v1 p=2 n=" << m.rows() << " m=" << m.cols() << "\n";
    const uint32_t nibbles = (m.cols() + 3) / 4;
    for (uint32_t i = 0; i < m.rows(); ++i) {
        for (uint32_t nb = 0; nb < nibbles; ++nb) {
            int v = 0;
            for (uint32_t b = 0; b < 4; ++b) {
                const uint32_t j = nb * 4 + b;
                if (j < m.cols() && m.get(i, j)) v |= 8 >> b;
            }
            out << to_hex(v);
        }
        out << "\n";
    }
    return out.str();
}

std::string serialize_matrix(const MatFp& m) {
    std::ostringstream out;
    out << "ffmat v1 p=" << m.field().p << " n=" << m.rows() << " m=" << m.cols() << "\n";
    for (uint32_t i = 0; i < m.rows(); ++i) {
        for (uint32_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.get(i, j);
        }
        out << "\n";
    }
    return out.str();
}

ParsedMatrix parse_matrix(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header)) throw ConfigError(name + ":1: empty input");
    if (header.rfind("ffmat v1 ", 0) != 0) {
        throw ConfigError(name + ":1: expected 'ffmat v1' header");
    }
    const uint64_t p = parse_header_field(header, "p", name);
    const uint64_t n = parse_header_field(header, "n", name);
    const uint64_t m = parse_header_field(header, "m", name);
    if (n == 0 || m == 0) throw ConfigError(name + ":1: dimensions must be >= 1");

    if (p == 2) {
        MatF2 mat(uint32_t(n), uint32_t(m));
        const uint32_t nibbles = (uint32_t(m) + 3) / 4;
        for (uint32_t i = 0; i < n; ++i) {
            std::string line;
            if (!std::getline(in, line)) {
                throw ConfigError(name + ": truncated file, missing row " +
                                  std::to_string(i) + " of " + std::to_string(n));
            }
            const uint32_t lineno = i + 2;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (line.size() != nibbles) {
                throw ConfigError(name + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(nibbles) + " hex digits, got " +
                                  std::to_string(line.size()));
            }
            for (uint32_t nb = 0; nb < nibbles; ++nb) {
                const int v = hex_digit(line[nb]);
                if (v < 0) {
                    throw ConfigError(name + ":" + std::to_string(lineno) +
                                      ": invalid hex digit '" + line[nb] + "'");
                }
                for (uint32_t b = 0; b < 4; ++b) {
                    const uint32_t j = nb * 4 + b;
                    const int bit = (v >> (3 - b)) & 1;
                    if (j >= m) {
                        if (bit) {
                            throw ConfigError(name + ":" + std::to_string(lineno) +
                                              ": nonzero padding bit past column " +
                                              std::to_string(m));
                        }
                        continue;
                    }
                    if (bit) mat.set(i, j, 1);
                }
            }
        }
        return mat;
    }

    if (p >= (1ull << 31)) throw ConfigError(name + ":1: p must be < 2^31");
    FieldSpec field(uint32_t(p));
    MatFp mat(field, uint32_t(n), uint32_t(m));
    for (uint32_t i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(in, line)) {
            throw ConfigError(name + ": truncated file, missing row " + std::to_string(i) +
                              " of " + std::to_string(n));
        }
        const uint32_t lineno = i + 2;
        std::istringstream ls(line);
        for (uint32_t j = 0; j < m; ++j) {
            uint64_t v = 0;
            if (!(ls >> v)) {
                throw ConfigError(name + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(m) + " values, got " + std::to_string(j));
            }
            if (v >= p) {
                throw ConfigError(name + ":" + std::to_string(lineno) + ": value " +
                                  std::to_string(v) + " is not a residue mod " +
                                  std::to_string(p));
            }
            mat.set(i, j, uint32_t(v));
        }
        uint64_t extra;
        if (ls >> extra) {
            throw ConfigError(name + ":" + std::to_string(lineno) + ": more than " +
                              std::to_string(m) + " values on the row");
        }
    }
    return mat;
}

ParsedMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open for reading");
    return parse_matrix(in, path);
}

void write_matrix_file(const std::string& path, const ParsedMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    std::visit([&](const auto& mat) { out << serialize_matrix(mat); }, m);
    if (!out) throw ConfigError(path + ": write failed");
}

Rat parse_rational(const std::string& text, const std::string& where) {
    const std::string at = where.empty() ? "" : " at " + where;
    const auto slash = text.find('/');
    const std::string num_s = text.substr(0, slash);
    const std::string den_s = slash == std::string::npos ? "1" : text.substr(slash + 1);
    mpz_class num, den;
    if (num_s.empty() || mpz_set_str(num.get_mpz_t(), num_s.c_str(), 10) != 0) {
        throw ConfigError("malformed rational '" + text + "'" + at);
    }
    if (den_s.empty() || mpz_set_str(den.get_mpz_t(), den_s.c_str(), 10) != 0) {
        throw ConfigError("malformed rational '" + text + "'" + at);
    }
    if (den == 0) {
        throw ConfigError("zero denominator in rational '" + text + "'" + at);
    }
    return make_rat(num, den);
}

}  // namespace mmc
