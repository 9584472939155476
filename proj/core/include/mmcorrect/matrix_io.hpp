#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "mmcorrect/mat_f2.hpp"
#include "mmcorrect/mat_fp.hpp"

namespace mmc {

using ParsedMatrix = std::variant<MatF2, MatFp>;

// Text format, one matrix per file:
//   ffmat v1 p=<p> n=<rows> m=<cols>
// followed by one line per row: hex nibbles of the packed row for p=2
// (row-major, most significant bit first within each nibble), or
// space-separated decimal residues otherwise.  Round-trips bit-exactly.
std::string serialize_matrix(const MatF2& m);
std::string serialize_matrix(const MatFp& m);

ParsedMatrix parse_matrix(std::istream& in, const std::string& name = "<stream>");
ParsedMatrix parse_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ParsedMatrix& m);

}  // namespace mmc
