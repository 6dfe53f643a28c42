#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "defset/margins.hpp"
#include "defset/matrix.hpp"

namespace defset {

struct GoodFormWitness;
struct SdsResult;

// Matrix text format:
//
//   m n
//   <row 1: n characters from {0,1,*}>
//   ...
//   <row m>
//
// LF line endings, no trailing whitespace. serialize() never writes a final
// newline; parse() tolerates a single one.

std::variant<BinaryMatrix, PartialMatrix> parse_matrix(std::string_view text);
/// parse_matrix, then require no '*' cells.
BinaryMatrix parse_binary_matrix(std::string_view text);
/// parse_matrix, widening a BinaryMatrix to a fully filled PartialMatrix.
PartialMatrix parse_partial_matrix(std::string_view text);

std::string serialize(const BinaryMatrix& m);
std::string serialize(const PartialMatrix& p);

/// {"s":[...],"t":[...]}
MarginSpec margins_from_json(std::string_view json);
std::string margins_to_json(const MarginSpec& margins);

/// {"rows":[...],"cols":[...],"f":[...]}; indices 1-based, f lists f(1..m).
std::string witness_to_json(const GoodFormWitness& w);
GoodFormWitness witness_from_json(std::string_view json);

/// {"sds":v,"D":"<matrix text>","witness":{...},"exact":bool}
std::string sds_result_to_json(const SdsResult& r);

} // namespace defset
