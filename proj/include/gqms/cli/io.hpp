// io.hpp — Generator file format, state files and JSON emission
//
// A generator file is one JSON object:
//
//   { "d": 2, "m": 1,
//     "omega": [[[re, im], ...], ...],   d x d, Hermitian
//     "kappa": [[[re, im], ...], ...],   d x d, symmetric (optional, default 0)
//     "U":     [[[re, im], ...], ...],   m x d
//     "V":     [[[re, im], ...], ...],   m x d
//     "zeta":  [[re, im], ...] }         length d (optional, default 0)
//
// Every complex number is a two-element array [re, im]. A state file holds
// "mean" (length-d complex vector) and "covariance" (2d x 2d real matrix of
// the identification).

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gqms/generator.hpp"

namespace gqms::cli {

using nlohmann::json;

// Malformed input; the message names the field (and line/column for syntax
// errors).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json parse_json_text(const std::string& text, const std::string& origin);
json read_json_file(const std::string& path);

GeneratorParams generator_from_json(const json& j);
GeneratorParams read_generator(const std::string& path);
json generator_to_json(const GeneratorParams& p);

GaussianState state_from_json(const json& j, Index d);
GaussianState read_state(const std::string& path, Index d);
json state_to_json(const GaussianState& s);

json complex_to_json(cplx z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const RVector& v);
json to_json(const RMatrix& m);

// Serializes with every floating-point number printed at 17 significant
// digits; non-finite values become null.
void write_json(std::ostream& os, const json& j, int indent = 2);
std::string dump_json(const json& j, int indent = 2);

} // namespace gqms::cli
