#pragma once

#include "cyclerank/int_matrix.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace cyclerank {

/// Square matrix text format: a line holding d, then d lines of d integers.
/// Blank lines are skipped; rows with the wrong number of entries and any
/// trailing content are rejected.
IntMatrix parse_matrix_text(std::istream& in);
IntMatrix parse_matrix_text(const std::string& text);
std::string format_matrix_text(const IntMatrix& m);

/// Integers are written as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise; both forms are accepted on input.
nlohmann::json integer_to_json(const Integer& v);
Integer integer_from_json(const nlohmann::json& j);

/// Matrices as an array of rows.
nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

} // namespace cyclerank
