#include "cyclerank/matrix_io.hpp"

#include "cyclerank/errors.hpp"

#include <istream>
#include <sstream>
#include <vector>

namespace cyclerank {

namespace {

Integer parse_integer(const std::string& tok) {
    Integer v;
    std::size_t start = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (start == tok.size())
        throw ParseError("not an integer: '" + tok + "'");
    for (std::size_t i = start; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9')
            throw ParseError("not an integer: '" + tok + "'");
    const std::string digits = tok[0] == '+' ? tok.substr(1) : tok;
    if (v.set_str(digits, 10) != 0)
        throw ParseError("not an integer: '" + tok + "'");
    return v;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t)
        out.push_back(t);
    return out;
}

bool next_nonblank(std::istream& in, std::vector<std::string>& toks) {
    std::string line;
    while (std::getline(in, line)) {
        toks = tokens(line);
        if (!toks.empty())
            return true;
    }
    return false;
}

} // namespace

IntMatrix parse_matrix_text(std::istream& in) {
    std::vector<std::string> toks;
    if (!next_nonblank(in, toks))
        throw ParseError("empty matrix input");
    if (toks.size() != 1)
        throw ParseError("first line must hold the dimension only");
    const Integer dim = parse_integer(toks[0]);
    if (dim <= 0 || dim > 10000)
        throw ParseError("dimension must be positive");
    const std::size_t d = dim.get_ui();
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!next_nonblank(in, toks))
            throw ParseError("expected " + std::to_string(d) + " rows, got " + std::to_string(i));
        if (toks.size() != d)
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(toks.size()) + " entries, expected " +
                             std::to_string(d));
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = parse_integer(toks[j]);
    }
    if (next_nonblank(in, toks))
        throw ParseError("unexpected trailing content after matrix");
    return m;
}

IntMatrix parse_matrix_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_matrix_text(ss);
}

std::string format_matrix_text(const IntMatrix& m) {
    if (!m.is_square())
        throw DimensionMismatch("text format holds square matrices only");
    std::ostringstream os;
    os << m.rows() << '\n' << m;
    return os.str();
}

nlohmann::json integer_to_json(const Integer& v) {
    if (fits_int64(v))
        return to_int64(v);
    return v.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    throw ParseError("expected an integer, got " + j.dump());
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back(integer_to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array())
        throw ParseError("matrix must be an array of rows");
    std::vector<IntVector> rows;
    for (const auto& r : j) {
        if (!r.is_array())
            throw ParseError("matrix row must be an array");
        IntVector row;
        for (const auto& x : r)
            row.push_back(integer_from_json(x));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged matrix rows");
        rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

} // namespace cyclerank
