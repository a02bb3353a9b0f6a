// io.cpp — Generator/state file parsing and JSON emission

#include "gqms/cli/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gqms::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ParseError("field '" + field + "': " + what);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

double read_number(const json& j, const std::string& field)
{
    if (!j.is_number()) {
        fail(field, "expected a number, found " + std::string(j.type_name()));
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        fail(field, "number is not finite");
    }
    return x;
}

cplx read_complex(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 2) {
        fail(field, "expected a complex number [re, im], found " + j.dump());
    }
    return {read_number(j[0], field + "[0]"), read_number(j[1], field + "[1]")};
}

Index read_count(const json& obj, const char* key)
{
    if (!obj.contains(key)) {
        fail(key, "missing");
    }
    const json& j = obj.at(key);
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        fail(key, "expected a nonnegative integer");
    }
    return static_cast<Index>(j.get<long long>());
}

CMatrix read_cmatrix(const json& obj, const char* key, Index rows, Index cols)
{
    if (!obj.contains(key)) {
        fail(key, "missing");
    }
    const json& j = obj.at(key);
    const std::string name(key);
    if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
        std::ostringstream msg;
        msg << "expected " << rows << " rows";
        fail(name, msg.str());
    }
    CMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rname = name + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            std::ostringstream msg;
            msg << "expected " << cols << " entries";
            fail(rname, msg.str());
        }
        for (Index c = 0; c < cols; ++c) {
            m(r, c) = read_complex(row[static_cast<std::size_t>(c)], rname + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

CVector read_cvector(const json& obj, const char* key, Index n)
{
    const json& j = obj.at(key);
    const std::string name(key);
    if (!j.is_array() || static_cast<Index>(j.size()) != n) {
        fail(name, "expected " + std::to_string(n) + " entries");
    }
    CVector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = read_complex(j[static_cast<std::size_t>(i)], name + "[" + std::to_string(i) + "]");
    }
    return v;
}

void write_value(std::ostream& os, const json& j, int indent, int depth)
{
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{' << nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                os << ',' << nl;
            }
            first = false;
            os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
            write_value(os, it.value(), indent, depth + 1);
        }
        os << nl << close_pad << '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // arrays of scalars stay on one line
        const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })
                          || std::all_of(j.begin(), j.end(), [](const json& e) {
                                 return e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number();
                             });
        os << '[' << (flat ? "" : nl);
        bool first = true;
        for (const auto& e : j) {
            if (!first) {
                os << (flat ? ", " : ",") << (flat ? "" : nl);
            }
            first = false;
            if (!flat) {
                os << pad;
            }
            write_value(os, e, flat ? 0 : indent, depth + 1);
        }
        os << (flat ? "" : nl) << (flat ? "" : close_pad) << ']';
        return;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            os << "null";
            return;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
        return;
    }
    default:
        os << j.dump();
    }
}

} // namespace

json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": JSON syntax error";
        throw ParseError(msg.str());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

GeneratorParams generator_from_json(const json& j)
{
    if (!j.is_object()) {
        throw ParseError("generator file must be a JSON object");
    }
    const Index d = read_count(j, "d");
    const Index m = read_count(j, "m");
    if (d < 1) {
        fail("d", "must be at least 1");
    }
    if (m < 1 || m > 2 * d) {
        fail("m", "must satisfy 1 <= m <= 2d");
    }
    CMatrix omega = read_cmatrix(j, "omega", d, d);
    CMatrix kappa = j.contains("kappa") ? read_cmatrix(j, "kappa", d, d) : CMatrix::Zero(d, d);
    CMatrix u = read_cmatrix(j, "U", m, d);
    CMatrix v = read_cmatrix(j, "V", m, d);
    CVector zeta = j.contains("zeta") ? read_cvector(j, "zeta", d) : CVector::Zero(d);
    try {
        return GeneratorParams::create(std::move(omega), std::move(kappa), std::move(u), std::move(v),
                                       std::move(zeta));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

GeneratorParams read_generator(const std::string& path)
{
    try {
        return generator_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) {
            throw;
        }
        throw ParseError(path + ": " + what);
    }
}

json generator_to_json(const GeneratorParams& p)
{
    json j;
    j["d"] = p.modes();
    j["m"] = p.kraus();
    j["omega"] = to_json(p.omega());
    j["kappa"] = to_json(p.kappa());
    j["U"] = to_json(p.u());
    j["V"] = to_json(p.v());
    j["zeta"] = to_json(p.zeta());
    return j;
}

GaussianState state_from_json(const json& j, Index d)
{
    if (!j.is_object()) {
        throw ParseError("state file must be a JSON object");
    }
    if (!j.contains("mean")) {
        fail("mean", "missing");
    }
    if (!j.contains("covariance")) {
        fail("covariance", "missing");
    }
    GaussianState s;
    s.mean = read_cvector(j, "mean", d);
    const json& c = j.at("covariance");
    if (!c.is_array() || static_cast<Index>(c.size()) != 2 * d) {
        fail("covariance", "expected " + std::to_string(2 * d) + " rows");
    }
    RMatrix cov(2 * d, 2 * d);
    for (Index r = 0; r < 2 * d; ++r) {
        const json& row = c[static_cast<std::size_t>(r)];
        const std::string rname = "covariance[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != 2 * d) {
            fail(rname, "expected " + std::to_string(2 * d) + " entries");
        }
        for (Index k = 0; k < 2 * d; ++k) {
            cov(r, k) = read_number(row[static_cast<std::size_t>(k)], rname + "[" + std::to_string(k) + "]");
        }
    }
    s.covariance = RealLinearOp::from_matrix(cov);
    const StateValidity validity = check_gaussian_state(s);
    if (!validity.valid()) {
        std::ostringstream msg;
        msg << "not a Gaussian state covariance (asymmetry " << validity.asymmetry
            << ", min eigenvalue of S + iJ " << validity.min_eigenvalue << ")";
        fail("covariance", msg.str());
    }
    return s;
}

GaussianState read_state(const std::string& path, Index d)
{
    try {
        return state_from_json(read_json_file(path), d);
    } catch (const ParseError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) {
            throw;
        }
        throw ParseError(path + ": " + what);
    }
}

json state_to_json(const GaussianState& s)
{
    return {{"mean", to_json(s.mean)}, {"covariance", to_json(s.covariance.to_matrix())}};
}

json complex_to_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

json to_json(const CVector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json to_json(const CMatrix& m)
{
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const RVector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

json to_json(const RMatrix& m)
{
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        out.push_back(std::move(row));
    }
    return out;
}

void write_json(std::ostream& os, const json& j, int indent)
{
    write_value(os, j, indent, 0);
    os << '\n';
}

std::string dump_json(const json& j, int indent)
{
    std::ostringstream os;
    write_json(os, j, indent);
    return os.str();
}

} // namespace gqms::cli
