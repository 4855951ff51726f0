#include "ncclark/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace ncclark {

Json to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Mat& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const Vec& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(to_json(v(i)));
    return a;
}

Json to_json(const RowVec& v) { return to_json(Vec(v.transpose())); }

Json to_json(const MatrixTuple& t)
{
    Json a = Json::array();
    for (const auto& m : t.mats())
        a.push_back(to_json(m));
    return a;
}

Json to_json(const FMRealization& f)
{
    Json b = Json::array();
    for (const auto& v : f.B)
        b.push_back(to_json(v));
    return Json{{"A", to_json(f.A)},
                {"B", b},
                {"C", to_json(f.C)},
                {"D", to_json(f.D)},
                {"d", f.d()},
                {"m", f.m()},
                {"minimal", f.minimal}};
}

Json to_json(const ClarkSeed& s)
{
    return Json{{"T", to_json(s.T)}, {"x", to_json(s.x)}, {"t", s.t}};
}

Json to_json(const Word& w)
{
    Json a = Json::array();
    for (int l : w)
        a.push_back(l);
    return a;
}

Json to_json(const PowerSeries& s)
{
    Json c = Json::array();
    for (const auto& [w, v] : s.coef)
        c.push_back(Json{{"word", to_json(w)}, {"value", to_json(v)}});
    return Json{{"d", s.d}, {"maxdeg", s.maxdeg}, {"coefficients", c}};
}

Json expr_to_json(const ExprPtr& e)
{
    switch (e->op) {
    case ExprOp::Const:
        return Json{{"op", "Const"}, {"value", to_json(e->value)}};
    case ExprOp::Var:
        return Json{{"op", "Var"}, {"index", e->index}};
    case ExprOp::Add:
        return Json{{"op", "Add"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
    case ExprOp::Mul:
        return Json{{"op", "Mul"}, {"lhs", expr_to_json(e->lhs)}, {"rhs", expr_to_json(e->rhs)}};
    case ExprOp::Neg:
        return Json{{"op", "Neg"}, {"arg", expr_to_json(e->lhs)}};
    case ExprOp::Inv:
        return Json{{"op", "Inv"}, {"arg", expr_to_json(e->lhs)}};
    }
    return Json();
}

cplx cplx_from_json(const Json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a complex number [re, im], got " + j.dump());
}

Mat mat_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("expected a matrix (list of rows)");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
            throw InputError("matrix rows must be lists of equal length");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = cplx_from_json(j[i][k]);
    }
    return m;
}

Vec vec_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("expected a vector (list of entries)");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = cplx_from_json(j[i]);
    return v;
}

MatrixTuple tuple_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw InputError("expected a matrix tuple (non-empty list of matrices)");
    std::vector<Mat> ms;
    for (const auto& m : j)
        ms.push_back(mat_from_json(m));
    return MatrixTuple(ms);
}

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(fmt::format("missing field \"{}\"", key));
    return j.at(key);
}

} // namespace

FMRealization fm_from_json(const Json& j)
{
    FMRealization f;
    const Json& a = field(j, "A");
    const Json& b = field(j, "B");
    if (!b.is_array() || b.empty())
        throw InputError("\"B\" must be a non-empty list of vectors");
    for (const auto& v : b)
        f.B.push_back(vec_from_json(v));
    const int d = static_cast<int>(f.B.size());
    const int m = static_cast<int>(f.B[0].size());
    if (a.is_array() && !a.empty() && a[0].is_array() && a[0].empty())
        f.A = MatrixTuple::zeros(d, 0);
    else if (a.is_array() && a.empty())
        f.A = MatrixTuple::zeros(d, m);
    else
        f.A = tuple_from_json(a);
    f.C = vec_from_json(field(j, "C")).transpose();
    f.D = cplx_from_json(field(j, "D"));
    f.minimal = j.contains("minimal") && j.at("minimal").is_boolean() && j.at("minimal").get<bool>();
    check_consistent(f);
    return f;
}

ClarkSeed seed_from_json(const Json& j)
{
    ClarkSeed s;
    s.T = tuple_from_json(field(j, "T"));
    s.x = vec_from_json(field(j, "x"));
    s.t = j.contains("t") ? j.at("t").get<double>() : 0.0;
    if (s.x.size() != s.T.n())
        throw InputError("seed: x length does not match T");
    return s;
}

namespace {

void emit(const Json& j, std::string& out)
{
    switch (j.type()) {
    case Json::value_t::null:
        out += "null";
        break;
    case Json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case Json::value_t::number_integer:
        out += std::to_string(j.get<long long>());
        break;
    case Json::value_t::number_unsigned:
        out += std::to_string(j.get<unsigned long long>());
        break;
    case Json::value_t::number_float: {
        double v = j.get<double>();
        if (std::isfinite(v))
            out += fmt::format("{:.17g}", v == 0.0 ? 0.0 : v);
        else
            out += "null";
        break;
    }
    case Json::value_t::string:
        out += j.dump();
        break;
    case Json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += ',';
            first = false;
            emit(e, out);
        }
        out += ']';
        break;
    }
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += Json(it.key()).dump();
            out += ':';
            emit(it.value(), out);
        }
        out += '}';
        break;
    }
    default:
        out += j.dump();
    }
}

bool is_complex_pair(const Json& j)
{
    return j.is_array() && j.size() == 2 && j[0].is_number_float() && j[1].is_number_float();
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

std::string short_scalar(const Json& j)
{
    if (j.is_number_float())
        return fmt::format("{:.6g}", j.get<double>());
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

std::string short_value(const Json& j)
{
    if (is_complex_pair(j)) {
        double re = j[0].get<double>(), im = j[1].get<double>();
        if (im == 0.0)
            return fmt::format("{:.6g}", re);
        return fmt::format("{:.6g}{}{:.6g}i", re, im < 0 ? "-" : "+", std::abs(im));
    }
    if (is_scalar(j))
        return short_scalar(j);
    std::string s = "[";
    bool first = true;
    for (const auto& e : j) {
        if (!first)
            s += ", ";
        first = false;
        s += short_value(e);
    }
    return s + "]";
}

bool is_flat(const Json& j)
{
    if (is_scalar(j) || is_complex_pair(j))
        return true;
    if (j.is_object())
        return false;
    for (const auto& e : j)
        if (!(is_scalar(e) || is_complex_pair(e)))
            return false;
    return true;
}

void pretty(const Json& j, int indent, std::ostringstream& os)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (is_flat(it.value())) {
                os << pad << it.key() << ": " << short_value(it.value()) << "\n";
            } else {
                os << pad << it.key() << ":\n";
                pretty(it.value(), indent + 2, os);
            }
        }
    } else if (j.is_array() && !is_flat(j)) {
        for (const auto& e : j) {
            if (is_flat(e)) {
                os << pad << "- " << short_value(e) << "\n";
            } else {
                os << pad << "-\n";
                pretty(e, indent + 2, os);
            }
        }
    } else {
        os << pad << short_value(j) << "\n";
    }
}

} // namespace

std::string canonical_dump(const Json& j)
{
    std::string out;
    emit(j, out);
    return out;
}

std::string pretty_dump(const Json& j)
{
    std::ostringstream os;
    pretty(j, 0, os);
    return os.str();
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

} // namespace ncclark
