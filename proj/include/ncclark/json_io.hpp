#ifndef NCCLARK_JSON_IO_HPP
#define NCCLARK_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "ncclark/clark.hpp"
#include "ncclark/expr.hpp"
#include "ncclark/realization.hpp"

namespace ncclark {

using Json = nlohmann::json;

// Complex numbers are [re, im]; matrices are lists of rows; tuples are lists
// of matrices.  Readers also accept a bare real number for a complex entry.
Json to_json(cplx c);
Json to_json(const Mat& m);
Json to_json(const Vec& v);
Json to_json(const RowVec& v);
Json to_json(const MatrixTuple& t);
Json to_json(const FMRealization& f);
Json to_json(const ClarkSeed& s);
Json to_json(const PowerSeries& s);
Json to_json(const Word& w);
Json expr_to_json(const ExprPtr& e);

cplx cplx_from_json(const Json& j);
Mat mat_from_json(const Json& j);
Vec vec_from_json(const Json& j);
MatrixTuple tuple_from_json(const Json& j);
FMRealization fm_from_json(const Json& j);
ClarkSeed seed_from_json(const Json& j);

// Sorted keys, doubles with 17 significant digits, no whitespace.
std::string canonical_dump(const Json& j);
// Indented "key: value" listing with short complex formatting.
std::string pretty_dump(const Json& j);

Json read_json_file(const std::string& path);

} // namespace ncclark

#endif
