#ifndef NCCLARK_TOOLS_REPRODUCE_HPP
#define NCCLARK_TOOLS_REPRODUCE_HPP

#include <cstdint>

#include "ncclark/json_io.hpp"

namespace ncclark::tools {

// {"checks": [{"name", "residual", "tolerance", "pass"}], "all_pass"}
Json reproduce_examples(std::uint64_t seed);

} // namespace ncclark::tools

#endif
