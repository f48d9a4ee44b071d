#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "xpr/bigcomplex.hpp"
#include "xpr/bigreal.hpp"
#include "xpr/certify.hpp"
#include "xpr/families.hpp"
#include "xpr/netlab.hpp"

namespace xpr::io {

using json = nlohmann::json;

/// BigReal <-> "<decimal>@<bits>" strings; plain numbers also accepted on
/// input at the default precision.
json to_json(const BigReal& x);
BigReal bigreal_from_json(const json& j, mpfr_prec_t default_bits = precision::default_bits());

json to_json(const BigComplex& z);
BigComplex bigcomplex_from_json(const json& j,
                                mpfr_prec_t default_bits = precision::default_bits());

/// FamilyParams <-> {"family": "H1|H2|H3|Hsigma|H5", "params": {...}}.
json to_json(const FamilyParams& p);
FamilyParams family_from_json(const json& j);

json to_json(const SampleGrid& grid);
SampleGrid grid_from_json(const json& j);

/// CSV with header "index,x,value" (plus ",value_im" for complex grids).
std::string grid_to_csv(const SampleGrid& grid);
SampleGrid grid_from_csv(const std::string& text);

json to_json(const Certificate& c);

/// NetworkGraph <-> {"nodes":[{"id","act","inputs":[{"from","w"}],"bias"}],
///                   "input":id,"output":id}.
json to_json(const NetworkGraph& net);
NetworkGraph network_from_json(const json& j);

/// Two-column (or wider) CSV writer used for plot data; no rendering.
std::string series_to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<BigReal>>& columns);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace xpr::io
