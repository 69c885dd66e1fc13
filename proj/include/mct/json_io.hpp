#ifndef MCT_JSON_IO_HPP
#define MCT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "mct/coarea.hpp"
#include "mct/content.hpp"
#include "mct/coverkit.hpp"
#include "mct/metric_space.hpp"

namespace mct {

using Json = nlohmann::ordered_json;

// rationals travel as {"num": "...", "den": "...", "dec": <double>};
// the decimal rendering is display-only
Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json space_to_json(const FiniteMetricSpace& space);
/// Accepts the space object format or a generator spec string.
FiniteMetricSpace space_from_json(const Json& j);

Json subset_to_json(const Bitset& mask);
Bitset subset_from_json(const Json& j, int n);

Json content_result_to_json(const ContentResult& r);
Json bound_chain_to_json(const BoundChain& chain);
Json selection_to_json(const SelectionResult& r);
Json validation_to_json(const ValidationReport& rep);
Json eilenberg_to_json(const EilenbergReport& rep);
Json lemma16_to_json(const Lemma16Report& rep);
Json density_to_json(const DensityProfile& prof);
Json theorem30_to_json(const Theorem30Report& rep);
Json davids_to_json(const DavidsRow& row);
Json dyadic_result_to_json(const DyadicContentResult& r);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace mct

#endif
