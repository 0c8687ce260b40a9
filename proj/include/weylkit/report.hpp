#ifndef WEYLKIT_REPORT_HPP
#define WEYLKIT_REPORT_HPP

#include "weylkit/weyl.hpp"

#include <json.hpp>
#include <string>

// JSON report records for the CLI (schema-versioned).

namespace weylkit::report {

using namespace weylkit;

std::string vec_json(const Vec& v);

// machine-readable serializations
void to_json_cartan(nlohmann::json& j, const cartan::CartanSpace& c);
void to_json_weyl(nlohmann::json& j, const weyl::WeylResult& r);
void to_json_disting(nlohmann::json& j, const disting::DistinguishedData& d);

}  // namespace weylkit::report

#endif
