#pragma once

#include <json.hpp>

#include "weylq/gibbsmc.hpp"
#include "weylq/states.hpp"
#include "weylq/testfn.hpp"
#include "weylq/weyl.hpp"

namespace weylq::io {

using nlohmann::json;

json complex_to_json(Complex c);
Complex complex_from_json(const json& j);

json to_json(const WeylElement& a);
WeylElement weyl_from_json(const json& j);

Label label_from_json(const json& j);
json to_json(const Label& f);

json to_json(const TestFunction& f);
TestFunction testfn_from_json(const json& j);

json to_json(const ModeCoefficients& c);
ModeCoefficients modes_from_json(const json& j);

// {"nu":..,"terms":[..]} or {"modes":[{"n":[..],"coeff":[re,im]}]}
StateInput input_from_json(const json& j);
json to_json(const StateInput& f);

json to_json(const StateSpec& s);
StateSpec spec_from_json(const json& j);

json to_json(const GaussianMeasureSpec& m);
GaussianMeasureSpec measure_from_json(const json& j);

json to_json(const CylinderVector& v);
CylinderVector cylinder_from_json(const json& j);

// Parses a file, raising InvalidArgument on malformed JSON.
json read_json_file(const std::string& path);

}  // namespace weylq::io
