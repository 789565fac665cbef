#pragma once

#include "dbn/flow.hpp"
#include "dbn/leeyang.hpp"
#include "dbn/measures.hpp"
#include "dbn/zeros.hpp"

#include "json.hpp"

#include <string>

namespace dbn {

using json = nlohmann::json;

/// Measure spec: {"kind": K, "atoms": [[t, w], ...], "params": {...}, "base": {...}}.
/// K is one of SymmetricAtoms, NamedDensity, GaussianConvolution, MultipliedMeasure,
/// or a density kind name as shorthand for NamedDensity. Errors carry the JSON path.
EvenMeasure parse_measure(const json& j, const std::string& path = "$");
json measure_to_json(const EvenMeasure& m);

/// {"n", "J": [[...]], "beta", "field_weights"?, "site"?: {"kind", "a", "b", "c"}, "search_mode"?, "window"?}.
SpinSystem parse_system(const json& j, const std::string& path = "$");
/// Optional "window": [re_min, re_max, im_min, im_max] of a system spec.
std::optional<Rectangle> parse_window(const json& j, const std::string& path);

/// {"t"?: t0, "positions": [...]}.
FlowState parse_flow_init(const json& j, const std::string& path = "$");

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
json load_json_file(const std::string& file);

json to_json(const TailSet& t);
json to_json(const std::complex<double>& z);
json to_json(const Rectangle& r);
json to_json(const RealityVerdict& v);

}  // namespace dbn
