#pragma once

#include "ultra/distance_set.hpp"
#include "ultra/extension.hpp"
#include "ultra/generators.hpp"
#include "ultra/piecewise.hpp"
#include "ultra/similarity.hpp"
#include "ultra/space.hpp"

#include "json.hpp"

#include <filesystem>

namespace ultra {

using Json = nlohmann::ordered_json;

// Rationals are written as strings ("3/4"); integer JSON numbers are accepted on input.
// Every reader throws input_error naming the offending key on malformed input.

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(const FiniteUltrametricSpace& s);
FiniteUltrametricSpace space_from_json(const Json& j);

Json to_json(const Interval& i);
Json to_json(const SequencePiece& s);
Json to_json(const DistanceSetDescriptor& d);
DistanceSetDescriptor descriptor_from_json(const Json& j);

Json to_json(const PiecewiseMonotone& f);
PiecewiseMonotone function_from_json(const Json& j);

Json to_json(const Bijection& b);
Bijection bijection_from_json(const Json& j);

Json to_json(const ScalingFunction& s);
ScalingFunction scaling_function_from_json(const Json& j);

/// {"map": {...}, "scaling": [["t","ψ(t)"], ...]}
Json to_json(const WeakSimilarity& w);
WeakSimilarity weak_similarity_from_json(const Json& j);

Json to_json(const ImageForm& f);
ImageForm image_form_from_json(const Json& j);
Json to_json(const SymbolicScaling& s);
SymbolicScaling symbolic_scaling_from_json(const Json& j);

Json to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const Component& c);
Json to_json(const Regime& r);

/// Parses a file; syntax errors become input_error with the byte position.
Json read_json_file(const std::filesystem::path& path);

} // namespace ultra
