#pragma once

// JSON encodings of every exchanged object, and a canonical serializer
// (sorted keys, two-space indent, doubles at 17 significant digits) so that
// identical inputs give byte-identical documents.
//
// Indices exposed in JSON (pure-system index, permutations, trajectory
// paths, violation cells) are 1-based.

#include <json.hpp>
#include <string>

#include "cultrule/birkhoff.hpp"
#include "cultrule/configuration.hpp"
#include "cultrule/genealogy.hpp"
#include "cultrule/possibility.hpp"
#include "cultrule/transform.hpp"

namespace cultrule::io {

using nlohmann::json;

std::string dump_canonical(const json& doc);

// Parse failures become Error(Errc::malformed_input).
json parse(const std::string& text);
json read_file(const std::string& path);

json to_json(const Configuration& c);
Configuration configuration_from_json(const json& j, int min_cycle = kDefaultMinCycle);

json to_json(const ConfigurationSpace& space);
// Accepts an explicit space {"min_cycle", "configs"} (members must already
// be in canonical order) or a reference {"order", "min_cycle"}.
SpacePtr space_from_json(const json& j);

json to_json(const ContentList& xi);
ContentList content_list_from_json(const json& j);

json to_json(const Matrix& m);
// Either a bare array of rows or {"matrix": rows}.
Matrix matrix_from_json(const json& j);

json to_json(const Transform& t);
Transform transform_from_json(const json& j);
Transform transform_from_json(const json& j, SpacePtr space);

json to_json(const PossibilityTransform& p);
PossibilityTransform possibility_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const ViabilityReport& r, const ConfigurationSpace& space);
json to_json(const PossibilityDensity& d);
json to_json(const Theorem1Report& r);
json to_json(const StochasticReport& r);
json to_json(const PureSystem& p);
json to_json(const EthnographerReport& r);

json to_json(const BvnDecomposition& d);
BvnDecomposition decomposition_from_json(const json& j);

GenealogyInput genealogy_from_json(const json& j);
json to_json(const EvolutionaryStructure& s);
json to_json(const DescentSequence& ds, const EvolutionaryStructure& s);
json to_json(const SequenceReport& r);
json to_json(const Trajectory& t);
json to_json(const std::vector<Violation>& violations);

}  // namespace cultrule::io
