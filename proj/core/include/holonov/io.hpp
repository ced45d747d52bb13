// io.hpp -- file schemas (JSON, rationals as "p/q" strings) for the flow
// model, atlas, section, weights, diagram and operator-family inputs, plus
// the schema-error type the command line maps to its own exit code.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "holonov/cocycle.hpp"
#include "holonov/fueter.hpp"
#include "holonov/novikov.hpp"

namespace holonov {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlowModelFile {
    FlowModel flow;
    std::optional<LocalSystemComplex> cellular;  // oracle complex, if bundled
    std::optional<GrowthModel> growth;           // synthetic shells, if bundled
};

FlowModelFile load_flow_model(const std::string& path);

Atlas load_atlas(const std::string& path);

struct SectionsFile {
    SectionData g1, g2;
};

// sections are validated against the atlas they will be paired over
SectionsFile load_sections(const std::string& path, const Atlas& atlas);

struct WeightsFile {
    SlagWeights weights;
    ClassVector kappa;
};

WeightsFile load_weights(const std::string& path);

CriticalValueDiagram load_diagram(const std::string& path);
std::vector<CrossingMove> load_moves(const std::string& path);
std::string diagram_to_json(const CriticalValueDiagram& d);

SelfAdjointFamily load_family(const std::string& path);

std::string generating_function_to_json(const GeneratingFunction& f);

}  // namespace holonov
