#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "elkg/graph.hpp"
#include "elkg/iri.hpp"
#include "elkg/log.hpp"

namespace elkg {

enum class Direction { Forward, Reverse };

struct PathStep;

// Follow O2O links carrying `qualifier`, from source to target (Forward) or
// target to source (Reverse).
struct Rel {
    Direction direction = Direction::Forward;
    std::string qualifier;
};

// Every alternative evaluated from the same object; results are unioned.
struct Alt {
    std::vector<PathStep> steps;
};

// Steps evaluated in sequence, each from the previous step's frontier; the
// result is the union of all frontiers.
struct Path {
    std::vector<PathStep> steps;
};

struct PathStep {
    std::variant<Rel, Alt, Path> node;
};

PathStep rel(Direction d, std::string qualifier);
PathStep alt(std::vector<PathStep> steps);
PathStep path(std::vector<PathStep> steps);

struct Perspective {
    std::string start_object_type;
    Path path;
};

struct PerspectiveInstance {
    std::string start_object;
    std::set<std::string> objects; // includes start_object
};

// Checks non-empty qualifiers and non-empty Alt/Path step lists. Throws
// ValidationError naming the offending step as a JSON path.
void validate(const Perspective& p);

// Reads `{"startObjectType": ..., "path": [step...]}` where a step is
// `{"dir": "fwd"|"rev", "qualifier": ...}`, `{"alt": [...]}` or
// `{"path": [...]}`. Errors name the offending field, e.g. `$.path[2].alt[0].dir`.
Perspective parse_perspective_json(std::string_view text);

// O2O adjacency of a log, keyed by (object, qualifier) in both directions.
class ObjectGraph {
public:
    explicit ObjectGraph(const OcelLog& log);

    bool contains(std::string_view object) const;
    std::span<const std::size_t> targets(std::size_t object, Direction d, std::string_view qualifier) const;

    std::size_t index_of(std::string_view object) const; // throws ValidationError if unknown
    const std::string& id(std::size_t index) const { return ids_[index]; }
    std::size_t size() const noexcept { return ids_.size(); }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string_view, std::size_t> index_;
    std::unordered_map<std::string, std::size_t> qualifier_index_;
    // (object * qualifiers + qualifier) -> neighbours
    std::unordered_map<std::size_t, std::vector<std::size_t>> forward_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> reverse_;
};

// Objects reached from `start` by `step`. Throws ValidationError when `start`
// is not an object of the log.
std::set<std::string> collect(const ObjectGraph& graph, std::string_view start, const PathStep& step);
std::set<std::string> collect(const OcelLog& log, std::string_view start, const PathStep& step);

// One instance per object of the start type, sorted by start object id.
std::vector<PerspectiveInstance> enumerate_instances(const OcelLog& log, const Perspective& p);

// Trace triples for each instance: `trace_<start> a tr:Trace`, plus
// `tr:in`/`tr:next` triples over the distinct events linked to any of the
// instance's objects, ordered by (timestamp, id). Instances without events
// yield a bare trace node.
void emit_traces(const OcelLog& log, std::span<const PerspectiveInstance> instances, IriMinter& iris, Graph& into);
Graph materialize_traces(const OcelLog& log, std::span<const PerspectiveInstance> instances,
                         const IriScheme& scheme);

struct FlattenResult {
    Graph graph; // base OCEL2 ELKG plus materialized traces, frozen
    std::size_t instances = 0;
    std::size_t empty_traces = 0;
};

FlattenResult flatten(const OcelLog& log, const Perspective& p, const IriScheme& scheme);

} // namespace elkg
