#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "elkg/graph.hpp"
#include "elkg/value.hpp"

namespace elkg {

using ActivityId = std::uint32_t;

struct IndexedEvent {
    std::string iri;
    ActivityId activity;
    Instant timestamp;
    // Keyed by the local name of the attribute predicate.
    AttributeMap attributes;
};

struct IndexedTrace {
    std::string iri;
    std::vector<IndexedEvent> events; // in `next` order
    // activity -> ascending 1-based positions
    std::unordered_map<ActivityId, std::vector<std::size_t>> positions;

    std::span<const std::size_t> positions_of(ActivityId a) const;
    std::size_t count(ActivityId a) const { return positions_of(a).size(); }
};

// Per-trace ordered event sequences read back from an ELKG.
//
// A trace is every subject typed tr:Trace. Its events are the subjects of
// `tr:in` triples pointing at it, ordered by walking `tr:next` links among
// those members from the one without a predecessor. Events shared between
// traces carry one `next` link per trace; the walk only considers links
// inside the current trace and requires them to admit exactly one ordering
// that ends in `rdf:nil`. Anything else is a StructuralError.
class TraceIndex {
public:
    static TraceIndex build(const Graph& g);

    std::span<const IndexedTrace> traces() const noexcept { return traces_; }
    std::size_t size() const noexcept { return traces_.size(); }

    // Throws std::out_of_range for an unknown trace IRI.
    const IndexedTrace& trace(std::string_view iri) const;
    const IndexedTrace* find(std::string_view iri) const;

    // Activities are identified by the local name of their resource, which
    // is the sanitized activity label.
    std::optional<ActivityId> activity(std::string_view label) const;
    const std::string& activity_name(ActivityId a) const { return activity_names_.at(a); }
    std::size_t activity_count() const noexcept { return activity_names_.size(); }

private:
    std::vector<IndexedTrace> traces_;
    std::unordered_map<std::string, std::size_t> by_iri_;
    std::vector<std::string> activity_names_;
    std::unordered_map<std::string, ActivityId> activity_ids_;
};

} // namespace elkg
