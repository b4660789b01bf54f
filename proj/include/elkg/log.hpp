#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "elkg/value.hpp"

namespace elkg {

// ---- case-centric logs ----

struct Event {
    std::string id;
    std::string activity;
    Instant timestamp;
    AttributeMap attributes; // everything except activity and timestamp
};

// Total order of events within a trace: timestamp, then event id.
inline bool event_before(const Event& a, const Event& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.id < b.id;
}

struct Trace {
    std::string case_id;
    std::vector<Event> events; // sorted by event_before
    AttributeMap attributes;   // trace-level attributes other than the case id
};

struct CaseLog {
    std::vector<Trace> traces;

    std::size_t event_count() const;
};

// Sorts every trace's events and checks that event ids are unique across the
// log. Throws ValidationError on duplicates.
void normalize(CaseLog& log);

// ---- object-centric logs ----

struct QualifiedLink {
    std::string qualifier;
    std::string target; // object id

    friend bool operator==(const QualifiedLink&, const QualifiedLink&) = default;
};

struct OcelObject {
    std::string id;
    std::string type;
    AttributeMap attributes;
    std::vector<QualifiedLink> o2o;
};

struct OcelEvent {
    std::string id;
    std::string type; // activity
    Instant timestamp;
    AttributeMap attributes;
    std::vector<QualifiedLink> e2o;
};

struct OcelLog {
    std::vector<OcelEvent> events;
    std::vector<OcelObject> objects;

    std::size_t e2o_count() const;
    std::size_t o2o_count() const;
};

// Checks id uniqueness and that every E2O/O2O target exists. The error
// message lists the offending ids.
void validate(const OcelLog& log);

} // namespace elkg
