#pragma once

#include <string_view>

#include "elkg/log.hpp"

namespace elkg {

// Reads an XES document. The case id is the trace's `concept:name`; each
// event needs `concept:name` (activity) and `time:timestamp`. Events keep
// every other top-level attribute, typed by its XES element. An event's id is
// its `identity:id` when present, otherwise a zero-padded ordinal in document
// order. Extension, global and classifier declarations are ignored.
//
// Throws ParseError for XML errors, missing activity/timestamp/case id and
// unparsable values.
CaseLog parse_xes(std::string_view text);

// Reads an OCEL 2.0 JSON document (`objects`, `events`, optional
// `objectTypes`/`eventTypes` attribute declarations). Throws ParseError for
// JSON or layout errors and ValidationError for dangling references.
OcelLog parse_ocel2_json(std::string_view text);

} // namespace elkg
