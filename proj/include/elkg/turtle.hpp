#pragma once

#include <map>
#include <string>
#include <string_view>

#include "elkg/graph.hpp"

namespace elkg {

// Prefixes every serialized graph declares: rdf, xsd, tr and pq.
const std::map<std::string, std::string>& default_prefixes();

// Writes `g` as Turtle. Subjects are sorted (resources by IRI, then anonymous
// nodes by label), then predicates by IRI, then objects by lexical form.
// Graph prefixes are declared alongside the defaults and used to compact IRIs.
std::string serialize_turtle(const Graph& g);

// Parses the Turtle subset emitted by serialize_turtle: @prefix/PREFIX, IRIs,
// prefixed names, `a`, `;` and `,` groups, quoted and bare literals, and
// `_:label` nodes. Collections, `[ ]` property lists and base IRIs raise a
// ParseError naming the construct. The result is frozen; anonymous labels are
// kept as written.
Graph parse_turtle(std::string_view text);

} // namespace elkg
