#pragma once

#include "elkg/graph.hpp"
#include "elkg/iri.hpp"
#include "elkg/log.hpp"

namespace elkg {

// Literal form of an attribute value: xsd:boolean, xsd:integer, xsd:decimal,
// xsd:dateTime, or a plain string.
Term value_term(const Value& v);

// Inverse of value_term for the datatypes above; anything else is a string.
Value term_value(const Term& literal);

// Case-centric log -> ELKG. Per trace: `σ a tr:Trace`. Per event: `e tr:in σ`,
// `e tr:activity <activity>`, `e tr:timestamp "..."^^xsd:dateTime`, one
// triple per attribute, and `e tr:next e'` to its successor or `rdf:nil`
// after the last event. Total size is T + 2E + A (A counts activity and
// timestamp triples too). The result is frozen.
Graph ccel_to_elkg(const CaseLog& log, const IriScheme& scheme);
void emit_ccel(const CaseLog& log, IriMinter& iris, Graph& into);

// Object-centric log -> ELKG: event activity/timestamp/attribute triples,
// `o a <type>` plus attribute triples per object, and one anonymous node per
// E2O link (tr:event, tr:object, tr:qualifier) and per O2O link (tr:object,
// tr:object2, tr:qualifier). The result is frozen.
Graph ocel2_to_elkg(const OcelLog& log, const IriScheme& scheme);
void emit_ocel2(const OcelLog& log, IriMinter& iris, Graph& into);

// Declares the scheme's prefix on `g`.
void declare_prefix(Graph& g, const IriScheme& scheme);

} // namespace elkg
