#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "elkg/constraints.hpp"
#include "elkg/error.hpp"
#include "elkg/trace_index.hpp"
#include "elkg/value.hpp"

namespace elkg {

// Syntax or validation error in a query. Validation errors also carry the
// 0-based index of the offending clause.
class QueryError : public ParseError {
public:
    QueryError(const std::string& msg, std::size_t line, std::size_t column,
               std::optional<std::size_t> clause = std::nullopt);

    std::optional<std::size_t> clause() const noexcept { return clause_; }

private:
    std::optional<std::size_t> clause_;
};

enum class Comparator { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(Comparator c);

// `name(?t, args...) [AS ?e | AS (?e1, ?e2)]`
struct ConstraintClause {
    ConstraintCall call;
    std::vector<std::string> bind; // event variables, in witness order
};

// `attr(?e, "Name") <op> literal`
struct AttributeClause {
    std::string event;
    std::string attribute;
    Comparator op = Comparator::Eq;
    Value literal;
};

// `timeBetween(?from, ?to) <op> duration("P7D")`
struct DurationClause {
    std::string from;
    std::string to;
    Comparator op = Comparator::Eq;
    Duration literal{0};
};

using Clause = std::variant<ConstraintClause, AttributeClause, DurationClause>;

struct QueryAst {
    std::string trace_var;
    std::vector<Clause> clauses;
    std::vector<std::string> returns; // starts with trace_var
    std::vector<std::string> warnings;
};

// Grammar (keywords are case-insensitive, `#` starts a comment):
//
//   MATCH TRACE ?t
//   WHERE clause (AND clause)*
//   RETURN ?t (, ?e)*
//
//   clause  := constraint | attr | duration
//   constraint := Name '(' ?t (',' arg)* ')' [AS ?e | AS '(' ?e ',' ?e ')']
//   arg     := "activity" | '{' "a" (',' "b")* '}' | integer
//   attr    := 'attr' '(' ?e ',' "Name" ')' op literal
//   duration := 'timeBetween' '(' ?e ',' ?e ')' op 'duration' '(' "P..." ')'
//   literal := number | "string" | true | false | 'datetime' '(' "..." ')'
//   op      := = | != | <> | < | <= | > | >=
//
// Constraint names are the registry names (activityOccurs, ...). A single
// AS variable on a two-event constraint binds the first event of the pair.
QueryAst parse_query(std::string_view text);

struct ResultRow {
    std::string trace;
    std::map<std::string, std::string> bindings; // variable -> event IRI
};

struct ResultSet {
    std::vector<ResultRow> rows; // sorted by trace, then bindings
    std::set<std::string> traces;
    std::vector<std::string> warnings;
};

// A trace matches when some assignment of its events to the event variables
// satisfies every clause. Rows list the distinct assignments projected onto
// the RETURN variables.
ResultSet evaluate(const QueryAst& ast, const TraceIndex& idx);

enum class ResultFormat { Ids, BindingsJson };

std::string serialize_results(const ResultSet& r, ResultFormat format);

// Typed attribute comparison; nullopt on a type mismatch.
std::optional<bool> compare_values(const Value& lhs, Comparator op, const Value& rhs);

} // namespace elkg
