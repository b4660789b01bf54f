#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elkg/log.hpp"
#include "elkg/perspective.hpp"
#include "elkg/query.hpp"

// Brute-force reference evaluators for tests. Everything here works on the
// in-memory log models and deliberately avoids the graph, the trace index,
// the constraint engine and the perspective engine.
namespace elkg::oracle {

struct Args {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::int64_t count = 0;
};

// Case ids of the traces satisfying constraint `name`. Throws
// std::invalid_argument for an unknown name.
std::set<std::string> constraint(const CaseLog& log, std::string_view name, const Args& args);

// Objects reachable from `start` by `step`, by scanning every O2O list.
std::set<std::string> collect(const OcelLog& log, std::string_view start, const PathStep& step);

// (case id, RETURN variable -> event id) for every satisfying assignment of
// the query's event variables, found by enumerating all assignments.
using Row = std::pair<std::string, std::map<std::string, std::string>>;
std::set<Row> query(const CaseLog& log, const QueryAst& ast);

std::set<std::string> query_cases(const CaseLog& log, const QueryAst& ast);

} // namespace elkg::oracle
