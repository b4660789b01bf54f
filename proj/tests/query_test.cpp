#include <doctest.h>

#include <random>

#include "elkg/oracle.hpp"
#include "elkg/query.hpp"
#include "support.hpp"

using namespace elkg;
using S = std::set<std::string>;

namespace {

S iris(const std::set<std::string>& cases) {
    S out;
    for (const auto& c : cases) out.insert(testing::trace_iri(c));
    return out;
}

std::size_t count_constraints(const QueryAst& q) {
    std::size_t n = 0;
    for (const auto& c : q.clauses) n += std::holds_alternative<ConstraintClause>(c);
    return n;
}

QueryError error_of(const std::string& text) {
    try {
        parse_query(text);
    } catch (const QueryError& e) {
        return e;
    }
    FAIL("query parsed: " << text);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("parse the reference queries") {
    QueryAst m = parse_query(testing::maverick_query);
    CHECK(m.trace_var == "?t");
    CHECK(m.clauses.size() == 2);
    CHECK(count_constraints(m) == 2);
    CHECK(m.warnings.empty());

    QueryAst s = parse_query(testing::sepsis_query);
    CHECK(count_constraints(s) == 4);
    CHECK(s.clauses.size() == 6);
    const auto& age = std::get<AttributeClause>(s.clauses[4]);
    CHECK(age.attribute == "Age");
    CHECK(age.op == Comparator::Ge);
    CHECK(std::get<std::int64_t>(age.literal) == 65);
    CHECK(std::get<bool>(std::get<AttributeClause>(s.clauses[5]).literal));
    // ?la, ?crp and ?r are bound but never used
    CHECK(s.warnings.size() == 3);
}

TEST_CASE("grammar details") {
    QueryAst q = parse_query(R"(match trace ?t where
        activitiesAlwaysPrecede(?t, {"a", "b"}, {"c"}) and
        activityOccursAtLeastNTimes(?t, "a", 2) AND
        activitiesEventuallyFollow(?t, "a", "b") AS (?x, ?y) AND
        timeBetween(?x, ?y) <= duration("PT2H") AND
        attr(?x, "when") < datetime("2020-01-01T00:00:00Z") AND
        attr(?y, "cost") <> 1.5
        RETURN ?t, ?y, ?x)");
    REQUIRE(q.clauses.size() == 6);
    const auto& ap = std::get<ConstraintClause>(q.clauses[0]);
    CHECK(ap.call.a == std::vector<std::string>{"a", "b"});
    CHECK(ap.call.b == std::vector<std::string>{"c"});
    CHECK(std::get<ConstraintClause>(q.clauses[1]).call.count == 2);
    CHECK(std::get<ConstraintClause>(q.clauses[2]).bind == std::vector<std::string>{"?x", "?y"});
    CHECK(std::get<DurationClause>(q.clauses[3]).literal == std::chrono::hours(2));
    CHECK(std::holds_alternative<Instant>(std::get<AttributeClause>(q.clauses[4]).literal));
    CHECK(std::get<AttributeClause>(q.clauses[5]).op == Comparator::Ne);
    CHECK(q.returns == std::vector<std::string>{"?t", "?y", "?x"});
    CHECK(q.warnings.empty());
}

TEST_CASE("syntax and validation errors") {
    SUBCASE("line and column") {
        auto e = error_of("MATCH TRACE ?t\nWHERE activityOccurs(?t \"a\")\nRETURN ?t");
        CHECK(e.line() == 2);
        CHECK(e.column() == 25);
        CHECK_FALSE(error_of("MATCH ?t WHERE").clause().has_value());
    }
    SUBCASE("undefined event variable") {
        auto e = error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AND attr(?e, "Age") > 3 RETURN ?t)");
        CHECK(e.clause() == 1u);
        CHECK(std::string(e.what()).find("?e") != std::string::npos);
    }
    SUBCASE("unknown constraint") { CHECK(error_of(R"(MATCH TRACE ?t WHERE foo(?t) RETURN ?t)").clause() == 0u); }
    SUBCASE("arity and argument kinds") {
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t) RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a", "b") RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE allActivitiesOccur(?t, "a") RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE allActivitiesOccur(?t, {}) RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityOccursAtLeastNTimes(?t, "a", 0) RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?s, "a") RETURN ?t)").clause() == 0u);
    }
    SUBCASE("bindings") {
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityDoesNotOccur(?t, "a") AS ?e RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS (?e, ?f) RETURN ?t)").clause() == 0u);
        CHECK(error_of(R"(MATCH TRACE ?t WHERE activitiesDirectlyFollow(?t, "a", "b") AS (?e, ?e) RETURN ?t)").clause() == 0u);
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") RETURN ?t, ?e)");
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") RETURN ?x)");
    }
    SUBCASE("literals") {
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS ?e AND timeBetween(?e, ?e) > duration("P1M") RETURN ?t)");
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS ?e AND attr(?e, "x") > datetime("soon") RETURN ?t)");
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a) RETURN ?t)");
        error_of(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") RETURN ?t extra)");
        error_of("");
    }
}

TEST_CASE("maverick query") {
    CaseLog log = testing::maverick_log();
    auto idx = testing::index_of(log);
    auto r = evaluate(parse_query(testing::maverick_query), idx);
    CHECK(r.traces == S{testing::trace_iri("maverick")});
    CHECK(r.rows.size() == 1);
    CHECK(serialize_results(r, ResultFormat::Ids) == testing::trace_iri("maverick") + "\n");
}

TEST_CASE("sepsis query") {
    CaseLog log = testing::sepsis_log();
    auto idx = testing::index_of(log);
    QueryAst q = parse_query(testing::sepsis_query);
    auto r = evaluate(q, idx);
    CHECK(r.traces == S{testing::trace_iri("planted"), testing::trace_iri("edge_age")});
    CHECK(r.traces == iris(oracle::query_cases(log, q)));
    CHECK(r.warnings.empty());
}

TEST_CASE("bindings, joins and warnings") {
    CaseLog log = testing::make_log({{"x", {"a", "b", "a", "b"}}, {"y", {"b", "a"}}});
    log.traces[0].events[0].attributes["n"] = Value(std::int64_t{1});
    log.traces[0].events[2].attributes["n"] = Value(std::string("high"));
    auto idx = testing::index_of(log);

    auto r = evaluate(parse_query(R"(MATCH TRACE ?t WHERE activitiesDirectlyFollow(?t, "a", "b") AS (?p, ?q)
        RETURN ?t, ?p, ?q)"), idx);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].bindings.at("?p") == testing::event_iri("x_000"));
    CHECK(r.rows[1].bindings.at("?q") == testing::event_iri("x_003"));

    // single variable on a pair binds the first event
    auto first = evaluate(parse_query(R"(MATCH TRACE ?t WHERE activitiesEventuallyFollow(?t, "b", "a") AS ?e RETURN ?t, ?e)"), idx);
    REQUIRE(first.rows.size() == 2);
    CHECK(first.rows[0].bindings.at("?e") == testing::event_iri("x_001"));
    CHECK(first.rows[1].bindings.at("?e") == testing::event_iri("y_000"));

    // a variable bound twice must agree
    auto join = evaluate(parse_query(R"(MATCH TRACE ?t WHERE activityOccursAsStart(?t, "a") AS ?s
        AND activitiesDirectlyFollow(?t, "a", "b") AS (?s, ?n) RETURN ?t, ?n)"), idx);
    CHECK(join.traces == S{testing::trace_iri("x")});
    CHECK(join.rows.size() == 1);

    auto mismatch = evaluate(parse_query(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS ?e AND attr(?e, "n") > 0 RETURN ?t, ?e)"), idx);
    CHECK(mismatch.traces == S{testing::trace_iri("x")});
    REQUIRE(mismatch.warnings.size() == 1);
    CHECK(mismatch.warnings[0].find("'n'") != std::string::npos);

    auto none = evaluate(parse_query(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "zzz") RETURN ?t)"), idx);
    CHECK(none.traces.empty());
    CHECK(serialize_results(none, ResultFormat::Ids).empty());
    CHECK(serialize_results(none, ResultFormat::BindingsJson) == "[]\n");

    auto all = evaluate(parse_query(R"(MATCH TRACE ?t WHERE anyActivityOccurs(?t, {"a", "b"}) RETURN ?t)"), idx);
    CHECK(all.traces.size() == 2);
    std::string json = serialize_results(all, ResultFormat::BindingsJson);
    CHECK(json.find(testing::trace_iri("x")) < json.find(testing::trace_iri("y")));
}

TEST_CASE("durations") {
    CaseLog log = testing::make_log({{"x", {"a", "b", "c"}}});
    auto idx = testing::index_of(log);
    auto q = [&](const std::string& cond) {
        return evaluate(parse_query("MATCH TRACE ?t WHERE activityOccurs(?t, \"a\") AS ?a AND activityOccurs(?t, \"c\") AS ?c "
                                    "AND timeBetween(?a, ?c) " + cond + " RETURN ?t"), idx).traces.size();
    };
    CHECK(q("= duration(\"PT2M\")") == 1);
    CHECK(q("> duration(\"PT2M\")") == 0);
    CHECK(q(">= duration(\"PT2M\")") == 1);
    CHECK(q("< duration(\"-PT1M\")") == 0);
    CHECK(q("!= duration(\"PT0S\")") == 1);
}

TEST_CASE("typed comparison") {
    auto i = [](std::int64_t v) { return Value(v); };
    CHECK(compare_values(i(3), Comparator::Lt, Value(Decimal::from_double(3.5))) == true);
    CHECK(compare_values(i(65), Comparator::Ge, i(65)) == true);
    CHECK(compare_values(Value(true), Comparator::Eq, Value(true)) == true);
    CHECK_FALSE(compare_values(Value(true), Comparator::Lt, Value(false)).has_value());
    CHECK_FALSE(compare_values(Value(std::string("a")), Comparator::Lt, Value(std::string("b"))).has_value());
    CHECK(compare_values(Value(std::string("a")), Comparator::Ne, Value(std::string("b"))) == true);
    CHECK_FALSE(compare_values(Value(std::string("1")), Comparator::Eq, i(1)).has_value());
    CHECK(compare_values(Value(testing::minute(1)), Comparator::Gt, Value(testing::minute(0))) == true);
    CHECK_FALSE(compare_values(Value(testing::minute(1)), Comparator::Gt, i(0)).has_value());
}

namespace {

// random conjunctive query over the random-log vocabulary
std::vector<std::string> random_clauses(std::mt19937& rng, std::vector<std::string>& vars) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto acts = testing::alphabet(5);
    auto act = [&] { return "\"" + acts[pick(acts.size())] + "\""; };
    auto fresh = [&] {
        std::string v = "?e" + std::to_string(vars.size());
        vars.push_back(v);
        return v;
    };
    auto any_var = [&] { return vars.empty() || pick(3) == 0 ? fresh() : vars[pick(vars.size())]; };
    std::vector<std::string> out;
    std::size_t n = 1 + pick(4);
    for (std::size_t i = 0; i < n; ++i) {
        switch (pick(8)) {
        case 0: out.push_back("activityOccurs(?t, " + act() + ") AS " + any_var()); break;
        case 1: out.push_back("activitiesDirectlyFollow(?t, " + act() + ", " + act() + ") AS (" + any_var() + ", " + fresh() + ")"); break;
        case 2: out.push_back("activitiesEventuallyFollow(?t, " + act() + ", " + act() + ") AS " + any_var()); break;
        case 3: out.push_back("activityDoesNotOccur(?t, " + act() + ")"); break;
        case 4: out.push_back("activityOccursAtMostNTimes(?t, " + act() + ", " + std::to_string(pick(3)) + ")"); break;
        case 5:
            if (!vars.empty()) {
                const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
                const char* lits[] = {"50", "true", "\"A\"", "25.5", "datetime(\"2014-01-01T00:00:00Z\")"};
                const char* names[] = {"age", "flag", "org", "cost"};
                out.push_back("attr(" + vars[pick(vars.size())] + ", \"" + names[pick(4)] + "\") " + ops[pick(6)] + " " + lits[pick(5)]);
                break;
            }
            [[fallthrough]];
        case 6:
            if (vars.size() >= 1) {
                out.push_back("timeBetween(" + vars[pick(vars.size())] + ", " + vars[pick(vars.size())] + ") >= duration(\"PT" +
                              std::to_string(pick(20)) + "M\")");
                break;
            }
            [[fallthrough]];
        default: out.push_back("activityOccursAsStart(?t, " + act() + ") AS " + any_var()); break;
        }
    }
    return out;
}

std::string assemble(const std::vector<std::string>& clauses, const std::vector<std::string>& ret) {
    std::string q = "MATCH TRACE ?t WHERE ";
    for (std::size_t i = 0; i < clauses.size(); ++i) q += (i ? " AND " : "") + clauses[i];
    q += " RETURN ?t";
    for (const auto& r : ret) q += ", " + r;
    return q;
}

} // namespace

TEST_CASE("evaluate equals the brute-force evaluator on random logs") {
    std::mt19937 rng(23);
    int checked = 0;
    for (int round = 0; round < 150; ++round) {
        CaseLog log = testing::random_case_log(rng, 20, 8, 5);
        auto idx = testing::index_of(log);
        std::vector<std::string> vars;
        auto clauses = random_clauses(rng, vars);
        std::vector<std::string> ret;
        for (const auto& v : vars)
            if (rng() % 2) ret.push_back(v);
        std::string text = assemble(clauses, ret);
        QueryAst q;
        try {
            q = parse_query(text);
        } catch (const QueryError&) {
            continue; // a clause referenced a variable bound later
        }
        ++checked;
        auto r = evaluate(q, idx);
        auto expected = oracle::query(log, q);
        CAPTURE(text);
        CHECK(r.traces == iris(oracle::query_cases(log, q)));
        std::set<std::pair<std::string, std::map<std::string, std::string>>> got;
        for (const auto& row : r.rows) got.emplace(row.trace, row.bindings);
        std::set<std::pair<std::string, std::map<std::string, std::string>>> want;
        for (const auto& [c, b] : expected) {
            std::map<std::string, std::string> m;
            for (const auto& [v, e] : b) m[v] = testing::event_iri(e);
            want.emplace(testing::trace_iri(c), m);
        }
        CHECK(got == want);

        // clause order never changes the matching traces (when still valid)
        auto shuffled = clauses;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::optional<QueryAst> reordered;
        try {
            reordered = parse_query(assemble(shuffled, ret));
        } catch (const QueryError&) {
        }
        if (reordered) CHECK(evaluate(*reordered, idx).traces == r.traces);
        // adding a clause never grows the result
        auto more = clauses;
        more.push_back("anyActivityOccurs(?t, {\"a\", \"b\"})");
        auto narrower = evaluate(parse_query(assemble(more, ret)), idx).traces;
        CHECK(std::includes(r.traces.begin(), r.traces.end(), narrower.begin(), narrower.end()));
    }
    CHECK(checked > 100);
}
