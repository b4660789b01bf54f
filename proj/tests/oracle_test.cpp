#include <doctest.h>

#include "elkg/oracle.hpp"
#include "support.hpp"

using namespace elkg;
using S = std::set<std::string>;

TEST_CASE("oracle constraints by inspection") {
    CaseLog log = testing::make_log({{"1", {"a", "b"}}, {"2", {"b", "c"}}});
    CHECK(oracle::constraint(log, "activityOccurs", {{"a"}, {}, 0}) == S{"1"});
    CHECK(oracle::constraint(log, "activityDoesNotOccur", {{"a"}, {}, 0}) == S{"2"});
    CHECK(oracle::constraint(log, "anyActivityOccurs", {{"c"}, {}, 0}) == S{"2"});
    CHECK(oracle::constraint(log, "activitiesEventuallyFollow", {{"b"}, {"c"}, 0}) == S{"2"});
    CHECK(oracle::constraint(log, "activitiesAlwaysPrecede", {{"a"}, {"b"}, 0}) == S{"1"});
    CHECK_THROWS_AS(oracle::constraint(log, "nope", {}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::constraint(CaseLog{}, "nope", {}), std::invalid_argument);
}

TEST_CASE("oracle collect") {
    OcelLog log;
    log.objects = {{"PR1", "pr", {}, {{"quotation", "Q1"}}},
                   {"Q1", "q", {}, {{"purchase order", "PO1"}}},
                   {"PO1", "po", {}, {}},
                   {"GR1", "gr", {}, {{"goods receipt", "PO1"}}}};
    CHECK(oracle::collect(log, "PR1", rel(Direction::Forward, "quotation")) == S{"Q1"});
    CHECK(oracle::collect(log, "PO1", rel(Direction::Reverse, "goods receipt")) == S{"GR1"});
    CHECK(oracle::collect(log, "PR1", path({rel(Direction::Forward, "quotation"), rel(Direction::Forward, "purchase order")})) ==
          S{"Q1", "PO1"});
    CHECK(oracle::collect(log, "PR1", alt({rel(Direction::Forward, "x"), rel(Direction::Reverse, "y")})).empty());
    auto once = rel(Direction::Forward, "quotation");
    CHECK(oracle::collect(log, "PR1", alt({once, once})) == oracle::collect(log, "PR1", once));
    OcelLog bare;
    bare.objects = {{"A", "t", {}, {}}};
    CHECK(oracle::collect(bare, "A", rel(Direction::Forward, "q")).empty());
    CHECK_THROWS(oracle::collect(bare, "B", rel(Direction::Forward, "q")));
}

TEST_CASE("oracle query") {
    CaseLog log = testing::make_log({{"1", {"a", "b", "a"}}, {"2", {"b", "a"}}});
    log.traces[0].events[0].attributes["n"] = Value(std::int64_t{3});
    log.traces[0].events[2].attributes["n"] = Value(std::int64_t{7});
    auto rows = oracle::query(log, parse_query(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS ?x
        AND attr(?x, "n") > 5 RETURN ?t, ?x)"));
    REQUIRE(rows.size() == 1);
    CHECK(rows.begin()->first == "1");
    CHECK(rows.begin()->second.at("?x") == "1_002");
    CHECK(oracle::query_cases(log, parse_query(R"(MATCH TRACE ?t WHERE activitiesDirectlyFollow(?t, "b", "a") AS ?x
        RETURN ?t)")) == S{"1", "2"});
    // string compared with a number is simply false
    CHECK(oracle::query_cases(log, parse_query(R"(MATCH TRACE ?t WHERE activityOccurs(?t, "a") AS ?x
        AND attr(?x, "n") = "3" RETURN ?t)")).empty());
}
