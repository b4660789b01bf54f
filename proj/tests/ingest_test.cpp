#include <doctest.h>

#include "elkg/error.hpp"
#include "elkg/ingest.hpp"

using namespace elkg;

namespace {

std::string xes(const std::string& traces) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log xes.version=\"2.0\">\n"
           "<extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
           "<global scope=\"event\"><string key=\"concept:name\" value=\"__INVALID__\"/></global>\n"
           "<classifier name=\"Activity\" keys=\"concept:name\"/>\n" +
           traces + "</log>\n";
}

} // namespace

TEST_CASE("xes: one trace, two ordered events") {
    CaseLog log = parse_xes(xes(R"(<trace><string key="concept:name" value="A"/>
  <event><string key="concept:name" value="ER Registration"/><date key="time:timestamp" value="2014-10-22T11:15:41.000+02:00"/></event>
  <event><string key="concept:name" value="Leucocytes"/><date key="time:timestamp" value="2014-10-22T11:27:00.000+02:00"/></event>
</trace>)"));
    REQUIRE(log.traces.size() == 1);
    CHECK(log.traces[0].case_id == "A");
    REQUIRE(log.traces[0].events.size() == 2);
    CHECK(log.traces[0].events[0].activity == "ER Registration");
    CHECK(log.traces[0].events[1].activity == "Leucocytes");
    CHECK(format_instant(log.traces[0].events[0].timestamp) == "2014-10-22T09:15:41+00:00");
}

TEST_CASE("xes: out-of-order events are re-sorted") {
    CaseLog log = parse_xes(xes(R"(<trace><string key="concept:name" value="A"/>
  <event><string key="concept:name" value="late"/><date key="time:timestamp" value="2020-01-01T10:00:00Z"/></event>
  <event><string key="concept:name" value="early"/><date key="time:timestamp" value="2020-01-01T11:00:00+02:00"/></event>
  <event><string key="concept:name" value="tie"/><date key="time:timestamp" value="2020-01-01T10:00:00Z"/></event>
</trace>)"));
    const auto& ev = log.traces.at(0).events;
    REQUIRE(ev.size() == 3);
    CHECK(ev[0].activity == "early");
    CHECK(ev[1].activity == "late"); // tie broken by document order ids
    CHECK(ev[2].activity == "tie");
    for (std::size_t i = 1; i < ev.size(); ++i) CHECK(event_before(ev[i - 1], ev[i]));
}

TEST_CASE("xes: typed attributes") {
    CaseLog log = parse_xes(xes(R"(<trace><string key="concept:name" value="A"/><string key="note" value="t"/>
  <event><string key="concept:name" value="ER Registration"/><date key="time:timestamp" value="2014-10-22T11:15:41Z"/>
    <boolean key="InfectionSuspected" value="true"/><int key="Age" value="85"/><float key="CRP" value="21.0"/>
    <string key="org:group" value="A"/><string key="lifecycle:transition" value="complete"/>
    <date key="seen" value="2014-10-22T11:00:00Z"/><list key="ignored"><string key="x" value="y"/></list></event>
</trace>)"));
    const auto& e = log.traces.at(0).events.at(0);
    CHECK(std::get<bool>(e.attributes.at("InfectionSuspected")) == true);
    CHECK(std::get<std::int64_t>(e.attributes.at("Age")) == 85);
    CHECK(std::get<Decimal>(e.attributes.at("CRP")).value == doctest::Approx(21.0));
    CHECK(std::get<std::string>(e.attributes.at("org:group")) == "A");
    CHECK(std::get<std::string>(e.attributes.at("lifecycle:transition")) == "complete");
    CHECK(std::holds_alternative<Instant>(e.attributes.at("seen")));
    CHECK_FALSE(e.attributes.contains("concept:name"));
    CHECK_FALSE(e.attributes.contains("time:timestamp"));
    CHECK(log.traces[0].attributes.contains("note"));
}

TEST_CASE("xes: errors") {
    CHECK_THROWS_AS(parse_xes("<log><trace>"), ParseError);
    CHECK_THROWS_AS(parse_xes(xes(R"(<trace><event><string key="concept:name" value="a"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event></trace>)")),
                    std::exception);
    CHECK_THROWS_WITH(parse_xes(xes(R"(<trace><string key="concept:name" value="A"/><event><string key="concept:name" value="a"/></event></trace>)")),
                      doctest::Contains("timestamp"));
    CHECK_THROWS_WITH(parse_xes(xes(R"(<trace><string key="concept:name" value="A"/><event><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event></trace>)")),
                      doctest::Contains("concept:name"));
    CHECK_THROWS(parse_xes(xes(R"(<trace><string key="concept:name" value="A"/><event><string key="concept:name" value="a"/><date key="time:timestamp" value="yesterday"/></event></trace>)")));
}

TEST_CASE("xes parsing is deterministic") {
    std::string doc = xes(R"(<trace><string key="concept:name" value="A"/>
  <event><string key="concept:name" value="x"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/><int key="n" value="1"/></event>
</trace>)");
    auto a = parse_xes(doc), b = parse_xes(doc);
    CHECK(a.traces[0].events[0].id == b.traces[0].events[0].id);
    CHECK(a.traces[0].events[0].attributes == b.traces[0].events[0].attributes);
}

namespace {

const char* ocel = R"({
  "objectTypes": [{"name": "purchase_requisition", "attributes": [{"name": "amount", "type": "float"}]},
                  {"name": "quotation", "attributes": []}],
  "eventTypes": [{"name": "Create Purchase Requisition", "attributes": [{"name": "prio", "type": "integer"}]}],
  "objects": [
    {"id": "PR1", "type": "purchase_requisition",
     "attributes": [{"name": "amount", "time": "2022-01-01T00:00:00Z", "value": "10.5"},
                    {"name": "amount", "time": "2022-03-01T00:00:00Z", "value": "12.0"},
                    {"name": "amount", "time": "2022-02-01T00:00:00Z", "value": "11.0"}],
     "relationships": [{"objectId": "Q1", "qualifier": "quotation"}]},
    {"id": "Q1", "type": "quotation"}
  ],
  "events": [
    {"id": "e1", "type": "Create Purchase Requisition", "time": "2022-01-09T15:00:00+01:00",
     "attributes": [{"name": "prio", "value": "3"}],
     "relationships": [{"objectId": "PR1", "qualifier": "pr"}, {"objectId": "Q1", "qualifier": "quote"}]}
  ]
})";

} // namespace

TEST_CASE("ocel2 json") {
    OcelLog log = parse_ocel2_json(ocel);
    REQUIRE(log.events.size() == 1);
    REQUIRE(log.objects.size() == 2);
    CHECK(log.events[0].e2o.size() == 2);
    CHECK(log.e2o_count() == 2);
    CHECK(log.objects[0].o2o == std::vector<QualifiedLink>{{"quotation", "Q1"}});
    CHECK(std::get<std::int64_t>(log.events[0].attributes.at("prio")) == 3);
    CHECK(std::get<Decimal>(log.objects[0].attributes.at("amount")).value == doctest::Approx(12.0));
    CHECK(format_instant(log.events[0].timestamp) == "2022-01-09T14:00:00+00:00");
}

TEST_CASE("ocel2 json errors") {
    CHECK_THROWS_WITH_AS(parse_ocel2_json(R"({"objects": [], "events": [
      {"id": "e1", "type": "x", "time": "2022-01-01T00:00:00Z", "relationships": [{"objectId": "ghost", "qualifier": "q"}]}]})"),
                         doctest::Contains("ghost"), ValidationError);
    CHECK_THROWS_AS(parse_ocel2_json(R"({"objects": [], "events": [{"id": "e1", "type": "x"}]})"), ParseError);
    CHECK_THROWS_AS(parse_ocel2_json(R"({"objects": [], "events": [{"id": "e1", "time": "2022-01-01T00:00:00Z"}]})"), ParseError);
    try {
        parse_ocel2_json("{\n  \"objects\": [,]\n}");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_ocel2_json(R"({"objects": [{"id": "a", "type": "t"}, {"id": "a", "type": "t"}], "events": []})"),
                    ValidationError);
}

TEST_CASE("values") {
    CHECK(parse_instant("2020-01-01T00:00:00Z") == parse_instant("2020-01-01T02:00:00+02:00"));
    CHECK(parse_instant("2020-01-01T00:00:00.250Z").has_value());
    CHECK(format_instant(*parse_instant("2020-01-01T00:00:00.250Z")) == "2020-01-01T00:00:00.250+00:00");
    CHECK_FALSE(parse_instant("2020-13-01T00:00:00Z").has_value());
    CHECK(parse_iso_duration("P7D") == std::chrono::hours(24 * 7));
    CHECK(parse_iso_duration("PT1H30M") == std::chrono::minutes(90));
    CHECK(parse_iso_duration("-PT1S") == std::chrono::seconds(-1));
    CHECK(parse_iso_duration("P1W") == std::chrono::hours(24 * 7));
    CHECK_FALSE(parse_iso_duration("P1Y").has_value());
    CHECK_FALSE(parse_iso_duration("P1M").has_value());
    CHECK_FALSE(parse_iso_duration("P").has_value());
}
