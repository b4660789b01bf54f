#pragma once

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "elkg/convert.hpp"
#include "elkg/iri.hpp"
#include "elkg/log.hpp"
#include "elkg/perspective.hpp"
#include "elkg/trace_index.hpp"

namespace testing {

using namespace elkg;

inline const IriScheme& ex_scheme() {
    static const IriScheme s{"ex", "http://example.org/ex#"};
    return s;
}

inline std::string trace_iri(const std::string& case_id) {
    return ex_scheme().base + "trace_" + sanitize_local_name(case_id);
}
inline std::string event_iri(const std::string& event_id) {
    return ex_scheme().base + "event_" + sanitize_local_name(event_id);
}

inline Instant minute(std::int64_t m) {
    return Instant{std::chrono::minutes(m)} + std::chrono::hours(24 * 365 * 44);
}

inline std::string pad(std::size_t n, int width = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, n);
    return buf;
}

// One trace per entry, events one minute apart in the given order.
inline CaseLog make_log(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
    CaseLog log;
    for (const auto& [case_id, acts] : rows) {
        Trace t;
        t.case_id = case_id;
        for (std::size_t i = 0; i < acts.size(); ++i)
            t.events.push_back(Event{case_id + "_" + pad(i), acts[i], minute(static_cast<std::int64_t>(i)), {}});
        log.traces.push_back(std::move(t));
    }
    normalize(log);
    return log;
}

inline TraceIndex index_of(const CaseLog& log) {
    return TraceIndex::build(ccel_to_elkg(log, ex_scheme()));
}

inline std::vector<std::string> alphabet(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

// Random log: timestamps drawn from a small range so ties are common, plus a
// few typed attributes.
inline CaseLog random_case_log(std::mt19937& rng, std::size_t max_traces, std::size_t max_events,
                               std::size_t max_alphabet) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    auto acts = alphabet(pick(1, max_alphabet));
    CaseLog log;
    std::size_t traces = pick(0, max_traces);
    for (std::size_t t = 0; t < traces; ++t) {
        Trace tr;
        tr.case_id = "c" + pad(t);
        std::size_t n = pick(0, max_events);
        for (std::size_t i = 0; i < n; ++i) {
            Event e;
            e.id = tr.case_id + "_" + pad(pick(0, 999));
            while (std::any_of(tr.events.begin(), tr.events.end(), [&](const Event& o) { return o.id == e.id; }))
                e.id = tr.case_id + "_" + pad(pick(0, 999));
            e.activity = acts[pick(0, acts.size() - 1)];
            e.timestamp = minute(static_cast<std::int64_t>(pick(0, 3 * max_events)));
            if (pick(0, 1)) e.attributes["age"] = Value(static_cast<std::int64_t>(pick(0, 100)));
            if (pick(0, 2) == 0) e.attributes["flag"] = Value(pick(0, 1) == 1);
            if (pick(0, 3) == 0) e.attributes["org"] = Value(std::string(pick(0, 1) ? "A" : "B"));
            if (pick(0, 3) == 0) e.attributes["cost"] = Value(Decimal::from_double(static_cast<double>(pick(0, 400)) / 4));
            tr.events.push_back(std::move(e));
        }
        log.traces.push_back(std::move(tr));
    }
    normalize(log);
    return log;
}

inline OcelLog random_object_graph(std::mt19937& rng, std::size_t max_objects, std::size_t max_links,
                                   std::size_t max_qualifiers) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    OcelLog log;
    std::size_t n = pick(1, max_objects);
    std::size_t q = pick(1, max_qualifiers);
    for (std::size_t i = 0; i < n; ++i) log.objects.push_back(OcelObject{"o" + pad(i), "t" + std::to_string(pick(0, 2)), {}, {}});
    std::size_t links = pick(0, max_links);
    for (std::size_t i = 0; i < links; ++i) {
        auto& from = log.objects[pick(0, n - 1)];
        from.o2o.push_back(QualifiedLink{"q" + std::to_string(pick(0, q - 1)), log.objects[pick(0, n - 1)].id});
    }
    return log;
}

inline PathStep random_step(std::mt19937& rng, std::size_t depth, std::size_t qualifiers) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    auto leaf = [&] {
        // occasionally a qualifier that never occurs
        std::string qual = pick(0, 9) == 0 ? "missing" : "q" + std::to_string(pick(0, qualifiers - 1));
        return rel(pick(0, 1) ? Direction::Forward : Direction::Reverse, qual);
    };
    if (depth == 0) return leaf();
    switch (pick(0, 2)) {
    case 0: return leaf();
    case 1: {
        std::vector<PathStep> s;
        for (std::size_t i = pick(1, 3); i > 0; --i) s.push_back(random_step(rng, depth - 1, qualifiers));
        return alt(std::move(s));
    }
    default: {
        std::vector<PathStep> s;
        for (std::size_t i = pick(1, 3); i > 0; --i) s.push_back(random_step(rng, depth - 1, qualifiers));
        return path(std::move(s));
    }
    }
}

// Small purchase-to-pay log: one object per type, one event
// per activity.
inline OcelLog p2p_micro_log() {
    OcelLog log;
    auto obj = [&](std::string id, std::string type, std::vector<QualifiedLink> o2o) {
        log.objects.push_back(OcelObject{std::move(id), std::move(type), {}, std::move(o2o)});
    };
    obj("PR1", "purchase_requisition", {{"quotation", "Q1"}});
    obj("Q1", "quotation", {{"purchase order", "PO1"}});
    obj("PO1", "purchase_order", {{"invoice receipt", "IR1"}, {"payment", "PAY1"}});
    obj("GR1", "goods_receipt", {{"goods receipt", "PO1"}});
    obj("IR1", "invoice_receipt", {});
    obj("PAY1", "payment", {});
    obj("M1", "material", {}); // linked only by E2O, not on the path
    auto ev = [&](std::string id, std::string type, std::int64_t m, std::vector<QualifiedLink> e2o) {
        log.events.push_back(OcelEvent{std::move(id), std::move(type), minute(m), {}, std::move(e2o)});
    };
    ev("e1", "Create Purchase Requisition", 0, {{"pr", "PR1"}, {"material", "M1"}});
    ev("e2", "Approve Purchase Requisition", 1, {{"pr", "PR1"}});
    ev("e3", "Create Request for Quotation", 2, {{"quotation", "Q1"}, {"pr", "PR1"}});
    ev("e4", "Create Purchase Order", 3, {{"po", "PO1"}, {"quotation", "Q1"}});
    ev("e5", "Receive Goods", 4, {{"gr", "GR1"}, {"po", "PO1"}});
    ev("e6", "Receive Invoice", 5, {{"ir", "IR1"}});
    ev("e7", "Execute Payment", 6, {{"payment", "PAY1"}});
    ev("e8", "Plan Goods Issue", 7, {{"material", "M1"}});
    return log;
}

inline Perspective p2p_perspective() {
    return Perspective{"purchase_requisition",
                       Path{{rel(Direction::Forward, "quotation"), rel(Direction::Forward, "purchase order"),
                             alt({rel(Direction::Forward, "invoice receipt"), rel(Direction::Forward, "payment"),
                                  rel(Direction::Reverse, "goods receipt")})}}};
}

inline const char* maverick_query = R"(# purchase requisitions created without approval
MATCH TRACE ?t
WHERE activityOccurs(?t, "Create Purchase Requisition")
  AND activityDoesNotOccur(?t, "Approve Purchase Requisition")
RETURN ?t
)";

inline const char* sepsis_query = R"(MATCH TRACE ?t
WHERE activityOccurs(?t, "LacticAcid") AS ?la
  AND activityOccurs(?t, "CRP") AS ?crp
  AND activitiesDirectlyFollow(?t, "Admission NC", "Admission IC") AS ?r
  AND activityOccurs(?t, "ER Registration") AS ?reg
  AND attr(?reg, "Age") >= 65
  AND attr(?reg, "InfectionSuspected") = true
RETURN ?t
)";

// Three P2P-like traces; only "maverick" creates a requisition without
// approving it.
inline CaseLog maverick_log() {
    return make_log({{"approved", {"Create Purchase Requisition", "Approve Purchase Requisition", "Create Purchase Order"}},
                     {"maverick", {"Create Purchase Requisition", "Create Purchase Order", "Receive Goods"}},
                     {"no_requisition", {"Create Purchase Order", "Approve Purchase Requisition"}}});
}

// Sepsis-like traces, each breaking one condition of the sepsis query,
// plus the planted match.
inline CaseLog sepsis_log() {
    struct Row {
        std::string id;
        std::vector<std::string> acts;
        std::int64_t age;
        bool infection;
    };
    const std::vector<std::string> full{"ER Registration", "ER Triage", "LacticAcid", "CRP", "Admission NC", "Admission IC", "Release A"};
    std::vector<Row> rows{
        {"planted", full, 72, true},
        {"too_young", full, 40, true},
        {"no_infection", full, 80, false},
        {"no_lactic", {"ER Registration", "CRP", "Admission NC", "Admission IC"}, 70, true},
        {"no_crp", {"ER Registration", "LacticAcid", "Admission NC", "Admission IC"}, 70, true},
        {"gap", {"ER Registration", "LacticAcid", "CRP", "Admission NC", "Leucocytes", "Admission IC"}, 70, true},
        {"reversed", {"ER Registration", "LacticAcid", "CRP", "Admission IC", "Admission NC"}, 70, true},
        {"edge_age", {"ER Registration", "CRP", "Admission NC", "Admission IC", "LacticAcid"}, 65, true},
    };
    CaseLog log;
    for (const auto& r : rows) {
        Trace t;
        t.case_id = r.id;
        for (std::size_t i = 0; i < r.acts.size(); ++i) {
            Event e{r.id + "_" + pad(i), r.acts[i], minute(static_cast<std::int64_t>(i) * 30), {}};
            if (r.acts[i] == "ER Registration") {
                e.attributes["Age"] = Value(r.age);
                e.attributes["InfectionSuspected"] = Value(r.infection);
            }
            if (r.acts[i] == "CRP") e.attributes["CRP"] = Value(Decimal::from_double(21.5));
            t.events.push_back(std::move(e));
        }
        log.traces.push_back(std::move(t));
    }
    normalize(log);
    return log;
}

} // namespace testing
