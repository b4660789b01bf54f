#include "elkg/trace_index.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "elkg/convert.hpp"
#include "elkg/error.hpp"
#include "elkg/iri.hpp"

namespace elkg {

std::span<const std::size_t> IndexedTrace::positions_of(ActivityId a) const {
    auto it = positions.find(a);
    if (it == positions.end()) return {};
    return it->second;
}

const IndexedTrace* TraceIndex::find(std::string_view iri) const {
    auto it = by_iri_.find(std::string(iri));
    if (it == by_iri_.end()) return nullptr;
    return &traces_[it->second];
}

const IndexedTrace& TraceIndex::trace(std::string_view iri) const {
    if (const auto* t = find(iri)) return *t;
    throw std::out_of_range("unknown trace '" + std::string(iri) + "'");
}

std::optional<ActivityId> TraceIndex::activity(std::string_view label) const {
    auto it = activity_ids_.find(sanitize_local_name(label));
    if (it == activity_ids_.end()) return std::nullopt;
    return it->second;
}

namespace {

struct EventInfo {
    IndexedEvent event;
    std::vector<TermId> next;
};

} // namespace

TraceIndex TraceIndex::build(const Graph& g) {
    TraceIndex idx;
    auto type = g.lookup(Term::resource(vocab::rdf_type));
    auto trace_class = g.lookup(Term::resource(vocab::tr_trace));
    if (!type || !trace_class) return idx;
    auto in = g.lookup(Term::resource(vocab::tr_in));
    auto next = g.lookup(Term::resource(vocab::tr_next));
    auto activity = g.lookup(Term::resource(vocab::tr_activity));
    auto timestamp = g.lookup(Term::resource(vocab::tr_timestamp));
    auto nil = g.lookup(Term::resource(vocab::rdf_nil));
    const std::string tr_ns(vocab::tr);

    std::unordered_map<TermId, EventInfo> cache;
    auto info_of = [&](TermId e) -> const EventInfo& {
        if (auto it = cache.find(e); it != cache.end()) return it->second;
        EventInfo info;
        const Term& subject = g.term(e);
        info.event.iri = subject.text();
        bool has_activity = false, has_time = false;
        for (const auto& t : g.with_subject(e)) {
            if (next && t.p == *next) {
                info.next.push_back(t.o);
            } else if (activity && t.p == *activity) {
                const Term& a = g.term(t.o);
                std::string name = a.is_literal() ? sanitize_local_name(a.text()) : std::string(local_name(a.text()));
                auto [it, inserted] = idx.activity_ids_.try_emplace(name, static_cast<ActivityId>(idx.activity_names_.size()));
                if (inserted) idx.activity_names_.push_back(name);
                if (has_activity && info.event.activity != it->second)
                    throw StructuralError("event " + to_string(subject) + " has more than one tr:activity");
                info.event.activity = it->second;
                has_activity = true;
            } else if (timestamp && t.p == *timestamp) {
                auto ts = parse_instant(g.term(t.o).text());
                if (!ts) throw StructuralError("event " + to_string(subject) + " has an unparsable tr:timestamp");
                info.event.timestamp = *ts;
                has_time = true;
            } else {
                const Term& pred = g.term(t.p);
                if (pred.text().starts_with(tr_ns) || pred.text() == vocab::rdf_type) continue;
                const Term& obj = g.term(t.o);
                Value v = obj.is_literal() ? term_value(obj) : Value(obj.text());
                info.event.attributes.insert_or_assign(std::string(local_name(pred.text())), std::move(v));
            }
        }
        if (!has_activity) throw StructuralError("event " + to_string(subject) + " has no tr:activity");
        if (!has_time) throw StructuralError("event " + to_string(subject) + " has no tr:timestamp");
        return cache.emplace(e, std::move(info)).first->second;
    };

    for (const auto& tt : g.with_predicate(*type, *trace_class)) {
        IndexedTrace trace;
        trace.iri = g.term(tt.s).text();
        std::vector<TermId> members;
        if (in) {
            for (const auto& m : g.with_predicate(*in, tt.s)) members.push_back(m.s);
        }
        std::unordered_set<TermId> member_set(members.begin(), members.end());

        // Kahn's algorithm over `next` links inside the trace; a unique
        // topological order is exactly a single linear chain.
        std::unordered_map<TermId, std::size_t> indegree;
        for (auto m : members) indegree.try_emplace(m, 0);
        for (auto m : members) {
            for (auto n : info_of(m).next) {
                if (member_set.contains(n)) ++indegree[n];
            }
        }
        std::vector<TermId> ready;
        for (auto m : members)
            if (indegree[m] == 0) ready.push_back(m);
        std::vector<TermId> order;
        order.reserve(members.size());
        while (!ready.empty()) {
            if (ready.size() > 1)
                throw StructuralError("trace <" + trace.iri + "> does not form a single `next` chain (" +
                                      to_string(g.term(ready[0])) + " and " + to_string(g.term(ready[1])) +
                                      " both lack a predecessor)");
            TermId cur = ready.back();
            ready.pop_back();
            order.push_back(cur);
            for (auto n : info_of(cur).next) {
                if (member_set.contains(n) && --indegree[n] == 0) ready.push_back(n);
            }
        }
        if (order.size() != members.size())
            throw StructuralError("trace <" + trace.iri + "> has a cycle in its `next` chain");
        if (!order.empty()) {
            const auto& last_next = info_of(order.back()).next;
            if (!nil || std::find(last_next.begin(), last_next.end(), *nil) == last_next.end())
                throw StructuralError("trace <" + trace.iri + "> does not end in rdf:nil");
        }

        trace.events.reserve(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            trace.events.push_back(info_of(order[i]).event);
            trace.positions[trace.events.back().activity].push_back(i + 1);
        }
        idx.traces_.push_back(std::move(trace));
    }

    std::sort(idx.traces_.begin(), idx.traces_.end(),
              [](const IndexedTrace& a, const IndexedTrace& b) { return a.iri < b.iri; });
    for (std::size_t i = 0; i < idx.traces_.size(); ++i) idx.by_iri_.emplace(idx.traces_[i].iri, i);
    return idx;
}

} // namespace elkg
