#include "elkg/constraints.hpp"

#include <algorithm>
#include <stdexcept>

#include "elkg/error.hpp"

namespace elkg {

namespace {

using enum ArgKind;

const std::vector<ConstraintInfo>& registry() {
    static const std::vector<ConstraintInfo> r{
        {ConstraintKind::ActivityOccurs, "activityOccurs", {Activity}, 1, false},
        {ConstraintKind::AllActivitiesOccur, "allActivitiesOccur", {ActivitySet}, 0, true},
        {ConstraintKind::AnyActivityOccurs, "anyActivityOccurs", {ActivitySet}, 0, false},
        {ConstraintKind::ActivityOccursAtLeastNTimes, "activityOccursAtLeastNTimes", {Activity, Count}, 0, false},
        {ConstraintKind::ActivityOccursAtMostNTimes, "activityOccursAtMostNTimes", {Activity, Count}, 0, false},
        {ConstraintKind::ActivityDoesNotOccur, "activityDoesNotOccur", {Activity}, 0, false},
        {ConstraintKind::ActivitiesCoOccurOrNoneOccurs, "activitiesCoOccurOrNoneOccurs", {ActivitySet}, 0, true},
        {ConstraintKind::ActivitiesDoNotCoOccur, "activitiesDoNotCoOccur", {ActivitySet}, 0, true},
        {ConstraintKind::ActivityOccursAsStart, "activityOccursAsStart", {Activity}, 1, false},
        {ConstraintKind::ActivityOccursAsEnd, "activityOccursAsEnd", {Activity}, 1, false},
        {ConstraintKind::ActivitiesDirectlyFollow, "activitiesDirectlyFollow", {Activity, Activity}, 2, false},
        {ConstraintKind::ActivitiesEventuallyFollow, "activitiesEventuallyFollow", {Activity, Activity}, 2, false},
        {ConstraintKind::ActivitiesAlwaysPrecede, "activitiesAlwaysPrecede", {ActivitySet, ActivitySet}, 0, true},
    };
    return r;
}

} // namespace

std::span<const ConstraintInfo> constraint_registry() {
    return registry();
}

const ConstraintInfo& constraint_info(ConstraintKind kind) {
    return registry().at(static_cast<std::size_t>(kind));
}

const ConstraintInfo* find_constraint(std::string_view name) {
    for (const auto& c : registry())
        if (c.name == name) return &c;
    return nullptr;
}

void check_arguments(const ConstraintCall& call) {
    const auto& info = constraint_info(call.kind);
    std::string name(info.name);
    using K = ConstraintKind;
    switch (call.kind) {
    case K::ActivityOccurs:
    case K::ActivityDoesNotOccur:
    case K::ActivityOccursAsStart:
    case K::ActivityOccursAsEnd:
    case K::ActivityOccursAtLeastNTimes:
    case K::ActivityOccursAtMostNTimes:
        if (call.a.size() != 1 || !call.b.empty()) throw ValidationError(name + ": expects one activity");
        break;
    case K::ActivitiesDirectlyFollow:
    case K::ActivitiesEventuallyFollow:
        if (call.a.size() != 1 || call.b.size() != 1) throw ValidationError(name + ": expects two activities");
        break;
    case K::AllActivitiesOccur:
    case K::AnyActivityOccurs:
    case K::ActivitiesCoOccurOrNoneOccurs:
    case K::ActivitiesDoNotCoOccur:
        if (!call.b.empty()) throw ValidationError(name + ": expects one activity set");
        break;
    case K::ActivitiesAlwaysPrecede:
        break;
    }
    if (info.universal && (call.a.empty() || (call.kind == K::ActivitiesAlwaysPrecede && call.b.empty())))
        throw ValidationError(name + ": activity set must not be empty");
    if (call.kind == K::ActivityOccursAtLeastNTimes && call.count < 1)
        throw ValidationError(name + ": count must be a positive integer");
    if (call.kind == K::ActivityOccursAtMostNTimes && call.count < 0)
        throw ValidationError(name + ": count must not be negative");
}

ResolvedCall ResolvedCall::resolve(const TraceIndex& idx, const ConstraintCall& call) {
    check_arguments(call);
    ResolvedCall r{call.kind, {}, {}, call.count};
    for (const auto& x : call.a) r.a.push_back(idx.activity(x));
    for (const auto& x : call.b) r.b.push_back(idx.activity(x));
    return r;
}

namespace {

std::span<const std::size_t> positions(const IndexedTrace& t, const std::optional<ActivityId>& a) {
    if (!a) return {};
    return t.positions_of(*a);
}

bool occurs(const IndexedTrace& t, const std::optional<ActivityId>& a) {
    return !positions(t, a).empty();
}

bool all_occur(const IndexedTrace& t, const std::vector<std::optional<ActivityId>>& as) {
    return std::all_of(as.begin(), as.end(), [&](const auto& a) { return occurs(t, a); });
}

bool none_occur(const IndexedTrace& t, const std::vector<std::optional<ActivityId>>& as) {
    return std::none_of(as.begin(), as.end(), [&](const auto& a) { return occurs(t, a); });
}

bool activity_at(const IndexedTrace& t, std::size_t pos, const std::optional<ActivityId>& a) {
    return a && pos >= 1 && pos <= t.events.size() && t.events[pos - 1].activity == *a;
}

} // namespace

bool holds(const IndexedTrace& t, const ResolvedCall& c) {
    using K = ConstraintKind;
    switch (c.kind) {
    case K::ActivityOccurs:
        return occurs(t, c.a[0]);
    case K::AllActivitiesOccur:
        return all_occur(t, c.a);
    case K::AnyActivityOccurs:
        return !none_occur(t, c.a);
    case K::ActivityOccursAtLeastNTimes:
        return static_cast<std::int64_t>(positions(t, c.a[0]).size()) >= c.count;
    case K::ActivityOccursAtMostNTimes:
        return static_cast<std::int64_t>(positions(t, c.a[0]).size()) <= c.count;
    case K::ActivityDoesNotOccur:
        return !occurs(t, c.a[0]);
    case K::ActivitiesCoOccurOrNoneOccurs:
        return all_occur(t, c.a) || none_occur(t, c.a);
    case K::ActivitiesDoNotCoOccur:
        return !all_occur(t, c.a);
    case K::ActivityOccursAsStart:
        return activity_at(t, 1, c.a[0]);
    case K::ActivityOccursAsEnd:
        return activity_at(t, t.events.size(), c.a[0]);
    case K::ActivitiesDirectlyFollow:
        for (auto p : positions(t, c.a[0]))
            if (activity_at(t, p + 1, c.b[0])) return true;
        return false;
    case K::ActivitiesEventuallyFollow: {
        auto pa = positions(t, c.a[0]);
        auto pb = positions(t, c.b[0]);
        return !pa.empty() && !pb.empty() && pa.front() < pb.back();
    }
    case K::ActivitiesAlwaysPrecede: {
        if (!all_occur(t, c.a) || !all_occur(t, c.b)) return false;
        std::size_t last_a = 0;
        std::size_t first_b = t.events.size() + 1;
        for (const auto& a : c.a) last_a = std::max(last_a, positions(t, a).back());
        for (const auto& b : c.b) first_b = std::min(first_b, positions(t, b).front());
        return last_a < first_b;
    }
    }
    return false;
}

bool for_each_witness(const IndexedTrace& t, const ResolvedCall& c, const std::function<bool(const Witness&)>& visit) {
    using K = ConstraintKind;
    switch (c.kind) {
    case K::ActivityOccurs:
        for (auto p : positions(t, c.a[0]))
            if (!visit({p, 0})) return false;
        return true;
    case K::ActivityOccursAsStart:
        if (activity_at(t, 1, c.a[0])) return visit({1, 0});
        return true;
    case K::ActivityOccursAsEnd:
        if (activity_at(t, t.events.size(), c.a[0])) return visit({t.events.size(), 0});
        return true;
    case K::ActivitiesDirectlyFollow:
        for (auto p : positions(t, c.a[0]))
            if (activity_at(t, p + 1, c.b[0]) && !visit({p, p + 1})) return false;
        return true;
    case K::ActivitiesEventuallyFollow: {
        auto pb = positions(t, c.b[0]);
        for (auto p : positions(t, c.a[0])) {
            for (auto it = std::upper_bound(pb.begin(), pb.end(), p); it != pb.end(); ++it)
                if (!visit({p, *it})) return false;
        }
        return true;
    }
    default:
        if (holds(t, c)) return visit({0, 0});
        return true;
    }
}

std::vector<Witness> witnesses(const IndexedTrace& trace, const ResolvedCall& call) {
    std::vector<Witness> out;
    for_each_witness(trace, call, [&](const Witness& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

bool holds(const TraceIndex& idx, std::string_view trace, const ConstraintCall& call) {
    return holds(idx.trace(trace), ResolvedCall::resolve(idx, call));
}

std::set<std::string> matching_traces(const TraceIndex& idx, const ConstraintCall& call) {
    auto resolved = ResolvedCall::resolve(idx, call);
    std::set<std::string> out;
    for (const auto& t : idx.traces())
        if (holds(t, resolved)) out.insert(t.iri);
    return out;
}

namespace {

ConstraintCall single(ConstraintKind k, std::string_view a) {
    return ConstraintCall{k, {std::string(a)}, {}, 0};
}

ConstraintCall pair(ConstraintKind k, std::string_view a, std::string_view b) {
    return ConstraintCall{k, {std::string(a)}, {std::string(b)}, 0};
}

std::vector<std::pair<std::size_t, std::size_t>> pair_witnesses(const TraceIndex& idx, std::string_view trace,
                                                                 const ConstraintCall& call) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& w : witnesses(idx.trace(trace), ResolvedCall::resolve(idx, call))) out.emplace_back(w[0], w[1]);
    return out;
}

} // namespace

bool activity_occurs(const TraceIndex& idx, std::string_view trace, std::string_view a) {
    return holds(idx, trace, single(ConstraintKind::ActivityOccurs, a));
}

std::vector<std::size_t> activity_occurs_witnesses(const TraceIndex& idx, std::string_view trace,
                                                   std::string_view a) {
    std::vector<std::size_t> out;
    auto call = ResolvedCall::resolve(idx, single(ConstraintKind::ActivityOccurs, a));
    for (const auto& w : witnesses(idx.trace(trace), call)) out.push_back(w[0]);
    return out;
}

bool all_activities_occur(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::AllActivitiesOccur, A, {}, 0});
}

bool any_activity_occurs(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::AnyActivityOccurs, A, {}, 0});
}

bool activity_occurs_at_least_n_times(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                      std::int64_t k) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::ActivityOccursAtLeastNTimes, {std::string(a)}, {}, k});
}

bool activity_occurs_at_most_n_times(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                     std::int64_t k) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::ActivityOccursAtMostNTimes, {std::string(a)}, {}, k});
}

bool activity_does_not_occur(const TraceIndex& idx, std::string_view trace, std::string_view a) {
    return holds(idx, trace, single(ConstraintKind::ActivityDoesNotOccur, a));
}

bool activities_co_occur_or_none_occurs(const TraceIndex& idx, std::string_view trace,
                                        const std::vector<std::string>& A) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::ActivitiesCoOccurOrNoneOccurs, A, {}, 0});
}

bool activities_do_not_co_occur(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::ActivitiesDoNotCoOccur, A, {}, 0});
}

bool activity_occurs_as_start(const TraceIndex& idx, std::string_view trace, std::string_view a) {
    return holds(idx, trace, single(ConstraintKind::ActivityOccursAsStart, a));
}

bool activity_occurs_as_end(const TraceIndex& idx, std::string_view trace, std::string_view a) {
    return holds(idx, trace, single(ConstraintKind::ActivityOccursAsEnd, a));
}

bool activities_directly_follow(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                std::string_view b) {
    return holds(idx, trace, pair(ConstraintKind::ActivitiesDirectlyFollow, a, b));
}

std::vector<std::pair<std::size_t, std::size_t>> activities_directly_follow_witnesses(
    const TraceIndex& idx, std::string_view trace, std::string_view a, std::string_view b) {
    return pair_witnesses(idx, trace, pair(ConstraintKind::ActivitiesDirectlyFollow, a, b));
}

bool activities_eventually_follow(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                  std::string_view b) {
    return holds(idx, trace, pair(ConstraintKind::ActivitiesEventuallyFollow, a, b));
}

std::vector<std::pair<std::size_t, std::size_t>> activities_eventually_follow_witnesses(
    const TraceIndex& idx, std::string_view trace, std::string_view a, std::string_view b) {
    return pair_witnesses(idx, trace, pair(ConstraintKind::ActivitiesEventuallyFollow, a, b));
}

bool activities_always_precede(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A,
                               const std::vector<std::string>& B) {
    return holds(idx, trace, ConstraintCall{ConstraintKind::ActivitiesAlwaysPrecede, A, B, 0});
}

Duration time_between(const IndexedTrace& trace, std::size_t first, std::size_t second) {
    if (first < 1 || first > trace.events.size() || second < 1 || second > trace.events.size())
        throw std::out_of_range("event position out of range for trace <" + trace.iri + ">");
    return trace.events[second - 1].timestamp - trace.events[first - 1].timestamp;
}

Duration time_between(const TraceIndex& idx, std::string_view trace, std::size_t first, std::size_t second) {
    return time_between(idx.trace(trace), first, second);
}

} // namespace elkg
