#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elkg/trace_index.hpp"
#include "elkg/value.hpp"

namespace elkg {

// ---------------------------------------------------------------- registry

enum class ConstraintKind {
    ActivityOccurs,
    AllActivitiesOccur,
    AnyActivityOccurs,
    ActivityOccursAtLeastNTimes,
    ActivityOccursAtMostNTimes,
    ActivityDoesNotOccur,
    ActivitiesCoOccurOrNoneOccurs,
    ActivitiesDoNotCoOccur,
    ActivityOccursAsStart,
    ActivityOccursAsEnd,
    ActivitiesDirectlyFollow,
    ActivitiesEventuallyFollow,
    ActivitiesAlwaysPrecede,
};

enum class ArgKind { Activity, ActivitySet, Count };

struct ConstraintInfo {
    ConstraintKind kind;
    std::string_view name;
    std::vector<ArgKind> args; // after the trace argument
    std::size_t witness_arity; // events bound per witness: 0, 1 or 2
    bool universal;            // rejects an empty activity set
};

std::span<const ConstraintInfo> constraint_registry();
const ConstraintInfo& constraint_info(ConstraintKind kind);
const ConstraintInfo* find_constraint(std::string_view name);

// One constraint with its arguments. Single-activity arguments go in `a`
// (first) and `b` (second, for the follow relations); sets go in `a` and,
// for activitiesAlwaysPrecede, `b`.
struct ConstraintCall {
    ConstraintKind kind = ConstraintKind::ActivityOccurs;
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::int64_t count = 0;
};

// Throws ValidationError for a wrong argument shape, an empty set on a
// universal constraint, or a negative/zero count where not allowed.
void check_arguments(const ConstraintCall& call);

// ---------------------------------------------------------------- evaluation

// A call with activities resolved against one index; unknown activities
// never occur.
struct ResolvedCall {
    ConstraintKind kind;
    std::vector<std::optional<ActivityId>> a;
    std::vector<std::optional<ActivityId>> b;
    std::int64_t count = 0;

    static ResolvedCall resolve(const TraceIndex& idx, const ConstraintCall& call);
};

// 1-based event positions; only the first `witness_arity` slots are used.
using Witness = std::array<std::size_t, 2>;

bool holds(const IndexedTrace& trace, const ResolvedCall& call);

// Calls `visit` for each witness in position order until it returns false.
// Constraints without witnesses report a single empty witness when they
// hold. Returns false if `visit` stopped the enumeration.
bool for_each_witness(const IndexedTrace& trace, const ResolvedCall& call,
                      const std::function<bool(const Witness&)>& visit);

std::vector<Witness> witnesses(const IndexedTrace& trace, const ResolvedCall& call);

// Trace-level form: throws std::out_of_range for an unknown trace.
bool holds(const TraceIndex& idx, std::string_view trace, const ConstraintCall& call);
// Log-level form: IRIs of every matching trace.
std::set<std::string> matching_traces(const TraceIndex& idx, const ConstraintCall& call);

// ---------------------------------------------------------------- named operations

bool activity_occurs(const TraceIndex& idx, std::string_view trace, std::string_view a);
std::vector<std::size_t> activity_occurs_witnesses(const TraceIndex& idx, std::string_view trace,
                                                   std::string_view a);
bool all_activities_occur(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A);
bool any_activity_occurs(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A);
bool activity_occurs_at_least_n_times(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                      std::int64_t k);
bool activity_occurs_at_most_n_times(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                     std::int64_t k);
bool activity_does_not_occur(const TraceIndex& idx, std::string_view trace, std::string_view a);
bool activities_co_occur_or_none_occurs(const TraceIndex& idx, std::string_view trace,
                                        const std::vector<std::string>& A);
bool activities_do_not_co_occur(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A);
bool activity_occurs_as_start(const TraceIndex& idx, std::string_view trace, std::string_view a);
bool activity_occurs_as_end(const TraceIndex& idx, std::string_view trace, std::string_view a);
bool activities_directly_follow(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                std::string_view b);
std::vector<std::pair<std::size_t, std::size_t>> activities_directly_follow_witnesses(
    const TraceIndex& idx, std::string_view trace, std::string_view a, std::string_view b);
bool activities_eventually_follow(const TraceIndex& idx, std::string_view trace, std::string_view a,
                                  std::string_view b);
std::vector<std::pair<std::size_t, std::size_t>> activities_eventually_follow_witnesses(
    const TraceIndex& idx, std::string_view trace, std::string_view a, std::string_view b);
bool activities_always_precede(const TraceIndex& idx, std::string_view trace, const std::vector<std::string>& A,
                               const std::vector<std::string>& B);

// timestamp(second) - timestamp(first), for 1-based positions.
Duration time_between(const IndexedTrace& trace, std::size_t first, std::size_t second);
Duration time_between(const TraceIndex& idx, std::string_view trace, std::size_t first, std::size_t second);

} // namespace elkg
