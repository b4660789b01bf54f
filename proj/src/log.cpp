#include "elkg/log.hpp"

#include <algorithm>
#include <unordered_set>

#include "elkg/error.hpp"

namespace elkg {

std::size_t CaseLog::event_count() const {
    std::size_t n = 0;
    for (const auto& t : traces) n += t.events.size();
    return n;
}

void normalize(CaseLog& log) {
    std::unordered_set<std::string> seen;
    for (auto& t : log.traces) {
        std::sort(t.events.begin(), t.events.end(), event_before);
        for (const auto& e : t.events) {
            if (!seen.insert(e.id).second) throw ValidationError("duplicate event id '" + e.id + "'");
        }
    }
}

std::size_t OcelLog::e2o_count() const {
    std::size_t n = 0;
    for (const auto& e : events) n += e.e2o.size();
    return n;
}

std::size_t OcelLog::o2o_count() const {
    std::size_t n = 0;
    for (const auto& o : objects) n += o.o2o.size();
    return n;
}

namespace {

constexpr std::size_t kMaxListed = 20;

void list_offender(std::string& msg, std::size_t& count, const std::string& item) {
    if (count < kMaxListed) {
        msg += count == 0 ? " " : ", ";
        msg += item;
    }
    ++count;
}

void finish(std::string& msg, std::size_t count) {
    if (count > kMaxListed) msg += ", ... (" + std::to_string(count) + " total)";
}

} // namespace

void validate(const OcelLog& log) {
    std::unordered_set<std::string> objects;
    std::string dup_msg = "duplicate object ids:";
    std::size_t dups = 0;
    for (const auto& o : log.objects) {
        if (!objects.insert(o.id).second) list_offender(dup_msg, dups, o.id);
    }
    if (dups) {
        finish(dup_msg, dups);
        throw ValidationError(dup_msg);
    }
    std::unordered_set<std::string> events;
    dup_msg = "duplicate event ids:";
    for (const auto& e : log.events) {
        if (!events.insert(e.id).second) list_offender(dup_msg, dups, e.id);
    }
    if (dups) {
        finish(dup_msg, dups);
        throw ValidationError(dup_msg);
    }

    std::string msg = "dangling object references:";
    std::size_t dangling = 0;
    for (const auto& e : log.events) {
        for (const auto& link : e.e2o) {
            if (!objects.contains(link.target)) list_offender(msg, dangling, "event " + e.id + " -> " + link.target);
        }
    }
    for (const auto& o : log.objects) {
        for (const auto& link : o.o2o) {
            if (!objects.contains(link.target)) list_offender(msg, dangling, "object " + o.id + " -> " + link.target);
        }
    }
    if (dangling) {
        finish(msg, dangling);
        throw ValidationError(msg);
    }
}

} // namespace elkg
