#include "elkg/perspective.hpp"

#include <algorithm>

#include <json.hpp>

#include "elkg/convert.hpp"
#include "elkg/error.hpp"

namespace elkg {

PathStep rel(Direction d, std::string qualifier) {
    return PathStep{Rel{d, std::move(qualifier)}};
}

PathStep alt(std::vector<PathStep> steps) {
    return PathStep{Alt{std::move(steps)}};
}

PathStep path(std::vector<PathStep> steps) {
    return PathStep{Path{std::move(steps)}};
}

// ---------------------------------------------------------------- validation / JSON

namespace {

void validate_steps(const std::vector<PathStep>& steps, const std::string& where) {
    if (steps.empty()) throw ValidationError(where + ": step list must not be empty");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string here = where + "[" + std::to_string(i) + "]";
        const auto& node = steps[i].node;
        if (const auto* r = std::get_if<Rel>(&node)) {
            if (r->qualifier.empty()) throw ValidationError(here + ".qualifier: must be a non-empty string");
        } else if (const auto* a = std::get_if<Alt>(&node)) {
            validate_steps(a->steps, here + ".alt");
        } else {
            validate_steps(std::get<Path>(node).steps, here + ".path");
        }
    }
}

using nlohmann::json;

std::vector<PathStep> read_steps(const json& j, const std::string& where);

PathStep read_step(const json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": step must be an object");
    if (auto a = j.find("alt"); a != j.end()) return alt(read_steps(*a, where + ".alt"));
    if (auto p = j.find("path"); p != j.end()) return path(read_steps(*p, where + ".path"));
    auto dir = j.find("dir");
    if (dir == j.end()) throw ValidationError(where + ": step needs \"dir\", \"alt\" or \"path\"");
    Direction d;
    if (dir->is_string() && dir->get<std::string>() == "fwd") {
        d = Direction::Forward;
    } else if (dir->is_string() && dir->get<std::string>() == "rev") {
        d = Direction::Reverse;
    } else {
        throw ValidationError(where + ".dir: expected \"fwd\" or \"rev\"");
    }
    auto q = j.find("qualifier");
    if (q == j.end() || !q->is_string() || q->get<std::string>().empty())
        throw ValidationError(where + ".qualifier: must be a non-empty string");
    return rel(d, q->get<std::string>());
}

std::vector<PathStep> read_steps(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array of steps");
    if (j.empty()) throw ValidationError(where + ": step list must not be empty");
    std::vector<PathStep> steps;
    for (std::size_t i = 0; i < j.size(); ++i) steps.push_back(read_step(j[i], where + "[" + std::to_string(i) + "]"));
    return steps;
}

} // namespace

void validate(const Perspective& p) {
    if (p.start_object_type.empty()) throw ValidationError("$.startObjectType: must be a non-empty string");
    validate_steps(p.path.steps, "$.path");
}

Perspective parse_perspective_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("perspective JSON syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("$: perspective must be a JSON object");
    auto st = doc.find("startObjectType");
    if (st == doc.end() || !st->is_string() || st->get<std::string>().empty())
        throw ValidationError("$.startObjectType: must be a non-empty string");
    auto p = doc.find("path");
    if (p == doc.end()) throw ValidationError("$.path: missing");
    Perspective out;
    out.start_object_type = st->get<std::string>();
    out.path.steps = read_steps(*p, "$.path");
    return out;
}

// ---------------------------------------------------------------- object graph

ObjectGraph::ObjectGraph(const OcelLog& log) {
    ids_.reserve(log.objects.size());
    for (const auto& o : log.objects) ids_.push_back(o.id);
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
    for (const auto& o : log.objects) {
        for (const auto& link : o.o2o) qualifier_index_.try_emplace(link.qualifier, qualifier_index_.size());
    }
    const std::size_t nq = std::max<std::size_t>(qualifier_index_.size(), 1);
    for (std::size_t i = 0; i < log.objects.size(); ++i) {
        for (const auto& link : log.objects[i].o2o) {
            std::size_t q = qualifier_index_.at(link.qualifier);
            std::size_t target = index_of(link.target);
            forward_[i * nq + q].push_back(target);
            reverse_[target * nq + q].push_back(i);
        }
    }
}

bool ObjectGraph::contains(std::string_view object) const {
    return index_.contains(object);
}

std::size_t ObjectGraph::index_of(std::string_view object) const {
    auto it = index_.find(object);
    if (it == index_.end()) throw ValidationError("unknown object '" + std::string(object) + "'");
    return it->second;
}

std::span<const std::size_t> ObjectGraph::targets(std::size_t object, Direction d, std::string_view qualifier) const {
    auto q = qualifier_index_.find(std::string(qualifier));
    if (q == qualifier_index_.end()) return {};
    const std::size_t nq = std::max<std::size_t>(qualifier_index_.size(), 1);
    const auto& table = d == Direction::Forward ? forward_ : reverse_;
    auto it = table.find(object * nq + q->second);
    if (it == table.end()) return {};
    return it->second;
}

// ---------------------------------------------------------------- collect

namespace {

std::set<std::size_t> collect_from(const ObjectGraph& g, std::size_t start, const PathStep& step) {
    std::set<std::size_t> out;
    if (const auto* r = std::get_if<Rel>(&step.node)) {
        for (auto t : g.targets(start, r->direction, r->qualifier)) out.insert(t);
    } else if (const auto* a = std::get_if<Alt>(&step.node)) {
        for (const auto& s : a->steps) {
            auto part = collect_from(g, start, s);
            out.insert(part.begin(), part.end());
        }
    } else {
        std::set<std::size_t> frontier{start};
        for (const auto& s : std::get<Path>(step.node).steps) {
            std::set<std::size_t> next;
            for (auto o : frontier) {
                auto part = collect_from(g, o, s);
                next.insert(part.begin(), part.end());
            }
            out.insert(next.begin(), next.end());
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
    }
    return out;
}

} // namespace

std::set<std::string> collect(const ObjectGraph& graph, std::string_view start, const PathStep& step) {
    std::set<std::string> out;
    for (auto i : collect_from(graph, graph.index_of(start), step)) out.insert(graph.id(i));
    return out;
}

std::set<std::string> collect(const OcelLog& log, std::string_view start, const PathStep& step) {
    return collect(ObjectGraph(log), start, step);
}

std::vector<PerspectiveInstance> enumerate_instances(const OcelLog& log, const Perspective& p) {
    validate(p);
    ObjectGraph graph(log);
    PathStep whole{p.path};
    std::vector<PerspectiveInstance> out;
    for (const auto& o : log.objects) {
        if (o.type != p.start_object_type) continue;
        PerspectiveInstance pi;
        pi.start_object = o.id;
        pi.objects = collect(graph, o.id, whole);
        pi.objects.insert(o.id);
        out.push_back(std::move(pi));
    }
    std::sort(out.begin(), out.end(),
              [](const PerspectiveInstance& a, const PerspectiveInstance& b) { return a.start_object < b.start_object; });
    return out;
}

// ---------------------------------------------------------------- traces

void emit_traces(const OcelLog& log, std::span<const PerspectiveInstance> instances, IriMinter& iris, Graph& into) {
    std::unordered_map<std::string_view, std::vector<std::size_t>> events_of;
    for (const auto& o : log.objects) events_of.try_emplace(o.id);
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        for (const auto& link : log.events[i].e2o) events_of[link.target].push_back(i);
    }

    const Term type = Term::resource(vocab::rdf_type);
    const Term trace_class = Term::resource(vocab::tr_trace);
    const Term in = Term::resource(vocab::tr_in);
    const Term next = Term::resource(vocab::tr_next);
    const Term nil = Term::resource(vocab::rdf_nil);

    for (const auto& pi : instances) {
        std::vector<std::size_t> members;
        for (const auto& obj : pi.objects) {
            auto it = events_of.find(obj);
            if (it == events_of.end())
                throw ValidationError("perspective instance '" + pi.start_object + "' references unknown object '" +
                                      obj + "'");
            members.insert(members.end(), it->second.begin(), it->second.end());
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const auto& ea = log.events[a];
            const auto& eb = log.events[b];
            if (ea.timestamp != eb.timestamp) return ea.timestamp < eb.timestamp;
            return ea.id < eb.id;
        });

        Term sigma = iris.trace(pi.start_object);
        into.insert(sigma, type, trace_class);
        for (std::size_t k = 0; k < members.size(); ++k) {
            Term ev = iris.event(log.events[members[k]].id);
            into.insert(ev, in, sigma);
            into.insert(ev, next, k + 1 < members.size() ? iris.event(log.events[members[k + 1]].id) : nil);
        }
    }
}

Graph materialize_traces(const OcelLog& log, std::span<const PerspectiveInstance> instances,
                         const IriScheme& scheme) {
    IriMinter iris(scheme);
    Graph g;
    declare_prefix(g, scheme);
    emit_traces(log, instances, iris, g);
    g.freeze();
    return g;
}

FlattenResult flatten(const OcelLog& log, const Perspective& p, const IriScheme& scheme) {
    auto instances = enumerate_instances(log, p);
    IriMinter iris(scheme);
    FlattenResult out;
    declare_prefix(out.graph, scheme);
    emit_ocel2(log, iris, out.graph);
    emit_traces(log, instances, iris, out.graph);
    out.graph.freeze();
    out.instances = instances.size();

    std::unordered_map<std::string_view, bool> has_events;
    for (const auto& e : log.events)
        for (const auto& link : e.e2o) has_events[link.target] = true;
    for (const auto& pi : instances) {
        bool any = std::any_of(pi.objects.begin(), pi.objects.end(),
                               [&](const std::string& o) { return has_events.contains(o); });
        if (!any) ++out.empty_traces;
    }
    return out;
}

} // namespace elkg
