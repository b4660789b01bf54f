#include "elkg/oracle.hpp"

#include <functional>
#include <stdexcept>

namespace elkg::oracle {

namespace {

bool has(const Trace& t, const std::string& a) {
    for (const auto& e : t.events)
        if (e.activity == a) return true;
    return false;
}

std::int64_t count(const Trace& t, const std::string& a) {
    std::int64_t n = 0;
    for (const auto& e : t.events)
        if (e.activity == a) ++n;
    return n;
}

// position i (0-based) of the trace in (timestamp, id) order
std::vector<const Event*> ordered(const Trace& t) {
    std::vector<const Event*> out;
    for (const auto& e : t.events) out.push_back(&e);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[j]->timestamp < out[i]->timestamp ||
                (out[j]->timestamp == out[i]->timestamp && out[j]->id < out[i]->id))
                std::swap(out[i], out[j]);
    return out;
}

bool satisfies(const Trace& t, std::string_view name, const Args& x) {
    auto seq = ordered(t);
    const std::size_t n = seq.size();
    if (name == "activityOccurs") return has(t, x.a.at(0));
    if (name == "activityDoesNotOccur") return !has(t, x.a.at(0));
    if (name == "allActivitiesOccur") {
        for (const auto& a : x.a)
            if (!has(t, a)) return false;
        return true;
    }
    if (name == "anyActivityOccurs") {
        for (const auto& a : x.a)
            if (has(t, a)) return true;
        return false;
    }
    if (name == "activityOccursAtLeastNTimes") return count(t, x.a.at(0)) >= x.count;
    if (name == "activityOccursAtMostNTimes") return count(t, x.a.at(0)) <= x.count;
    if (name == "activitiesCoOccurOrNoneOccurs") {
        bool all = true, none = true;
        for (const auto& a : x.a) {
            if (has(t, a)) none = false;
            else all = false;
        }
        return all || none;
    }
    if (name == "activitiesDoNotCoOccur") {
        for (const auto& a : x.a)
            if (!has(t, a)) return true;
        return false;
    }
    if (name == "activityOccursAsStart") return n > 0 && seq[0]->activity == x.a.at(0);
    if (name == "activityOccursAsEnd") return n > 0 && seq[n - 1]->activity == x.a.at(0);
    if (name == "activitiesDirectlyFollow") {
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (seq[i]->activity == x.a.at(0) && seq[i + 1]->activity == x.b.at(0)) return true;
        return false;
    }
    if (name == "activitiesEventuallyFollow") {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (seq[i]->activity == x.a.at(0) && seq[j]->activity == x.b.at(0)) return true;
        return false;
    }
    if (name == "activitiesAlwaysPrecede") {
        for (const auto& a : x.a)
            if (!has(t, a)) return false;
        for (const auto& b : x.b)
            if (!has(t, b)) return false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                bool in_a = false, in_b = false;
                for (const auto& a : x.a) in_a = in_a || seq[i]->activity == a;
                for (const auto& b : x.b) in_b = in_b || seq[j]->activity == b;
                if (in_a && in_b && !(i < j)) return false;
            }
        return true;
    }
    throw std::invalid_argument("unknown constraint '" + std::string(name) + "'");
}

// pairs (i, j) of 0-based positions witnessing a binding constraint; for
// one-event constraints j == i
std::vector<std::pair<std::size_t, std::size_t>> witness_pairs(const std::vector<const Event*>& seq,
                                                               std::string_view name, const Args& x) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = seq.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (name == "activityOccurs" && seq[i]->activity == x.a.at(0)) out.emplace_back(i, i);
        if (name == "activityOccursAsStart" && i == 0 && seq[i]->activity == x.a.at(0)) out.emplace_back(i, i);
        if (name == "activityOccursAsEnd" && i == n - 1 && seq[i]->activity == x.a.at(0)) out.emplace_back(i, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (name == "activitiesDirectlyFollow" && j == i + 1 && seq[i]->activity == x.a.at(0) &&
                seq[j]->activity == x.b.at(0))
                out.emplace_back(i, j);
            if (name == "activitiesEventuallyFollow" && i < j && seq[i]->activity == x.a.at(0) &&
                seq[j]->activity == x.b.at(0))
                out.emplace_back(i, j);
        }
    }
    return out;
}

bool as_double(const Value& v, double& out) {
    if (v.index() == 2) {
        out = static_cast<double>(std::get<2>(v));
        return true;
    }
    if (v.index() == 3) {
        out = std::get<3>(v).value;
        return true;
    }
    return false;
}

bool test(Comparator op, int sign) {
    switch (op) {
    case Comparator::Eq: return sign == 0;
    case Comparator::Ne: return sign != 0;
    case Comparator::Lt: return sign < 0;
    case Comparator::Le: return sign <= 0;
    case Comparator::Gt: return sign > 0;
    case Comparator::Ge: return sign >= 0;
    }
    return false;
}

template <class T>
int sign_of(const T& a, const T& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

bool compare(const Value& l, Comparator op, const Value& r) {
    double x = 0, y = 0;
    bool ln = as_double(l, x), rn = as_double(r, y);
    if (ln && rn) {
        if (l.index() == 2 && r.index() == 2) return test(op, sign_of(std::get<2>(l), std::get<2>(r)));
        return test(op, sign_of(x, y));
    }
    if (ln || rn || l.index() != r.index()) return false;
    if (l.index() == 4) return test(op, sign_of(std::get<4>(l), std::get<4>(r)));
    if (op != Comparator::Eq && op != Comparator::Ne) return false;
    bool same = l.index() == 0 ? std::get<0>(l) == std::get<0>(r) : std::get<1>(l) == std::get<1>(r);
    return op == Comparator::Eq ? same : !same;
}

Args args_of(const ConstraintCall& c) {
    return Args{c.a, c.b, c.count};
}

std::set<std::string> step_from(const OcelLog& log, const std::string& from, const PathStep& step);

std::set<std::string> step_from_all(const OcelLog& log, const std::set<std::string>& from, const PathStep& step) {
    std::set<std::string> out;
    for (const auto& f : from) {
        auto r = step_from(log, f, step);
        out.insert(r.begin(), r.end());
    }
    return out;
}

std::set<std::string> step_from(const OcelLog& log, const std::string& from, const PathStep& step) {
    std::set<std::string> out;
    if (const auto* r = std::get_if<Rel>(&step.node)) {
        for (const auto& o : log.objects) {
            for (const auto& link : o.o2o) {
                if (link.qualifier != r->qualifier) continue;
                if (r->direction == Direction::Forward && o.id == from) out.insert(link.target);
                if (r->direction == Direction::Reverse && link.target == from) out.insert(o.id);
            }
        }
    } else if (const auto* a = std::get_if<Alt>(&step.node)) {
        for (const auto& s : a->steps) {
            auto r = step_from(log, from, s);
            out.insert(r.begin(), r.end());
        }
    } else {
        std::set<std::string> frontier{from};
        for (const auto& s : std::get<Path>(step.node).steps) {
            frontier = step_from_all(log, frontier, s);
            if (frontier.empty()) break;
            out.insert(frontier.begin(), frontier.end());
        }
    }
    return out;
}

} // namespace

std::set<std::string> constraint(const CaseLog& log, std::string_view name, const Args& args) {
    std::set<std::string> out;
    for (const auto& t : log.traces)
        if (satisfies(t, name, args)) out.insert(t.case_id);
    if (log.traces.empty()) {
        Trace probe;
        satisfies(probe, name, args); // still rejects unknown names
    }
    return out;
}

std::set<std::string> collect(const OcelLog& log, std::string_view start, const PathStep& step) {
    bool known = false;
    for (const auto& o : log.objects) known = known || o.id == start;
    if (!known) throw std::invalid_argument("unknown object '" + std::string(start) + "'");
    return step_from(log, std::string(start), step);
}

std::set<Row> query(const CaseLog& log, const QueryAst& ast) {
    std::vector<std::string> vars;
    auto note = [&](const std::string& v) {
        for (const auto& x : vars)
            if (x == v) return;
        vars.push_back(v);
    };
    for (const auto& c : ast.clauses) {
        if (const auto* k = std::get_if<ConstraintClause>(&c))
            for (const auto& v : k->bind) note(v);
    }
    auto slot = [&](const std::string& v) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return i;
        throw std::logic_error("unbound variable " + v);
    };

    std::set<Row> rows;
    for (const auto& t : log.traces) {
        auto seq = ordered(t);
        const std::size_t n = seq.size();
        std::vector<std::size_t> assign(vars.size(), 0);

        auto check = [&]() {
            for (const auto& c : ast.clauses) {
                if (const auto* k = std::get_if<ConstraintClause>(&c)) {
                    std::string name(constraint_info(k->call.kind).name);
                    Args x = args_of(k->call);
                    if (k->bind.empty()) {
                        if (!satisfies(t, name, x)) return false;
                        continue;
                    }
                    bool ok = false;
                    for (auto [i, j] : witness_pairs(seq, name, x)) {
                        bool first = assign[slot(k->bind[0])] == i;
                        bool second = k->bind.size() < 2 || assign[slot(k->bind[1])] == j;
                        if (first && second) ok = true;
                    }
                    if (!ok) return false;
                } else if (const auto* a = std::get_if<AttributeClause>(&c)) {
                    const Event* e = seq[assign[slot(a->event)]];
                    auto it = e->attributes.find(a->attribute);
                    if (it == e->attributes.end() || !compare(it->second, a->op, a->literal)) return false;
                } else {
                    const auto& d = std::get<DurationClause>(c);
                    auto diff = seq[assign[slot(d.to)]]->timestamp - seq[assign[slot(d.from)]]->timestamp;
                    if (!test(d.op, sign_of(diff, Duration(d.literal)))) return false;
                }
            }
            return true;
        };

        std::function<void(std::size_t)> enumerate = [&](std::size_t k) {
            if (k == vars.size()) {
                if (!check()) return;
                std::map<std::string, std::string> binding;
                for (std::size_t r = 1; r < ast.returns.size(); ++r)
                    binding[ast.returns[r]] = seq[assign[slot(ast.returns[r])]]->id;
                rows.emplace(t.case_id, std::move(binding));
                return;
            }
            for (std::size_t i = 0; i < n; ++i) {
                assign[k] = i;
                enumerate(k + 1);
            }
        };
        enumerate(0);
    }
    return rows;
}

std::set<std::string> query_cases(const CaseLog& log, const QueryAst& ast) {
    std::set<std::string> out;
    for (const auto& [c, b] : query(log, ast)) out.insert(c);
    return out;
}

} // namespace elkg::oracle
