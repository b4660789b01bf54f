#include "elkg/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace elkg {

namespace {

bool less_pos(const IdTriple& a, const IdTriple& b) {
    return std::tie(a.p, a.o, a.s) < std::tie(b.p, b.o, b.s);
}

bool less_osp(const IdTriple& a, const IdTriple& b) {
    return std::tie(a.o, a.s, a.p) < std::tie(b.o, b.s, b.p);
}

} // namespace

TermId Graph::intern(const Term& t) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
    if (inserted) terms_.push_back(t);
    return it->second;
}

bool Graph::insert(const Triple& t) {
    if (frozen_) throw std::logic_error("insert into a frozen graph");
    if (t.subject.is_literal()) throw std::invalid_argument("literal in subject position: " + to_string(t.subject));
    if (!t.predicate.is_resource())
        throw std::invalid_argument("predicate must be a resource: " + to_string(t.predicate));
    IdTriple id{intern(t.subject), intern(t.predicate), intern(t.object)};
    return pending_.insert(id).second;
}

Term Graph::fresh_anonymous() {
    for (;;) {
        Term t = Term::anonymous("b" + std::to_string(++anon_counter_));
        if (!ids_.contains(t)) return t;
    }
}

void Graph::freeze() {
    if (frozen_) return;
    spo_.assign(pending_.begin(), pending_.end());
    pending_.clear();
    std::sort(spo_.begin(), spo_.end());
    pos_ = spo_;
    std::sort(pos_.begin(), pos_.end(), less_pos);
    osp_ = spo_;
    std::sort(osp_.begin(), osp_.end(), less_osp);
    frozen_ = true;
}

Graph Graph::thawed() const {
    Graph g;
    g.terms_ = terms_;
    g.ids_ = ids_;
    g.prefixes_ = prefixes_;
    g.anon_counter_ = anon_counter_;
    if (frozen_) {
        g.pending_.insert(spo_.begin(), spo_.end());
    } else {
        g.pending_ = pending_;
    }
    return g;
}

void Graph::require_frozen() const {
    if (!frozen_) throw std::logic_error("graph must be frozen before lookup");
}

std::optional<TermId> Graph::lookup(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::span<const IdTriple> Graph::id_triples() const {
    require_frozen();
    return spo_;
}

std::span<const IdTriple> Graph::with_subject(TermId s) const {
    require_frozen();
    auto lo = std::lower_bound(spo_.begin(), spo_.end(), s, [](const IdTriple& t, TermId v) { return t.s < v; });
    auto hi = std::upper_bound(lo, spo_.end(), s, [](TermId v, const IdTriple& t) { return v < t.s; });
    return {lo, hi};
}

std::span<const IdTriple> Graph::with_predicate(TermId p, std::optional<TermId> o) const {
    require_frozen();
    if (o) {
        auto key = std::make_pair(p, *o);
        auto lo = std::lower_bound(pos_.begin(), pos_.end(), key,
                                   [](const IdTriple& t, const std::pair<TermId, TermId>& k) {
                                       return std::tie(t.p, t.o) < std::tie(k.first, k.second);
                                   });
        auto hi = std::upper_bound(lo, pos_.end(), key,
                                   [](const std::pair<TermId, TermId>& k, const IdTriple& t) {
                                       return std::tie(k.first, k.second) < std::tie(t.p, t.o);
                                   });
        return {lo, hi};
    }
    auto lo = std::lower_bound(pos_.begin(), pos_.end(), p, [](const IdTriple& t, TermId v) { return t.p < v; });
    auto hi = std::upper_bound(lo, pos_.end(), p, [](TermId v, const IdTriple& t) { return v < t.p; });
    return {lo, hi};
}

std::span<const IdTriple> Graph::with_object(TermId o) const {
    require_frozen();
    auto lo = std::lower_bound(osp_.begin(), osp_.end(), o, [](const IdTriple& t, TermId v) { return t.o < v; });
    auto hi = std::upper_bound(lo, osp_.end(), o, [](TermId v, const IdTriple& t) { return v < t.o; });
    return {lo, hi};
}

std::vector<IdTriple> Graph::match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                       std::optional<TermId> o) const {
    require_frozen();
    std::span<const IdTriple> range;
    if (s) {
        range = with_subject(*s);
    } else if (p) {
        range = with_predicate(*p, o);
    } else if (o) {
        range = with_object(*o);
    } else {
        range = spo_;
    }
    std::vector<IdTriple> out;
    for (const auto& t : range) {
        if ((!s || t.s == *s) && (!p || t.p == *p) && (!o || t.o == *o)) out.push_back(t);
    }
    return out;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
    require_frozen();
    std::optional<TermId> sid, pid, oid;
    if (s) {
        sid = lookup(*s);
        if (!sid) return {};
    }
    if (p) {
        pid = lookup(*p);
        if (!pid) return {};
    }
    if (o) {
        oid = lookup(*o);
        if (!oid) return {};
    }
    std::vector<Triple> out;
    for (const auto& t : match_ids(sid, pid, oid)) out.push_back(resolve(t));
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    auto ta = a.triples();
    auto tb = b.triples();
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

namespace {

// Colour refinement over anonymous nodes, followed by backtracking inside
// colour classes.
class Relabeler {
public:
    Relabeler(const std::vector<Triple>& a, const std::vector<Triple>& b) : a_(a), b_(b) {
        for (const auto& t : b_) b_set_.insert(t);
    }

    bool run() {
        std::set<Triple> fixed_a, fixed_b;
        for (const auto& t : a_)
            if (!has_anon(t)) fixed_a.insert(t);
        for (const auto& t : b_)
            if (!has_anon(t)) fixed_b.insert(t);
        if (fixed_a != fixed_b) return false;

        auto ca = colours(a_);
        auto cb = colours(b_);
        std::map<std::size_t, std::vector<std::string>> class_a, class_b;
        for (const auto& [node, c] : ca) class_a[c].push_back(node);
        for (const auto& [node, c] : cb) class_b[c].push_back(node);
        if (class_a.size() != class_b.size()) return false;
        for (const auto& [c, nodes] : class_a) {
            auto it = class_b.find(c);
            if (it == class_b.end() || it->second.size() != nodes.size()) return false;
        }
        for (const auto& t : a_) {
            if (t.subject.is_anonymous()) touching_[t.subject.text()].push_back(&t);
            if (t.object.is_anonymous() && t.object != t.subject) touching_[t.object.text()].push_back(&t);
        }
        for (const auto& [c, nodes] : class_a) {
            for (const auto& n : nodes) order_.push_back({n, &class_b[c]});
        }
        return assign(0);
    }

private:
    static bool has_anon(const Triple& t) { return t.subject.is_anonymous() || t.object.is_anonymous(); }

    static std::map<std::string, std::size_t> colours(const std::vector<Triple>& ts) {
        std::map<std::string, std::size_t> colour;
        for (const auto& t : ts) {
            if (t.subject.is_anonymous()) colour[t.subject.text()] = 0;
            if (t.object.is_anonymous()) colour[t.object.text()] = 0;
        }
        std::hash<std::string> h;
        auto term_key = [&](const Term& term) -> std::size_t {
            if (term.is_anonymous()) return colour[term.text()] * 31 + 7;
            return term.hash();
        };
        for (int round = 0; round < 4; ++round) {
            std::map<std::string, std::vector<std::size_t>> sigs;
            for (const auto& t : ts) {
                if (t.subject.is_anonymous())
                    sigs[t.subject.text()].push_back(h("out") ^ (t.predicate.hash() * 3) ^ (term_key(t.object) * 5));
                if (t.object.is_anonymous())
                    sigs[t.object.text()].push_back(h("in") ^ (t.predicate.hash() * 3) ^ (term_key(t.subject) * 5));
            }
            std::map<std::string, std::size_t> next;
            for (auto& [node, sig] : sigs) {
                std::sort(sig.begin(), sig.end());
                std::size_t c = 1469598103934665603ULL;
                for (auto v : sig) c = (c ^ v) * 1099511628211ULL;
                next[node] = c;
            }
            colour = std::move(next);
        }
        return colour;
    }

    Term mapped(const Term& t) const {
        if (!t.is_anonymous()) return t;
        return Term::anonymous(map_.at(t.text()));
    }

    bool consistent(const std::string& node) const {
        auto it = touching_.find(node);
        if (it == touching_.end()) return true;
        for (const Triple* t : it->second) {
            if (t->subject.is_anonymous() && !map_.contains(t->subject.text())) continue;
            if (t->object.is_anonymous() && !map_.contains(t->object.text())) continue;
            if (!b_set_.contains(Triple{mapped(t->subject), t->predicate, mapped(t->object)})) return false;
        }
        return true;
    }

    bool assign(std::size_t i) {
        if (i == order_.size()) return true;
        const auto& [node, candidates] = order_[i];
        for (const auto& cand : *candidates) {
            if (used_.contains(cand)) continue;
            map_[node] = cand;
            used_.insert(cand);
            if (consistent(node) && assign(i + 1)) return true;
            used_.erase(cand);
            map_.erase(node);
        }
        return false;
    }

    const std::vector<Triple>& a_;
    const std::vector<Triple>& b_;
    std::set<Triple> b_set_;
    std::map<std::string, std::vector<const Triple*>> touching_;
    std::vector<std::pair<std::string, const std::vector<std::string>*>> order_;
    std::map<std::string, std::string> map_;
    std::set<std::string> used_;
};

} // namespace

bool equivalent_up_to_relabeling(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    auto ta = a.triples();
    auto tb = b.triples();
    return Relabeler(ta, tb).run();
}

} // namespace elkg
