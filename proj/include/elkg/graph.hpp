#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "elkg/term.hpp"

namespace elkg {

using TermId = std::uint32_t;

struct IdTriple {
    TermId s;
    TermId p;
    TermId o;

    friend bool operator==(const IdTriple&, const IdTriple&) = default;
    friend std::strong_ordering operator<=>(const IdTriple&, const IdTriple&) = default;
};

// A set of triples over an interned term dictionary.
//
// A graph is built single-writer through insert(), then freeze() sorts the
// triples into subject, (predicate, object) and object indexes. After that
// the graph is immutable; inserting is a contract violation and throws
// std::logic_error, and lookups are safe from any number of threads.
// Lookups on a graph that is not frozen throw std::logic_error as well.
class Graph {
public:
    Graph() = default;

    // Returns false if the triple was already present.
    bool insert(const Triple& t);
    bool insert(const Term& s, const Term& p, const Term& o) { return insert(Triple{s, p, o}); }

    // Mints an anonymous node `_:b<n>` not yet used in this graph.
    Term fresh_anonymous();

    void freeze();
    bool frozen() const noexcept { return frozen_; }

    // A mutable copy carrying the same triples, prefixes and anonymous counter.
    Graph thawed() const;

    void set_prefix(std::string name, std::string ns) { prefixes_[std::move(name)] = std::move(ns); }
    const std::map<std::string, std::string>& prefixes() const noexcept { return prefixes_; }

    std::size_t size() const noexcept { return frozen_ ? spo_.size() : pending_.size(); }
    bool empty() const noexcept { return size() == 0; }

    // All triples matching every bound position.
    std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                              const std::optional<Term>& o) const;
    std::vector<Triple> triples() const { return match(std::nullopt, std::nullopt, std::nullopt); }

    std::optional<TermId> lookup(const Term& t) const;
    const Term& term(TermId id) const { return terms_.at(id); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    std::vector<IdTriple> match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                    std::optional<TermId> o) const;

    // Triples with subject `s`, ordered by (predicate, object) id.
    std::span<const IdTriple> with_subject(TermId s) const;
    // Triples with predicate `p` (and object `o` when given), ordered by subject id.
    std::span<const IdTriple> with_predicate(TermId p, std::optional<TermId> o = std::nullopt) const;
    // Triples with object `o`.
    std::span<const IdTriple> with_object(TermId o) const;

    std::span<const IdTriple> id_triples() const;

    Triple resolve(const IdTriple& t) const { return {terms_[t.s], terms_[t.p], terms_[t.o]}; }

    // Exact equality of triple sets (labels of anonymous nodes included).
    friend bool operator==(const Graph& a, const Graph& b);

private:
    struct IdTripleHash {
        std::size_t operator()(const IdTriple& t) const noexcept {
            return (static_cast<std::size_t>(t.s) * 0x9e3779b97f4a7c15ULL) ^
                   (static_cast<std::size_t>(t.p) << 21) ^ (static_cast<std::size_t>(t.o) * 0xc2b2ae3d27d4eb4fULL);
        }
    };

    TermId intern(const Term& t);
    void require_frozen() const;

    std::vector<Term> terms_;
    std::unordered_map<Term, TermId> ids_;
    std::unordered_set<IdTriple, IdTripleHash> pending_;
    std::vector<IdTriple> spo_;
    std::vector<IdTriple> pos_;
    std::vector<IdTriple> osp_;
    std::map<std::string, std::string> prefixes_;
    std::uint64_t anon_counter_ = 0;
    bool frozen_ = false;
};

// True when a bijection between the anonymous nodes of `a` and `b` maps one
// triple set onto the other.
bool equivalent_up_to_relabeling(const Graph& a, const Graph& b);

} // namespace elkg
