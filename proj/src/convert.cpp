#include "elkg/convert.hpp"

#include <charconv>
#include <stdexcept>

namespace elkg {

Term value_term(const Value& v) {
    struct Visitor {
        Term operator()(const std::string& s) const { return Term::literal(s); }
        Term operator()(bool b) const { return Term::literal(b ? "true" : "false", vocab::xsd_boolean); }
        Term operator()(std::int64_t i) const { return Term::literal(std::to_string(i), vocab::xsd_integer); }
        Term operator()(const Decimal& d) const { return Term::literal(d.lexical, vocab::xsd_decimal); }
        Term operator()(Instant t) const { return Term::literal(format_instant(t), vocab::xsd_date_time); }
    };
    return std::visit(Visitor{}, v);
}

Value term_value(const Term& t) {
    const auto& dt = t.datatype();
    const auto& lex = t.text();
    if (!t.is_literal()) return Value(lex);
    if (dt == vocab::xsd_boolean) {
        if (lex == "true" || lex == "1") return Value(true);
        if (lex == "false" || lex == "0") return Value(false);
    } else if (dt == vocab::xsd_integer) {
        std::int64_t v = 0;
        std::string_view s = lex;
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (!s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size()) return Value(v);
    } else if (dt == vocab::xsd_decimal || dt == vocab::xsd_double) {
        try {
            Decimal d = Decimal::parse(lex);
            d.lexical = lex;
            return Value(d);
        } catch (const std::invalid_argument&) {
        }
    } else if (dt == vocab::xsd_date_time) {
        if (auto i = parse_instant(lex)) return Value(*i);
    }
    return Value(lex);
}

void declare_prefix(Graph& g, const IriScheme& scheme) {
    if (!scheme.prefix.empty()) g.set_prefix(scheme.prefix, scheme.base);
}

void emit_ccel(const CaseLog& log, IriMinter& iris, Graph& into) {
    const Term type = Term::resource(vocab::rdf_type);
    const Term trace_class = Term::resource(vocab::tr_trace);
    const Term in = Term::resource(vocab::tr_in);
    const Term next = Term::resource(vocab::tr_next);
    const Term activity = Term::resource(vocab::tr_activity);
    const Term timestamp = Term::resource(vocab::tr_timestamp);
    const Term nil = Term::resource(vocab::rdf_nil);

    for (const auto& trace : log.traces) {
        Term sigma = iris.trace(trace.case_id);
        into.insert(sigma, type, trace_class);
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            const auto& e = trace.events[i];
            Term ev = iris.event(e.id);
            into.insert(ev, in, sigma);
            into.insert(ev, activity, iris.activity(e.activity));
            into.insert(ev, timestamp, value_term(e.timestamp));
            for (const auto& [key, value] : e.attributes) into.insert(ev, iris.attribute(key), value_term(value));
            Term successor = i + 1 < trace.events.size() ? iris.event(trace.events[i + 1].id) : nil;
            into.insert(ev, next, successor);
        }
    }
}

Graph ccel_to_elkg(const CaseLog& log, const IriScheme& scheme) {
    IriMinter iris(scheme);
    Graph g;
    declare_prefix(g, scheme);
    emit_ccel(log, iris, g);
    g.freeze();
    return g;
}

void emit_ocel2(const OcelLog& log, IriMinter& iris, Graph& into) {
    const Term type = Term::resource(vocab::rdf_type);
    const Term activity = Term::resource(vocab::tr_activity);
    const Term timestamp = Term::resource(vocab::tr_timestamp);
    const Term event = Term::resource(vocab::tr_event);
    const Term object = Term::resource(vocab::tr_object);
    const Term object2 = Term::resource(vocab::tr_object2);
    const Term qualifier = Term::resource(vocab::tr_qualifier);

    for (const auto& e : log.events) {
        Term ev = iris.event(e.id);
        into.insert(ev, activity, iris.activity(e.type));
        into.insert(ev, timestamp, value_term(e.timestamp));
        for (const auto& [key, value] : e.attributes) into.insert(ev, iris.attribute(key), value_term(value));
    }
    for (const auto& o : log.objects) {
        Term obj = iris.object(o.id);
        into.insert(obj, type, iris.object_type(o.type));
        for (const auto& [key, value] : o.attributes) into.insert(obj, iris.attribute(key), value_term(value));
    }
    for (const auto& e : log.events) {
        Term ev = iris.event(e.id);
        for (const auto& link : e.e2o) {
            Term node = into.fresh_anonymous();
            into.insert(node, event, ev);
            into.insert(node, object, iris.object(link.target));
            into.insert(node, qualifier, Term::literal(link.qualifier));
        }
    }
    for (const auto& o : log.objects) {
        Term obj = iris.object(o.id);
        for (const auto& link : o.o2o) {
            Term node = into.fresh_anonymous();
            into.insert(node, object, obj);
            into.insert(node, object2, iris.object(link.target));
            into.insert(node, qualifier, Term::literal(link.qualifier));
        }
    }
}

Graph ocel2_to_elkg(const OcelLog& log, const IriScheme& scheme) {
    IriMinter iris(scheme);
    Graph g;
    declare_prefix(g, scheme);
    emit_ocel2(log, iris, g);
    g.freeze();
    return g;
}

} // namespace elkg
