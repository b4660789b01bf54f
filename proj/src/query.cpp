#include "elkg/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

#include <json.hpp>

#include "elkg/iri.hpp"

namespace elkg {

QueryError::QueryError(const std::string& msg, std::size_t line, std::size_t column, std::optional<std::size_t> clause)
    : ParseError(clause ? "clause " + std::to_string(*clause + 1) + ": " + msg : msg, line, column), clause_(clause) {}

std::string_view to_string(Comparator c) {
    switch (c) {
    case Comparator::Eq: return "=";
    case Comparator::Ne: return "!=";
    case Comparator::Lt: return "<";
    case Comparator::Le: return "<=";
    case Comparator::Gt: return ">";
    case Comparator::Ge: return ">=";
    }
    return "?";
}

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { Ident, Var, String, Integer, Decimal, LParen, RParen, LBrace, RBrace, Comma, Op, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip();
            Token t{Tok::End, "", line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (c == '?') {
                advance();
                std::string name = "?";
                while (pos_ < src_.size() && is_ident(src_[pos_])) name += advance();
                if (name.size() == 1) throw QueryError("expected variable name after '?'", t.line, t.column);
                t.kind = Tok::Var;
                t.text = std::move(name);
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (pos_ < src_.size() && is_ident(src_[pos_])) t.text += advance();
                t.kind = Tok::Ident;
            } else if (c == '"') {
                t.kind = Tok::String;
                t.text = string_literal(t);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && pos_ + 1 < src_.size() &&
                                                                     std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.text += advance();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
                t.kind = Tok::Integer;
                if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                    t.text += advance();
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
                    t.kind = Tok::Decimal;
                }
            } else if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',') {
                t.kind = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : c == '{' ? Tok::LBrace : c == '}' ? Tok::RBrace : Tok::Comma;
                t.text = std::string(1, advance());
            } else if (auto op = operator_at(); !op.empty()) {
                t.kind = Tok::Op;
                t.text = op;
            } else {
                throw QueryError(std::string("unexpected character '") + c + "'", t.line, t.column);
            }
            out.push_back(std::move(t));
        }
    }

private:
    static bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;
        }
        return c;
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string string_literal(const Token& start) {
        advance();
        std::string out;
        for (;;) {
            if (pos_ >= src_.size() || src_[pos_] == '\n')
                throw QueryError("unterminated string", start.line, start.column);
            char c = advance();
            if (c == '"') return out;
            if (c == '\\') {
                if (pos_ >= src_.size()) throw QueryError("unterminated string", start.line, start.column);
                char e = advance();
                switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw QueryError(std::string("invalid escape '\\") + e + "'", line_, col_ - 2);
                }
                continue;
            }
            out += c;
        }
    }

    std::string operator_at() {
        static const std::pair<std::string_view, std::string_view> ops[] = {
            {"!=", "!="}, {"<>", "!="}, {"<=", "<="}, {">=", ">="}, {"=", "="}, {"<", "<"}, {">", ">"},
            {"\xE2\x89\xA0", "!="}, {"\xE2\x89\xA4", "<="}, {"\xE2\x89\xA5", ">="},
        };
        for (const auto& [spelling, canonical] : ops) {
            if (src_.substr(pos_, spelling.size()) == spelling) {
                for (std::size_t i = 0; i < spelling.size(); ++i) advance();
                return std::string(canonical);
            }
        }
        return {};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool keyword_is(const Token& t, std::string_view kw) {
    if (t.kind != Tok::Ident || t.text.size() != kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
        if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
    return true;
}

Comparator comparator_of(const std::string& op) {
    if (op == "=") return Comparator::Eq;
    if (op == "!=") return Comparator::Ne;
    if (op == "<") return Comparator::Lt;
    if (op == "<=") return Comparator::Le;
    if (op == ">") return Comparator::Gt;
    return Comparator::Ge;
}

// ---------------------------------------------------------------- parser

class QueryParser {
public:
    explicit QueryParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    QueryAst run() {
        QueryAst ast;
        expect_keyword("MATCH");
        expect_keyword("TRACE");
        ast.trace_var = expect(Tok::Var, "trace variable").text;
        expect_keyword("WHERE");
        clause(ast);
        while (keyword_is(peek(), "AND")) {
            next();
            clause(ast);
        }
        expect_keyword("RETURN");
        const Token& first = expect(Tok::Var, "trace variable after RETURN");
        if (first.text != ast.trace_var)
            throw QueryError("RETURN must start with the trace variable " + ast.trace_var, first.line, first.column);
        ast.returns.push_back(first.text);
        while (peek().kind == Tok::Comma) {
            next();
            const Token& v = expect(Tok::Var, "variable");
            if (!bound_.contains(v.text))
                throw QueryError("RETURN variable " + v.text + " is not bound by any clause", v.line, v.column);
            if (std::find(ast.returns.begin(), ast.returns.end(), v.text) == ast.returns.end())
                ast.returns.push_back(v.text);
            used_.insert(v.text);
        }
        if (peek().kind != Tok::End)
            throw QueryError("unexpected " + describe(peek()) + " after RETURN", peek().line, peek().column);
        for (const auto& [var, clause_index] : bound_) {
            if (!used_.contains(var))
                ast.warnings.push_back("clause " + std::to_string(clause_index + 1) + ": variable " + var +
                                       " is bound but never used");
        }
        return ast;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    const Token& expect(Tok kind, const std::string& what) {
        const Token& t = peek();
        if (t.kind != kind) throw QueryError("expected " + what + ", found " + describe(t), t.line, t.column);
        return next();
    }

    void expect_keyword(std::string_view kw) {
        const Token& t = peek();
        if (!keyword_is(t, kw))
            throw QueryError("expected " + std::string(kw) + ", found " + describe(t), t.line, t.column);
        next();
    }

    [[noreturn]] void semantic(const std::string& msg, const Token& at) const {
        throw QueryError(msg, at.line, at.column, clause_index_);
    }

    void require_bound(const Token& v) {
        if (!bound_.contains(v.text)) semantic("event variable " + v.text + " is not bound by an earlier clause", v);
        used_.insert(v.text);
    }

    void clause(QueryAst& ast) {
        clause_index_ = ast.clauses.size();
        const Token& name = expect(Tok::Ident, "clause");
        if (name.text == "attr") {
            ast.clauses.push_back(attribute_clause());
        } else if (name.text == "timeBetween") {
            ast.clauses.push_back(duration_clause());
        } else {
            ast.clauses.push_back(constraint_clause(ast, name));
        }
    }

    AttributeClause attribute_clause() {
        AttributeClause c;
        expect(Tok::LParen, "'('");
        const Token& v = expect(Tok::Var, "event variable");
        require_bound(v);
        c.event = v.text;
        expect(Tok::Comma, "','");
        c.attribute = expect(Tok::String, "attribute name").text;
        expect(Tok::RParen, "')'");
        c.op = comparator_of(expect(Tok::Op, "comparison operator").text);
        c.literal = literal();
        return c;
    }

    Value literal() {
        const Token& t = next();
        switch (t.kind) {
        case Tok::Integer: {
            std::int64_t v = 0;
            std::string_view s = t.text;
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc()) throw QueryError("integer out of range", t.line, t.column);
            return Value(v);
        }
        case Tok::Decimal:
            return Value(Decimal::parse(t.text));
        case Tok::String:
            return Value(t.text);
        case Tok::Ident:
            if (t.text == "true") return Value(true);
            if (t.text == "false") return Value(false);
            if (t.text == "datetime") {
                expect(Tok::LParen, "'('");
                const Token& s = expect(Tok::String, "date-time string");
                expect(Tok::RParen, "')'");
                auto instant = parse_instant(s.text);
                if (!instant) throw QueryError("invalid date-time \"" + s.text + "\"", s.line, s.column);
                return Value(*instant);
            }
            break;
        default:
            break;
        }
        throw QueryError("expected literal, found " + describe(t), t.line, t.column);
    }

    DurationClause duration_clause() {
        DurationClause c;
        expect(Tok::LParen, "'('");
        const Token& from = expect(Tok::Var, "event variable");
        require_bound(from);
        expect(Tok::Comma, "','");
        const Token& to = expect(Tok::Var, "event variable");
        require_bound(to);
        expect(Tok::RParen, "')'");
        c.from = from.text;
        c.to = to.text;
        c.op = comparator_of(expect(Tok::Op, "comparison operator").text);
        const Token& kw = expect(Tok::Ident, "duration(...)");
        if (kw.text != "duration") throw QueryError("expected duration(...), found " + describe(kw), kw.line, kw.column);
        expect(Tok::LParen, "'('");
        const Token& s = expect(Tok::String, "ISO-8601 duration string");
        expect(Tok::RParen, "')'");
        auto d = parse_iso_duration(s.text);
        if (!d)
            throw QueryError("invalid ISO-8601 duration \"" + s.text + "\" (years and months are not supported)",
                             s.line, s.column);
        c.literal = *d;
        return c;
    }

    ConstraintClause constraint_clause(QueryAst& ast, const Token& name) {
        const ConstraintInfo* info = find_constraint(name.text);
        if (!info) semantic("unknown constraint '" + name.text + "'", name);
        ConstraintClause c;
        c.call.kind = info->kind;
        expect(Tok::LParen, "'('");
        const Token& tv = expect(Tok::Var, "trace variable");
        if (tv.text != ast.trace_var)
            semantic("first argument of " + name.text + " must be the trace variable " + ast.trace_var, tv);

        std::size_t activity_args = 0;
        std::size_t set_args = 0;
        for (std::size_t i = 0; i < info->args.size(); ++i) {
            if (peek().kind != Tok::Comma)
                semantic(name.text + " expects " + std::to_string(info->args.size()) + " argument(s) after the trace",
                         peek());
            next();
            const Token& at = peek();
            switch (info->args[i]) {
            case ArgKind::Activity: {
                if (at.kind != Tok::String) semantic("expected activity string, found " + describe(at), at);
                next();
                (activity_args++ == 0 ? c.call.a : c.call.b).push_back(at.text);
                break;
            }
            case ArgKind::ActivitySet: {
                if (at.kind != Tok::LBrace) semantic("expected activity set {...}, found " + describe(at), at);
                next();
                auto& target = set_args++ == 0 ? c.call.a : c.call.b;
                if (peek().kind != Tok::RBrace) {
                    target.push_back(expect(Tok::String, "activity string").text);
                    while (peek().kind == Tok::Comma) {
                        next();
                        target.push_back(expect(Tok::String, "activity string").text);
                    }
                }
                expect(Tok::RBrace, "'}'");
                break;
            }
            case ArgKind::Count: {
                if (at.kind != Tok::Integer) semantic("expected integer count, found " + describe(at), at);
                next();
                std::from_chars(at.text.data() + (at.text[0] == '+' ? 1 : 0), at.text.data() + at.text.size(),
                                c.call.count);
                break;
            }
            }
        }
        if (peek().kind == Tok::Comma) semantic("too many arguments for " + name.text, peek());
        expect(Tok::RParen, "')'");
        try {
            check_arguments(c.call);
        } catch (const ValidationError& e) {
            semantic(e.what(), name);
        }

        if (keyword_is(peek(), "AS")) {
            const Token& as = next();
            if (info->witness_arity == 0) semantic(name.text + " does not bind events", as);
            std::vector<Token> vars;
            if (peek().kind == Tok::LParen) {
                next();
                vars.push_back(expect(Tok::Var, "event variable"));
                while (peek().kind == Tok::Comma) {
                    next();
                    vars.push_back(expect(Tok::Var, "event variable"));
                }
                expect(Tok::RParen, "')'");
            } else {
                vars.push_back(expect(Tok::Var, "event variable"));
            }
            if (vars.size() > info->witness_arity)
                semantic(name.text + " binds at most " + std::to_string(info->witness_arity) + " event(s)", as);
            for (const auto& v : vars) {
                if (v.text == ast.trace_var) semantic("trace variable cannot be bound to an event", v);
                if (std::count_if(vars.begin(), vars.end(), [&](const Token& o) { return o.text == v.text; }) > 1)
                    semantic("variable " + v.text + " bound twice in one clause", v);
                c.bind.push_back(v.text);
                if (bound_.contains(v.text)) {
                    used_.insert(v.text);
                } else {
                    bound_.emplace(v.text, *clause_index_);
                }
            }
        }
        return c;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<std::size_t> clause_index_;
    std::map<std::string, std::size_t> bound_; // variable -> clause that first binds it
    std::set<std::string> used_;
};

} // namespace

QueryAst parse_query(std::string_view text) {
    return QueryParser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------- comparison

namespace {

std::optional<double> numeric(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<Decimal>(&v)) return d->value;
    return std::nullopt;
}

template <class T>
bool apply(const T& a, Comparator op, const T& b) {
    switch (op) {
    case Comparator::Eq: return a == b;
    case Comparator::Ne: return !(a == b);
    case Comparator::Lt: return a < b;
    case Comparator::Le: return a < b || a == b;
    case Comparator::Gt: return b < a;
    case Comparator::Ge: return b < a || a == b;
    }
    return false;
}

std::string_view type_name(const Value& v) {
    switch (v.index()) {
    case 0: return "string";
    case 1: return "boolean";
    case 2: return "integer";
    case 3: return "decimal";
    default: return "dateTime";
    }
}

} // namespace

std::optional<bool> compare_values(const Value& lhs, Comparator op, const Value& rhs) {
    const auto* li = std::get_if<std::int64_t>(&lhs);
    const auto* ri = std::get_if<std::int64_t>(&rhs);
    if (li && ri) return apply(*li, op, *ri);
    auto ln = numeric(lhs);
    auto rn = numeric(rhs);
    if (ln && rn) return apply(*ln, op, *rn);
    if (ln || rn) return std::nullopt;
    if (lhs.index() != rhs.index()) return std::nullopt;
    if (const auto* lt = std::get_if<Instant>(&lhs)) return apply(*lt, op, std::get<Instant>(rhs));
    if (op != Comparator::Eq && op != Comparator::Ne) return std::nullopt;
    return (lhs == rhs) == (op == Comparator::Eq);
}

// ---------------------------------------------------------------- evaluation

namespace {

struct CompiledConstraint {
    ResolvedCall call;
    std::vector<std::size_t> slots;
};

struct CompiledAttribute {
    std::size_t slot;
    std::string key;
    std::string name;
    Comparator op;
    Value literal;
};

struct CompiledDuration {
    std::size_t from;
    std::size_t to;
    Comparator op;
    Duration literal;
};

using Compiled = std::variant<CompiledConstraint, CompiledAttribute, CompiledDuration>;

class Evaluator {
public:
    Evaluator(const QueryAst& ast, const TraceIndex& idx) {
        auto slot = [&](const std::string& var) {
            auto [it, inserted] = slots_.try_emplace(var, slots_.size());
            if (inserted) names_.push_back(var);
            return it->second;
        };
        for (const auto& clause : ast.clauses) {
            if (const auto* c = std::get_if<ConstraintClause>(&clause)) {
                CompiledConstraint cc{ResolvedCall::resolve(idx, c->call), {}};
                for (const auto& v : c->bind) cc.slots.push_back(slot(v));
                clauses_.emplace_back(std::move(cc));
            } else if (const auto* a = std::get_if<AttributeClause>(&clause)) {
                clauses_.emplace_back(
                    CompiledAttribute{slot(a->event), sanitize_local_name(a->attribute), a->attribute, a->op, a->literal});
            } else {
                const auto& d = std::get<DurationClause>(clause);
                clauses_.emplace_back(CompiledDuration{slot(d.from), slot(d.to), d.op, d.literal});
            }
        }
        for (std::size_t i = 1; i < ast.returns.size(); ++i) projected_.push_back(slots_.at(ast.returns[i]));
    }

    void run(const TraceIndex& idx, ResultSet& out) {
        for (const auto& trace : idx.traces()) {
            trace_ = &trace;
            bound_.assign(names_.size(), 0);
            found_.clear();
            solve(0);
            if (found_.empty()) continue;
            out.traces.insert(trace.iri);
            for (const auto& tuple : found_) {
                ResultRow row{trace.iri, {}};
                for (std::size_t i = 0; i < projected_.size(); ++i)
                    row.bindings[names_[projected_[i]]] = trace.events[tuple[i] - 1].iri;
                out.rows.push_back(std::move(row));
            }
        }
        out.warnings.assign(warnings_.begin(), warnings_.end());
    }

private:
    // Returns false to stop the search.
    bool solve(std::size_t i) {
        if (i == clauses_.size()) {
            std::vector<std::size_t> tuple;
            for (auto s : projected_) tuple.push_back(bound_[s]);
            found_.insert(std::move(tuple));
            return !projected_.empty();
        }
        const auto& clause = clauses_[i];
        if (const auto* c = std::get_if<CompiledConstraint>(&clause)) {
            return for_each_witness(*trace_, c->call, [&](const Witness& w) {
                std::vector<std::size_t> saved;
                bool ok = true;
                for (std::size_t k = 0; k < c->slots.size(); ++k) {
                    std::size_t s = c->slots[k];
                    saved.push_back(bound_[s]);
                    if (bound_[s] != 0 && bound_[s] != w[k]) {
                        ok = false;
                        break;
                    }
                    bound_[s] = w[k];
                }
                bool keep_going = ok ? solve(i + 1) : true;
                for (std::size_t k = 0; k < saved.size(); ++k) bound_[c->slots[k]] = saved[k];
                return keep_going;
            });
        }
        if (const auto* a = std::get_if<CompiledAttribute>(&clause)) {
            const auto& attrs = trace_->events[bound_[a->slot] - 1].attributes;
            auto it = attrs.find(a->key);
            if (it == attrs.end()) return true;
            auto result = compare_values(it->second, a->op, a->literal);
            if (!result) {
                warnings_.insert("clause " + std::to_string(i + 1) + ": attribute '" + a->name + "' of type " +
                                 std::string(type_name(it->second)) + " cannot be compared with " +
                                 std::string(type_name(a->literal)) + " using " + std::string(to_string(a->op)) +
                                 "; treated as false");
                return true;
            }
            return *result ? solve(i + 1) : true;
        }
        const auto& d = std::get<CompiledDuration>(clause);
        Duration between = time_between(*trace_, bound_[d.from], bound_[d.to]);
        bool ok = false;
        switch (d.op) {
        case Comparator::Eq: ok = between == d.literal; break;
        case Comparator::Ne: ok = between != d.literal; break;
        case Comparator::Lt: ok = between < d.literal; break;
        case Comparator::Le: ok = between <= d.literal; break;
        case Comparator::Gt: ok = between > d.literal; break;
        case Comparator::Ge: ok = between >= d.literal; break;
        }
        return ok ? solve(i + 1) : true;
    }

    std::vector<Compiled> clauses_;
    std::map<std::string, std::size_t> slots_;
    std::vector<std::string> names_;
    std::vector<std::size_t> projected_;
    const IndexedTrace* trace_ = nullptr;
    std::vector<std::size_t> bound_;
    std::set<std::vector<std::size_t>> found_;
    std::set<std::string> warnings_;
};

} // namespace

ResultSet evaluate(const QueryAst& ast, const TraceIndex& idx) {
    ResultSet out;
    Evaluator(ast, idx).run(idx, out);
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.trace != b.trace) return a.trace < b.trace;
        return a.bindings < b.bindings;
    });
    return out;
}

std::string serialize_results(const ResultSet& r, ResultFormat format) {
    if (format == ResultFormat::Ids) {
        std::string out;
        for (const auto& t : r.traces) {
            out += t;
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json j;
        j["trace"] = row.trace;
        j["bindings"] = nlohmann::ordered_json::object();
        for (const auto& [var, event] : row.bindings) j["bindings"][var] = event;
        rows.push_back(std::move(j));
    }
    return rows.dump(2) + "\n";
}

} // namespace elkg
