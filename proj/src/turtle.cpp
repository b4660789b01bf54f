#include "elkg/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "elkg/error.hpp"

namespace elkg {

const std::map<std::string, std::string>& default_prefixes() {
    static const std::map<std::string, std::string> prefixes{
        {"pq", std::string(vocab::pq)},
        {"rdf", std::string(vocab::rdf)},
        {"tr", std::string(vocab::tr)},
        {"xsd", std::string(vocab::xsd)},
    };
    return prefixes;
}

namespace {

bool is_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool is_valid_local(std::string_view local) {
    if (local.empty()) return false;
    char first = local.front();
    if (!(std::isalnum(static_cast<unsigned char>(first)) || first == '_')) return false;
    if (local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), is_local_char);
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_sign(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    return s;
}

bool is_bare_integer(std::string_view s) { return all_digits(strip_sign(s)); }

bool is_bare_decimal(std::string_view s) {
    s = strip_sign(s);
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return false;
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    return (whole.empty() || all_digits(whole)) && all_digits(frac);
}

bool is_bare_double(std::string_view s) {
    s = strip_sign(s);
    auto e = s.find_first_of("eE");
    if (e == std::string_view::npos) return false;
    auto mant = s.substr(0, e);
    auto exp = strip_sign(s.substr(e + 1));
    if (!all_digits(exp)) return false;
    if (all_digits(mant)) return true;
    auto dot = mant.find('.');
    if (dot == std::string_view::npos) return false;
    auto whole = mant.substr(0, dot);
    auto frac = mant.substr(dot + 1);
    if (whole.empty() && frac.empty()) return false;
    return (whole.empty() || all_digits(whole)) && (frac.empty() || all_digits(frac));
}

void escape_string(std::string& out, std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
                out += "\\u00";
                out += hex[(static_cast<unsigned char>(c) >> 4) & 0xf];
                out += hex[static_cast<unsigned char>(c) & 0xf];
            } else {
                out += c;
            }
        }
    }
}

class Writer {
public:
    explicit Writer(const Graph& g) {
        prefixes_ = default_prefixes();
        for (const auto& [k, v] : g.prefixes()) prefixes_[k] = v;
        for (const auto& [k, v] : prefixes_) by_length_.emplace_back(v, k);
        std::sort(by_length_.begin(), by_length_.end(), [](const auto& a, const auto& b) {
            if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
            return a.second < b.second;
        });
    }

    void iri(std::string& out, const std::string& iri) const {
        for (const auto& [ns, name] : by_length_) {
            if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) {
                std::string_view local(iri.data() + ns.size(), iri.size() - ns.size());
                if (is_valid_local(local)) {
                    out += name;
                    out += ':';
                    out += local;
                    return;
                }
            }
        }
        out += '<';
        out += iri;
        out += '>';
    }

    void term(std::string& out, const Term& t) const {
        switch (t.kind()) {
        case Term::Kind::Resource:
            iri(out, t.text());
            return;
        case Term::Kind::Anonymous:
            out += "_:";
            out += t.text();
            return;
        case Term::Kind::Literal:
            break;
        }
        const auto& dt = t.datatype();
        const auto& lex = t.text();
        if ((dt == vocab::xsd_boolean && (lex == "true" || lex == "false")) ||
            (dt == vocab::xsd_integer && is_bare_integer(lex)) || (dt == vocab::xsd_decimal && is_bare_decimal(lex)) ||
            (dt == vocab::xsd_double && is_bare_double(lex))) {
            out += lex;
            return;
        }
        out += '"';
        escape_string(out, lex);
        out += '"';
        if (t.language()) {
            out += '@';
            out += *t.language();
        } else if (dt != vocab::xsd_string) {
            out += "^^";
            iri(out, dt);
        }
    }

    void header(std::string& out) const {
        for (const auto& [k, v] : prefixes_) {
            out += "@prefix ";
            out += k;
            out += ": <";
            out += v;
            out += "> .\n";
        }
    }

private:
    std::map<std::string, std::string> prefixes_;
    std::vector<std::pair<std::string, std::string>> by_length_;
};

// Sort key ordering: subject (resources before anonymous nodes, then text),
// predicate IRI, then object lexical form.
bool triple_order(const Triple& a, const Triple& b) {
    auto subj_rank = [](const Term& t) { return t.is_resource() ? 0 : 1; };
    if (subj_rank(a.subject) != subj_rank(b.subject)) return subj_rank(a.subject) < subj_rank(b.subject);
    if (a.subject.text() != b.subject.text()) return a.subject.text() < b.subject.text();
    if (a.predicate.text() != b.predicate.text()) return a.predicate.text() < b.predicate.text();
    if (a.object.text() != b.object.text()) return a.object.text() < b.object.text();
    return a.object < b.object;
}

} // namespace

std::string serialize_turtle(const Graph& g) {
    Writer w(g);
    auto triples = g.triples();
    std::sort(triples.begin(), triples.end(), triple_order);

    std::string out;
    out.reserve(triples.size() * 64 + 256);
    w.header(out);
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& t = triples[i];
        bool new_subject = i == 0 || triples[i - 1].subject != t.subject;
        if (new_subject) {
            out += '\n';
            w.term(out, t.subject);
            out += ' ';
        } else {
            out += " ;\n    ";
        }
        if (t.predicate.text() == vocab::rdf_type) {
            out += 'a';
        } else {
            w.iri(out, t.predicate.text());
        }
        out += ' ';
        w.term(out, t.object);
        bool last_of_subject = i + 1 == triples.size() || triples[i + 1].subject != t.subject;
        if (last_of_subject) out += " .\n";
    }
    return out;
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : src_(text) {}

    Graph run() {
        skip_ws();
        while (!at_end()) {
            if (peek() == '@') {
                directive_at();
            } else if (keyword_ahead("PREFIX")) {
                pos_ += 6;
                col_ += 6;
                prefix_body(false);
            } else if (keyword_ahead("BASE")) {
                fail("unsupported construct: base IRI declaration");
            } else {
                statement();
            }
            skip_ws();
        }
        graph_.freeze();
        return std::move(graph_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                get();
            } else {
                break;
            }
        }
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (peek() != c) fail(std::string("expected ") + what);
        get();
    }

    bool keyword_ahead(std::string_view kw) const {
        if (src_.size() - pos_ < kw.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != kw[i]) return false;
        }
        char after = peek(kw.size());
        return after == ' ' || after == '\t' || after == '\n' || after == '\r';
    }

    void directive_at() {
        if (src_.substr(pos_, 7) == "@prefix") {
            pos_ += 7;
            col_ += 7;
            prefix_body(true);
        } else if (src_.substr(pos_, 5) == "@base") {
            fail("unsupported construct: base IRI declaration");
        } else {
            fail("unknown directive");
        }
    }

    void prefix_body(bool dotted) {
        skip_ws();
        std::string name;
        while (!at_end() && peek() != ':') {
            char c = peek();
            if (!is_local_char(c)) fail("invalid prefix name");
            name += get();
        }
        if (at_end()) fail("expected ':' in prefix declaration");
        get();
        skip_ws();
        if (peek() != '<') fail("expected IRI in prefix declaration");
        std::string ns = iri_ref();
        prefixes_[name] = ns;
        graph_.set_prefix(name, ns);
        if (dotted) expect('.', "'.' after prefix declaration");
    }

    std::string iri_ref() {
        std::size_t l = line_, c = col_;
        get(); // '<'
        std::string iri;
        for (;;) {
            if (at_end()) throw ParseError("unterminated IRI", l, c);
            char ch = peek();
            if (ch == '>') break;
            if (ch == '\\') fail("unsupported construct: escape sequence in IRI");
            if (static_cast<unsigned char>(ch) <= 0x20 || ch == '<' || ch == '"' || ch == '{' || ch == '}' ||
                ch == '|' || ch == '^' || ch == '`')
                fail("malformed IRI: illegal character");
            iri += get();
        }
        get(); // '>'
        if (!is_valid_iri(iri)) throw ParseError("malformed IRI <" + iri + ">: not absolute", l, c);
        return iri;
    }

    std::string prefixed_name() {
        std::size_t l = line_, c = col_;
        std::string prefix;
        while (!at_end() && peek() != ':' && is_local_char(peek())) prefix += get();
        if (peek() != ':') throw ParseError("expected prefixed name", l, c);
        get();
        std::string local;
        while (!at_end()) {
            char ch = peek();
            if (ch == '\\') fail("unsupported construct: escaped local name");
            if (is_local_char(ch) || ch == ':' || ch == '%') {
                local += ch;
                get();
            } else {
                break;
            }
        }
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
            --col_;
        }
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) throw ParseError("undefined prefix '" + prefix + ":'", l, c);
        std::string iri = it->second + local;
        if (!is_valid_iri(iri)) throw ParseError("malformed IRI from prefixed name", l, c);
        return iri;
    }

    Term iri_term() {
        if (peek() == '<') return Term::resource(iri_ref());
        return Term::resource(prefixed_name());
    }

    Term blank_node() {
        get();
        get(); // "_:"
        std::string label;
        while (!at_end() && is_local_char(peek())) label += get();
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --pos_;
            --col_;
        }
        if (label.empty()) fail("empty anonymous node label");
        return Term::anonymous(label);
    }

    Term subject() {
        skip_ws();
        char c = peek();
        if (c == '[') fail("unsupported construct: anonymous property list '[ ]'");
        if (c == '(') fail("unsupported construct: collection '( )'");
        if (c == '_' && peek(1) == ':') return blank_node();
        if (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c)))
            fail("literal in subject position");
        return iri_term();
    }

    Term verb() {
        skip_ws();
        if (peek() == 'a') {
            char after = peek(1);
            if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' || after == '"') {
                get();
                return Term::resource(vocab::rdf_type);
            }
        }
        if (peek() == '_' && peek(1) == ':') fail("anonymous node in predicate position");
        return iri_term();
    }

    std::string quoted_string() {
        std::size_t l = line_, c = col_;
        char q = get();
        bool is_long = peek() == q && peek(1) == q;
        if (is_long) {
            get();
            get();
        }
        std::string out;
        for (;;) {
            if (at_end()) throw ParseError("unterminated string literal", l, c);
            char ch = peek();
            if (ch == q) {
                if (!is_long) {
                    get();
                    break;
                }
                if (peek(1) == q && peek(2) == q) {
                    get();
                    get();
                    get();
                    break;
                }
            }
            if (!is_long && (ch == '\n' || ch == '\r')) fail("newline in string literal");
            if (ch == '\\') {
                get();
                if (at_end()) fail("unterminated escape");
                char e = get();
                switch (e) {
                case 't': out += '\t'; break;
                case 'b': out += '\b'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 'f': out += '\f'; break;
                case '"': out += '"'; break;
                case '\'': out += '\''; break;
                case '\\': out += '\\'; break;
                case 'u': out_codepoint(out, 4); break;
                case 'U': out_codepoint(out, 8); break;
                default: fail(std::string("invalid escape '\\") + e + "'");
                }
                continue;
            }
            out += get();
        }
        return out;
    }

    void out_codepoint(std::string& out, int digits) {
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            char h = at_end() ? '\0' : get();
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            else fail("invalid unicode escape");
        }
        append_utf8(out, cp);
    }

    Term number() {
        std::string lex;
        if (peek() == '+' || peek() == '-') lex += get();
        while (std::isdigit(static_cast<unsigned char>(peek()))) lex += get();
        bool decimal = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            decimal = true;
            lex += get();
            while (std::isdigit(static_cast<unsigned char>(peek()))) lex += get();
        }
        if (peek() == 'e' || peek() == 'E') {
            lex += get();
            if (peek() == '+' || peek() == '-') lex += get();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed number exponent");
            while (std::isdigit(static_cast<unsigned char>(peek()))) lex += get();
            return Term::literal(lex, vocab::xsd_double);
        }
        if (lex.empty() || lex == "+" || lex == "-") fail("malformed number");
        return Term::literal(lex, decimal ? vocab::xsd_decimal : vocab::xsd_integer);
    }

    bool word_ahead(std::string_view w) const {
        if (src_.substr(pos_, w.size()) != w) return false;
        char after = peek(w.size());
        return !(is_local_char(after) || after == ':');
    }

    Term object() {
        skip_ws();
        char c = peek();
        if (c == '[') fail("unsupported construct: anonymous property list '[ ]'");
        if (c == '(') fail("unsupported construct: collection '( )'");
        if (c == '{') fail("unsupported construct: formula '{ }'");
        if (c == '_' && peek(1) == ':') return blank_node();
        if (c == '<') return Term::resource(iri_ref());
        if (c == '"' || c == '\'') {
            std::string lex = quoted_string();
            if (peek() == '@') {
                get();
                std::string lang;
                while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) lang += get();
                if (lang.empty()) fail("empty language tag");
                return Term::lang_literal(std::move(lex), std::move(lang));
            }
            if (peek() == '^' && peek(1) == '^') {
                get();
                get();
                Term dt = iri_term();
                if (dt.text() == vocab::rdf_lang_string) fail("rdf:langString literal without language tag");
                return Term::literal(std::move(lex), dt.text());
            }
            return Term::literal(std::move(lex));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
            return number();
        if (word_ahead("true")) {
            pos_ += 4;
            col_ += 4;
            return Term::literal("true", vocab::xsd_boolean);
        }
        if (word_ahead("false")) {
            pos_ += 5;
            col_ += 5;
            return Term::literal("false", vocab::xsd_boolean);
        }
        return iri_term();
    }

    void statement() {
        Term s = subject();
        for (;;) {
            Term p = verb();
            for (;;) {
                Term o = object();
                graph_.insert(s, p, o);
                skip_ws();
                if (peek() == ',') {
                    get();
                    continue;
                }
                break;
            }
            skip_ws();
            if (peek() == ';') {
                while (peek() == ';') {
                    get();
                    skip_ws();
                }
                if (peek() == '.') break;
                continue;
            }
            break;
        }
        expect('.', "'.' at end of statement");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::map<std::string, std::string> prefixes_;
    Graph graph_;
};

} // namespace

Graph parse_turtle(std::string_view text) {
    return Parser(text).run();
}

} // namespace elkg
