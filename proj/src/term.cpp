#include "elkg/term.hpp"

#include <stdexcept>

namespace elkg {

bool is_valid_iri(std::string_view iri) noexcept {
    if (iri.empty() || iri.find(':') == std::string_view::npos) return false;
    if (iri.front() == ':') return false;
    for (unsigned char c : iri) {
        if (c <= 0x20) return false;
        switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return false;
        default:
            break;
        }
    }
    return true;
}

std::string_view local_name(std::string_view iri) noexcept {
    auto pos = iri.find_last_of("#/:");
    if (pos == std::string_view::npos) return iri;
    return iri.substr(pos + 1);
}

Term Term::resource(std::string iri) {
    if (!is_valid_iri(iri)) throw std::invalid_argument("invalid IRI: '" + iri + "'");
    Term t;
    t.kind_ = Kind::Resource;
    t.text_ = std::move(iri);
    return t;
}

Term Term::anonymous(std::string label) {
    if (label.empty()) throw std::invalid_argument("anonymous node label must be non-empty");
    Term t;
    t.kind_ = Kind::Anonymous;
    t.text_ = std::move(label);
    return t;
}

Term Term::literal(std::string lexical, std::string datatype) {
    if (!is_valid_iri(datatype)) throw std::invalid_argument("invalid datatype IRI: '" + datatype + "'");
    if (datatype == vocab::rdf_lang_string)
        throw std::invalid_argument("language-tagged literal requires a language");
    Term t;
    t.kind_ = Kind::Literal;
    t.text_ = std::move(lexical);
    t.datatype_ = std::move(datatype);
    return t;
}

Term Term::lang_literal(std::string lexical, std::string language) {
    if (language.empty()) throw std::invalid_argument("empty language tag");
    Term t;
    t.kind_ = Kind::Literal;
    t.text_ = std::move(lexical);
    t.datatype_ = vocab::rdf_lang_string;
    t.language_ = std::move(language);
    return t;
}

std::size_t Term::hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(text_);
    h ^= static_cast<std::size_t>(kind_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    if (kind_ == Kind::Literal) {
        h ^= std::hash<std::string>{}(datatype_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        if (language_) h ^= std::hash<std::string>{}(*language_) + (h << 6) + (h >> 2);
    }
    return h;
}

std::string to_string(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Resource:
        return "<" + t.text() + ">";
    case Term::Kind::Anonymous:
        return "_:" + t.text();
    case Term::Kind::Literal:
        if (t.language()) return "\"" + t.text() + "\"@" + *t.language();
        return "\"" + t.text() + "\"^^<" + t.datatype() + ">";
    }
    return {};
}

} // namespace elkg
