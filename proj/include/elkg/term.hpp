#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace elkg {

namespace vocab {

inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view tr = "http://notation3.org/trace#";
inline constexpr std::string_view pq = "http://notation3.org/query#";

inline const std::string rdf_type = std::string(rdf) + "type";
inline const std::string rdf_nil = std::string(rdf) + "nil";
inline const std::string rdf_lang_string = std::string(rdf) + "langString";

inline const std::string xsd_string = std::string(xsd) + "string";
inline const std::string xsd_boolean = std::string(xsd) + "boolean";
inline const std::string xsd_integer = std::string(xsd) + "integer";
inline const std::string xsd_decimal = std::string(xsd) + "decimal";
inline const std::string xsd_double = std::string(xsd) + "double";
inline const std::string xsd_date_time = std::string(xsd) + "dateTime";

inline const std::string tr_trace = std::string(tr) + "Trace";
inline const std::string tr_in = std::string(tr) + "in";
inline const std::string tr_next = std::string(tr) + "next";
inline const std::string tr_activity = std::string(tr) + "activity";
inline const std::string tr_timestamp = std::string(tr) + "timestamp";
inline const std::string tr_event = std::string(tr) + "event";
inline const std::string tr_object = std::string(tr) + "object";
inline const std::string tr_object2 = std::string(tr) + "object2";
inline const std::string tr_qualifier = std::string(tr) + "qualifier";

} // namespace vocab

// An RDF term: a resource IRI, an anonymous (blank) node, or a literal.
//
// Terms are plain values; equality and ordering compare kind first, then the
// text, then datatype and language. Use the factories, which enforce the
// per-kind invariants.
class Term {
public:
    enum class Kind : unsigned char { Resource, Anonymous, Literal };

    static Term resource(std::string iri);
    static Term anonymous(std::string label);
    static Term literal(std::string lexical, std::string datatype = vocab::xsd_string);
    static Term lang_literal(std::string lexical, std::string language);

    Kind kind() const noexcept { return kind_; }
    bool is_resource() const noexcept { return kind_ == Kind::Resource; }
    bool is_anonymous() const noexcept { return kind_ == Kind::Anonymous; }
    bool is_literal() const noexcept { return kind_ == Kind::Literal; }

    // IRI, anonymous label (without "_:"), or literal lexical form.
    const std::string& text() const noexcept { return text_; }
    const std::string& datatype() const noexcept { return datatype_; }
    const std::optional<std::string>& language() const noexcept { return language_; }

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

    std::size_t hash() const noexcept;

private:
    Kind kind_ = Kind::Resource;
    std::string text_;
    std::string datatype_;
    std::optional<std::string> language_;
};

bool is_valid_iri(std::string_view iri) noexcept;

// Local part of an IRI: everything after the last '#', '/' or ':'.
std::string_view local_name(std::string_view iri) noexcept;

std::string to_string(const Term& t);

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

} // namespace elkg

template <>
struct std::hash<elkg::Term> {
    std::size_t operator()(const elkg::Term& t) const noexcept { return t.hash(); }
};
