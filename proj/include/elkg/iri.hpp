#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

#include "elkg/term.hpp"

namespace elkg {

// Maps a raw id or label to an IRI local name: ASCII letters, digits, '_'
// and '-' are kept, every other byte becomes '_'. An empty input maps to "_".
std::string sanitize_local_name(std::string_view raw);

// Namespace for one converted log, e.g. `se` -> `http://dutch.hospital.nl/sepsis#`.
struct IriScheme {
    std::string prefix;
    std::string base;

    // Namespace `http://example.org/<stem>#` with prefix `<stem>`, derived
    // from a file name (directories and extension dropped).
    static IriScheme from_file_name(std::string_view path);
    // Uses `base` as given; the prefix is derived from `path` as above.
    static IriScheme with_base(std::string base, std::string_view path);
};

// Mints the IRIs of one conversion session and rejects two raw ids of the
// same kind that sanitize to the same local name.
class IriMinter {
public:
    explicit IriMinter(IriScheme scheme);

    const IriScheme& scheme() const noexcept { return scheme_; }

    Term trace(std::string_view case_id) { return mint(Kind::Trace, "trace_", case_id); }
    Term event(std::string_view event_id) { return mint(Kind::Event, "event_", event_id); }
    Term object(std::string_view object_id) { return mint(Kind::Object, "object_", object_id); }
    Term activity(std::string_view label) { return mint(Kind::Activity, "", label); }
    Term object_type(std::string_view type) { return mint(Kind::ObjectType, "", type); }
    Term attribute(std::string_view name) { return mint(Kind::Attribute, "", name); }

private:
    enum class Kind { Trace, Event, Object, Activity, ObjectType, Attribute, Count };

    Term mint(Kind kind, std::string_view tag, std::string_view raw);

    IriScheme scheme_;
    std::unordered_map<std::string, std::string> seen_[static_cast<int>(Kind::Count)];
    std::unordered_map<std::string, Term> cache_[static_cast<int>(Kind::Count)];
};

} // namespace elkg
