#include "elkg/ingest.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <cstring>
#include <memory>
#include <optional>
#include <unordered_map>

#include <json.hpp>

#include "elkg/error.hpp"

namespace elkg {

namespace {

// ---------------------------------------------------------------- XES

bool is_attribute_element(std::string_view name) {
    return name == "string" || name == "date" || name == "int" || name == "float" || name == "boolean" ||
           name == "id" || name == "list" || name == "container";
}

class XesReader {
public:
    XesReader() : parser_(XML_ParserCreate(nullptr), &XML_ParserFree) {
        XML_SetUserData(parser_.get(), this);
        XML_SetElementHandler(parser_.get(), &XesReader::on_start, &XesReader::on_end);
    }

    CaseLog read(std::string_view text) {
        if (text.size() > static_cast<std::size_t>(std::numeric_limits<int>::max()))
            throw ParseError("XES document too large");
        auto status = XML_Parse(parser_.get(), text.data(), static_cast<int>(text.size()), XML_TRUE);
        if (error_) throw *error_;
        if (status != XML_STATUS_OK) {
            throw ParseError(std::string("XML syntax error: ") + XML_ErrorString(XML_GetErrorCode(parser_.get())),
                             XML_GetCurrentLineNumber(parser_.get()), XML_GetCurrentColumnNumber(parser_.get()) + 1);
        }
        if (!saw_log_) throw ParseError("not an XES document: missing <log> root");
        assign_ids();
        normalize(log_);
        return std::move(log_);
    }

private:
    struct PendingEvent {
        Event event;
        bool has_activity = false;
        bool has_timestamp = false;
        bool has_id = false;
        std::size_t line = 0;
    };

    static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
        static_cast<XesReader*>(self)->start(name, attrs);
    }
    static void XMLCALL on_end(void* self, const XML_Char* name) { static_cast<XesReader*>(self)->end(name); }

    void fail(const std::string& msg) {
        if (error_) return;
        error_ = ParseError(msg, XML_GetCurrentLineNumber(parser_.get()), XML_GetCurrentColumnNumber(parser_.get()) + 1);
        XML_StopParser(parser_.get(), XML_FALSE);
    }

    std::string describe_event() const {
        std::string d = "event #" + std::to_string(trace_event_count_) + " of trace";
        if (trace_case_) d += " '" + *trace_case_ + "'";
        d += " (line " + std::to_string(event_->line) + ")";
        return d;
    }

    void start(std::string_view name, const XML_Char** attrs) {
        if (error_) return;
        if (skip_depth_ > 0) {
            ++skip_depth_;
            return;
        }
        if (attr_depth_ > 0) {
            ++attr_depth_;
            return;
        }
        if (name == "log") {
            saw_log_ = true;
            return;
        }
        if (name == "global" || name == "extension" || name == "classifier") {
            skip_depth_ = 1;
            return;
        }
        if (name == "trace") {
            if (in_trace_) return fail("nested <trace>");
            in_trace_ = true;
            trace_ = Trace{};
            trace_case_.reset();
            trace_event_count_ = 0;
            return;
        }
        if (name == "event") {
            if (!in_trace_) return fail("<event> outside of a <trace>");
            if (event_) return fail("nested <event>");
            ++trace_event_count_;
            event_.emplace();
            event_->line = XML_GetCurrentLineNumber(parser_.get());
            return;
        }
        if (!is_attribute_element(name)) return;
        attr_depth_ = 1;
        if (!in_trace_) return; // log-level attribute
        const char* key = nullptr;
        const char* value = nullptr;
        for (auto a = attrs; *a; a += 2) {
            if (std::strcmp(a[0], "key") == 0) key = a[1];
            else if (std::strcmp(a[0], "value") == 0) value = a[1];
        }
        if (name == "list" || name == "container") return;
        if (!key) return fail("attribute <" + std::string(name) + "> without key");
        if (!value) return fail("attribute '" + std::string(key) + "' without value");
        auto typed = typed_value(name, key, value);
        if (!typed) return;
        if (event_) {
            add_event_attribute(key, std::move(*typed));
        } else {
            add_trace_attribute(key, std::move(*typed));
        }
    }

    std::optional<Value> typed_value(std::string_view type, const std::string& key, const std::string& raw) {
        if (type == "string" || type == "id") return Value(raw);
        if (type == "date") {
            auto t = parse_instant(raw);
            if (!t) {
                fail("unparsable timestamp '" + raw + "' for attribute '" + key + "'");
                return std::nullopt;
            }
            return Value(*t);
        }
        if (type == "int") {
            std::int64_t v = 0;
            std::string_view s = raw;
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                fail("invalid int '" + raw + "' for attribute '" + key + "'");
                return std::nullopt;
            }
            return Value(v);
        }
        if (type == "float") {
            try {
                return Value(Decimal::parse(raw));
            } catch (const std::invalid_argument&) {
                fail("invalid float '" + raw + "' for attribute '" + key + "'");
                return std::nullopt;
            }
        }
        if (type == "boolean") {
            std::string lower = raw;
            std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
            if (lower == "true" || lower == "1") return Value(true);
            if (lower == "false" || lower == "0") return Value(false);
            fail("invalid boolean '" + raw + "' for attribute '" + key + "'");
            return std::nullopt;
        }
        return std::nullopt;
    }

    void add_event_attribute(const std::string& key, Value v) {
        if (key == "concept:name") {
            event_->event.activity = value_to_string(v);
            event_->has_activity = true;
        } else if (key == "time:timestamp") {
            if (auto* t = std::get_if<Instant>(&v)) {
                event_->event.timestamp = *t;
            } else if (auto parsed = parse_instant(value_to_string(v))) {
                event_->event.timestamp = *parsed;
            } else {
                return fail("unparsable timestamp on " + describe_event());
            }
            event_->has_timestamp = true;
        } else if (key == "identity:id") {
            event_->event.id = value_to_string(v);
            event_->has_id = true;
        } else {
            event_->event.attributes.insert_or_assign(key, std::move(v));
        }
    }

    void add_trace_attribute(const std::string& key, Value v) {
        if (key == "concept:name") {
            trace_case_ = value_to_string(v);
        } else {
            trace_.attributes.insert_or_assign(key, std::move(v));
        }
    }

    void end(std::string_view name) {
        if (error_) return;
        if (skip_depth_ > 0) {
            --skip_depth_;
            return;
        }
        if (attr_depth_ > 0) {
            --attr_depth_;
            return;
        }
        if (name == "event" && event_) {
            if (!event_->has_activity) return fail(describe_event() + " has no concept:name (activity)");
            if (!event_->has_timestamp) return fail(describe_event() + " has no time:timestamp");
            synthesized_.push_back(!event_->has_id);
            trace_.events.push_back(std::move(event_->event));
            event_.reset();
        } else if (name == "trace" && in_trace_) {
            if (!trace_case_) return fail("trace without concept:name case attribute");
            trace_.case_id = *trace_case_;
            log_.traces.push_back(std::move(trace_));
            in_trace_ = false;
        }
    }

    void assign_ids() {
        std::size_t width = std::to_string(synthesized_.size()).size();
        std::size_t ordinal = 0;
        for (auto& t : log_.traces) {
            for (auto& e : t.events) {
                if (synthesized_[ordinal]) {
                    std::string n = std::to_string(ordinal + 1);
                    e.id = std::string(width - n.size(), '0') + n;
                }
                ++ordinal;
            }
        }
    }

    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser_;
    std::optional<ParseError> error_;
    CaseLog log_;
    Trace trace_;
    std::optional<std::string> trace_case_;
    std::optional<PendingEvent> event_;
    std::vector<bool> synthesized_;
    std::size_t trace_event_count_ = 0;
    int skip_depth_ = 0;
    int attr_depth_ = 0;
    bool in_trace_ = false;
    bool saw_log_ = false;
};

// ---------------------------------------------------------------- OCEL2

using nlohmann::json;

// attribute name -> declared OCEL type, per object/event type
using TypeDecls = std::unordered_map<std::string, std::unordered_map<std::string, std::string>>;

TypeDecls read_type_decls(const json& doc, const char* field) {
    TypeDecls decls;
    auto it = doc.find(field);
    if (it == doc.end() || !it->is_array()) return decls;
    for (const auto& t : *it) {
        if (!t.is_object() || !t.contains("name") || !t["name"].is_string()) continue;
        auto& attrs = decls[t["name"].get<std::string>()];
        if (auto a = t.find("attributes"); a != t.end() && a->is_array()) {
            for (const auto& attr : *a) {
                if (attr.contains("name") && attr["name"].is_string() && attr.contains("type") &&
                    attr["type"].is_string())
                    attrs[attr["name"].get<std::string>()] = attr["type"].get<std::string>();
            }
        }
    }
    return decls;
}

std::optional<Value> json_value(const json& j, const std::string* declared) {
    if (j.is_null()) return std::nullopt;
    std::string raw = j.is_string() ? j.get<std::string>() : j.dump();
    if (declared) {
        const std::string& type = *declared;
        if (type == "integer" || type == "int") {
            if (j.is_number_integer()) return Value(j.get<std::int64_t>());
            std::int64_t v = 0;
            auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (!raw.empty() && res.ec == std::errc() && res.ptr == raw.data() + raw.size()) return Value(v);
        } else if (type == "float" || type == "double") {
            try {
                return Value(Decimal::parse(raw));
            } catch (const std::invalid_argument&) {
            }
        } else if (type == "boolean") {
            if (j.is_boolean()) return Value(j.get<bool>());
            if (raw == "true") return Value(true);
            if (raw == "false") return Value(false);
        } else if (type == "time" || type == "date") {
            if (auto t = parse_instant(raw)) return Value(*t);
        }
        if (j.is_string()) return Value(raw);
    }
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_number_float()) return Value(Decimal::parse(raw));
    return Value(raw);
}

const std::string& required_string(const json& j, const char* field, const std::string& what) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) throw ParseError(what + ": missing or non-string '" + field + "'");
    return it->get_ref<const std::string&>();
}

std::vector<QualifiedLink> read_links(const json& j, const std::string& what) {
    std::vector<QualifiedLink> links;
    auto it = j.find("relationships");
    if (it == j.end() || it->is_null()) return links;
    if (!it->is_array()) throw ParseError(what + ": 'relationships' is not an array");
    for (const auto& r : *it) {
        if (!r.is_object()) throw ParseError(what + ": relationship is not an object");
        QualifiedLink link;
        link.target = required_string(r, "objectId", what + " relationship");
        if (auto q = r.find("qualifier"); q != r.end() && q->is_string()) link.qualifier = q->get<std::string>();
        links.push_back(std::move(link));
    }
    return links;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

CaseLog parse_xes(std::string_view text) {
    return XesReader().read(text);
}

OcelLog parse_ocel2_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(std::string("JSON syntax error: ") + e.what(), line, col);
    }
    if (!doc.is_object()) throw ParseError("OCEL document must be a JSON object");
    auto objects = doc.find("objects");
    auto events = doc.find("events");
    if (objects == doc.end() || !objects->is_array()) throw ParseError("OCEL document: missing 'objects' array");
    if (events == doc.end() || !events->is_array()) throw ParseError("OCEL document: missing 'events' array");

    TypeDecls object_decls = read_type_decls(doc, "objectTypes");
    TypeDecls event_decls = read_type_decls(doc, "eventTypes");

    OcelLog log;
    log.objects.reserve(objects->size());
    for (const auto& jo : *objects) {
        if (!jo.is_object()) throw ParseError("OCEL object entry is not a JSON object");
        OcelObject o;
        o.id = required_string(jo, "id", "object");
        std::string what = "object '" + o.id + "'";
        o.type = required_string(jo, "type", what);
        const auto* decls = object_decls.contains(o.type) ? &object_decls.at(o.type) : nullptr;
        if (auto attrs = jo.find("attributes"); attrs != jo.end() && attrs->is_array()) {
            // Object attributes are time-stamped; the latest value wins.
            std::unordered_map<std::string, Instant> latest;
            for (const auto& a : *attrs) {
                const auto& name = required_string(a, "name", what + " attribute");
                auto v = a.find("value");
                if (v == a.end()) throw ParseError(what + " attribute '" + name + "': missing value");
                Instant when{};
                if (auto t = a.find("time"); t != a.end() && t->is_string()) {
                    if (auto parsed = parse_instant(t->get<std::string>())) when = *parsed;
                }
                if (auto prev = latest.find(name); prev != latest.end() && prev->second > when) continue;
                const std::string* declared = nullptr;
                if (decls) {
                    if (auto d = decls->find(name); d != decls->end()) declared = &d->second;
                }
                if (auto typed = json_value(*v, declared)) {
                    o.attributes.insert_or_assign(name, std::move(*typed));
                    latest[name] = when;
                }
            }
        }
        o.o2o = read_links(jo, what);
        log.objects.push_back(std::move(o));
    }

    log.events.reserve(events->size());
    for (const auto& je : *events) {
        if (!je.is_object()) throw ParseError("OCEL event entry is not a JSON object");
        OcelEvent e;
        e.id = required_string(je, "id", "event");
        std::string what = "event '" + e.id + "'";
        e.type = required_string(je, "type", what);
        const auto& time = required_string(je, "time", what);
        auto t = parse_instant(time);
        if (!t) throw ParseError(what + ": unparsable time '" + time + "'");
        e.timestamp = *t;
        const auto* decls = event_decls.contains(e.type) ? &event_decls.at(e.type) : nullptr;
        if (auto attrs = je.find("attributes"); attrs != je.end() && attrs->is_array()) {
            for (const auto& a : *attrs) {
                const auto& name = required_string(a, "name", what + " attribute");
                auto v = a.find("value");
                if (v == a.end()) throw ParseError(what + " attribute '" + name + "': missing value");
                const std::string* declared = nullptr;
                if (decls) {
                    if (auto d = decls->find(name); d != decls->end()) declared = &d->second;
                }
                if (auto typed = json_value(*v, declared)) e.attributes.insert_or_assign(name, std::move(*typed));
            }
        }
        e.e2o = read_links(je, what);
        log.events.push_back(std::move(e));
    }

    validate(log);
    return log;
}

} // namespace elkg
