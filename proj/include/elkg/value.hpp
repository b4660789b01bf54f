#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace elkg {

// UTC instant with millisecond precision.
using Instant = std::chrono::sys_time<std::chrono::milliseconds>;
using Duration = std::chrono::milliseconds;

// Decimal attribute value: keeps the lexical form so conversion is lossless.
struct Decimal {
    std::string lexical;
    double value = 0.0;

    static Decimal from_double(double v);
    // Throws std::invalid_argument when `text` is not a number.
    static Decimal parse(std::string_view text);

    friend bool operator==(const Decimal& a, const Decimal& b) { return a.lexical == b.lexical; }
};

using Value = std::variant<std::string, bool, std::int64_t, Decimal, Instant>;
using AttributeMap = std::map<std::string, Value>;

// ISO-8601 date-time with optional fraction and `Z` or numeric offset; a
// missing offset means UTC. Returns nullopt on malformed input.
std::optional<Instant> parse_instant(std::string_view text);

// Canonical UTC form, `2014-10-22T09:15:41+00:00`, with `.mmm` when the
// millisecond part is non-zero.
std::string format_instant(Instant t);

// ISO-8601 duration in weeks, days, hours, minutes and (fractional) seconds,
// e.g. `P7D`, `PT1H30M`, `-PT0.5S`. Years and months are calendar-dependent
// and rejected. Returns nullopt on malformed input.
std::optional<Duration> parse_iso_duration(std::string_view text);

std::string value_to_string(const Value& v);

} // namespace elkg
