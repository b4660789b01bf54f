#include "elkg/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <system_error>

namespace elkg {

namespace {

bool read_int(std::string_view s, std::size_t& pos, std::size_t digits, int& out) {
    if (pos + digits > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += digits;
    out = v;
    return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
}

} // namespace

Decimal Decimal::from_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    std::string lex(buf, res.ptr);
    if (lex.find('.') == std::string::npos) lex += ".0";
    return Decimal{lex, v};
}

Decimal Decimal::parse(std::string_view text) {
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    bool plain = text.find_first_of("eE") == std::string_view::npos && text.find('.') != std::string_view::npos &&
                 text.back() != '.' && text.front() != '.';
    if (plain) return Decimal{std::string(text), v};
    return from_double(v);
}

std::optional<Instant> parse_instant(std::string_view s) {
    using namespace std::chrono;
    std::size_t pos = 0;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!read_int(s, pos, 4, y) || !expect(s, pos, '-') || !read_int(s, pos, 2, mo) || !expect(s, pos, '-') ||
        !read_int(s, pos, 2, d))
        return std::nullopt;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't' || s[pos] == ' ')) {
        ++pos;
        if (!read_int(s, pos, 2, h) || !expect(s, pos, ':') || !read_int(s, pos, 2, mi)) return std::nullopt;
        if (pos < s.size() && s[pos] == ':') {
            ++pos;
            if (!read_int(s, pos, 2, sec)) return std::nullopt;
        }
    }
    int millis = 0;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
        ++pos;
        std::size_t start = pos;
        int scale = 100;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            millis += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
        }
        if (pos == start) return std::nullopt;
    }
    int offset_minutes = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            ++pos;
            int oh = 0, om = 0;
            if (!read_int(s, pos, 2, oh)) return std::nullopt;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos < s.size() && !read_int(s, pos, 2, om)) return std::nullopt;
            if (oh > 23 || om > 59) return std::nullopt;
            offset_minutes = (oh * 60 + om) * (c == '-' ? -1 : 1);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;
    if (h > 24 || mi > 59 || sec > 60) return std::nullopt;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    auto t = sys_days(ymd) + hours(h) + minutes(mi) + seconds(sec) + milliseconds(millis) - minutes(offset_minutes);
    return time_point_cast<milliseconds>(t);
}

std::string format_instant(Instant t) {
    using namespace std::chrono;
    auto day_point = floor<days>(t);
    year_month_day ymd{day_point};
    auto rest = t - day_point;
    auto h = duration_cast<hours>(rest);
    rest -= h;
    auto m = duration_cast<minutes>(rest);
    rest -= m;
    auto s = duration_cast<seconds>(rest);
    rest -= s;
    auto ms = rest.count();
    char buf[64];
    if (ms != 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(h.count()), static_cast<int>(m.count()), static_cast<int>(s.count()),
                      static_cast<int>(ms));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d+00:00", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(h.count()), static_cast<int>(m.count()), static_cast<int>(s.count()));
    }
    return buf;
}

std::optional<Duration> parse_iso_duration(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || s.front() != 'P') return std::nullopt;
    s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    bool in_time = false;
    bool any = false;
    double total_ms = 0.0;
    while (!s.empty()) {
        if (s.front() == 'T') {
            if (in_time) return std::nullopt;
            in_time = true;
            s.remove_prefix(1);
            if (s.empty()) return std::nullopt;
            continue;
        }
        std::size_t n = 0;
        while (n < s.size() && ((s[n] >= '0' && s[n] <= '9') || s[n] == '.' || s[n] == ',')) ++n;
        if (n == 0 || n == s.size()) return std::nullopt;
        std::string num(s.substr(0, n));
        for (auto& c : num)
            if (c == ',') c = '.';
        double v = 0.0;
        auto res = std::from_chars(num.data(), num.data() + num.size(), v);
        if (res.ec != std::errc() || res.ptr != num.data() + num.size()) return std::nullopt;
        char unit = s[n];
        s.remove_prefix(n + 1);
        if (!in_time) {
            if (unit == 'W') total_ms += v * 7 * 86400000.0;
            else if (unit == 'D') total_ms += v * 86400000.0;
            else return std::nullopt;
        } else {
            if (unit == 'H') total_ms += v * 3600000.0;
            else if (unit == 'M') total_ms += v * 60000.0;
            else if (unit == 'S') total_ms += v * 1000.0;
            else return std::nullopt;
        }
        any = true;
    }
    if (!any) return std::nullopt;
    auto ms = static_cast<std::int64_t>(std::llround(total_ms));
    return Duration(negative ? -ms : ms);
}

std::string value_to_string(const Value& v) {
    struct Visitor {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(const Decimal& d) const { return d.lexical; }
        std::string operator()(Instant t) const { return format_instant(t); }
    };
    return std::visit(Visitor{}, v);
}

} // namespace elkg
