#include "elkg/iri.hpp"

#include <cctype>
#include <filesystem>

#include "elkg/error.hpp"
#include "elkg/turtle.hpp"

namespace elkg {

std::string sanitize_local_name(std::string_view raw) {
    if (raw.empty()) return "_";
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
        out += keep && static_cast<unsigned char>(c) < 0x80 ? c : '_';
    }
    return out;
}

namespace {

std::string prefix_from_path(std::string_view path) {
    std::string stem = std::filesystem::path(std::string(path)).stem().string();
    std::string prefix;
    for (char c : stem) {
        if (std::isalnum(static_cast<unsigned char>(c)) && static_cast<unsigned char>(c) < 0x80) {
            prefix += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (c == '_' || c == '-') {
            prefix += c;
        }
    }
    if (prefix.empty() || !std::isalpha(static_cast<unsigned char>(prefix.front())) ||
        default_prefixes().contains(prefix))
        return "log";
    return prefix;
}

} // namespace

IriScheme IriScheme::from_file_name(std::string_view path) {
    std::string prefix = prefix_from_path(path);
    return {prefix, "http://example.org/" + prefix + "#"};
}

IriScheme IriScheme::with_base(std::string base, std::string_view path) {
    if (!is_valid_iri(base)) throw ValidationError("invalid base IRI '" + base + "'");
    return {prefix_from_path(path), std::move(base)};
}

IriMinter::IriMinter(IriScheme scheme) : scheme_(std::move(scheme)) {
    if (!is_valid_iri(scheme_.base)) throw ValidationError("invalid base IRI '" + scheme_.base + "'");
}

Term IriMinter::mint(Kind kind, std::string_view tag, std::string_view raw) {
    auto k = static_cast<int>(kind);
    std::string key(raw);
    if (auto hit = cache_[k].find(key); hit != cache_[k].end()) return hit->second;
    std::string local = std::string(tag) + sanitize_local_name(raw);
    auto [it, inserted] = seen_[k].try_emplace(local, key);
    if (!inserted && it->second != key) {
        throw ValidationError("IRI collision: '" + it->second + "' and '" + key + "' both map to local name '" +
                              local + "'");
    }
    Term t = Term::resource(scheme_.base + local);
    cache_[k].emplace(std::move(key), t);
    return t;
}

} // namespace elkg
