#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace elkg {

// Malformed input text: carries a 1-based position when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Input that parsed but violates a model invariant (dangling reference,
// duplicate id, IRI collision, bad perspective field, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A graph that does not have the ELKG trace shape (broken `next` chain).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace elkg
