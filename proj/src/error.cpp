#include "elkg/error.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace elkg {

namespace {

std::string with_position(const std::string& msg, std::size_t line, std::size_t column) {
    if (line == 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
}

} // namespace

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(with_position(msg, line, column)), line_(line), column_(column) {}

std::string read_file(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed for '" + path + "'");
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    if (path == "-") {
        std::cout << contents;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace elkg
