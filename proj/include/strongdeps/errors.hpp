#pragma once

#include <stdexcept>
#include <string>

namespace strongdeps {

// Malformed input text (control stanzas, dependency expressions, version
// strings, graph files). Carries a 1-based line/column when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::string msg, long line = 0, long column = 0)
        : std::runtime_error(decorate(msg, line, column)),
          line_(line), column_(column) {}

    long line() const { return line_; }
    long column() const { return column_; }

private:
    static std::string decorate(const std::string& msg, long line, long column) {
        std::string out = msg;
        if (line > 0) {
            out += " (line " + std::to_string(line);
            if (column > 0) out += ", column " + std::to_string(column);
            out += ")";
        }
        return out;
    }

    long line_;
    long column_;
};

// A semantically invalid argument: unknown package id, member outside the
// repository, too few records, and the like.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an operation requires an installable package and the given
// one has no healthy installation at all.
class NotInstallable : public std::runtime_error {
public:
    explicit NotInstallable(const std::string& what_package)
        : std::runtime_error("package is not installable: " + what_package) {}
};

}  // namespace strongdeps
