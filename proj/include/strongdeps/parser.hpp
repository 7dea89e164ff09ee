#pragma once

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "strongdeps/errors.hpp"
#include "strongdeps/model.hpp"

namespace strongdeps {

// Diagnostics accumulated while loading a Packages file. Parsing stays
// total for recoverable problems (skipped stanzas, duplicates); grammar
// errors in dependency fields abort with a ParseError.
struct LoadReport {
    std::size_t stanzas = 0;
    std::size_t skipped = 0;     // stanzas missing Package or Version
    std::size_t duplicates = 0;  // (name, version) seen twice; last wins
    std::vector<std::string> notes;
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

inline bool is_space(char c) { return c == ' ' || c == '\t'; }

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (is_space(s.front()) || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// One RFC-822-ish stanza: ordered (lowercased name, value, line) triples.
struct Stanza {
    struct Field {
        std::string name;
        std::string value;
        long line;
    };
    std::vector<Field> fields;
    long first_line = 0;

    const Field* find(std::string_view lower_name) const {
        for (const Field& f : fields)
            if (f.name == lower_name) return &f;
        return nullptr;
    }
};

inline bool field_name_char(char c) {
    return c > ' ' && c != ':' && static_cast<unsigned char>(c) < 127;
}

// Splits the byte stream into stanzas. Continuation lines (leading
// whitespace) are folded into the previous field with a single space;
// '#' comment lines are skipped.
inline std::vector<Stanza> split_stanzas(std::string_view text) {
    std::vector<Stanza> out;
    Stanza current;
    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            if (!current.fields.empty()) out.push_back(std::move(current));
            current = Stanza{};
            continue;
        }
        if (line.front() == '#') continue;
        if (is_space(line.front())) {
            if (current.fields.empty())
                throw ParseError("continuation line outside any field", line_no);
            current.fields.back().value += ' ';
            current.fields.back().value += trim(line);
            continue;
        }
        std::size_t colon = 0;
        while (colon < line.size() && field_name_char(line[colon])) ++colon;
        if (colon == 0 || colon >= line.size() || line[colon] != ':')
            throw ParseError("expected 'Field: value'", line_no);
        Stanza::Field f;
        f.name = ascii_lower(line.substr(0, colon));
        f.value = std::string(trim(line.substr(colon + 1)));
        f.line = line_no;
        if (current.fields.empty()) current.first_line = line_no;
        // repeated field in one stanza: last occurrence wins
        for (auto it = current.fields.begin(); it != current.fields.end(); ++it) {
            if (it->name == f.name) {
                current.fields.erase(it);
                break;
            }
        }
        current.fields.push_back(std::move(f));
    }
    if (!current.fields.empty()) out.push_back(std::move(current));
    return out;
}

// Recursive-descent scanner over one dependency/conflict field value.
class RelationScanner {
public:
    RelationScanner(std::string_view text, long line)
        : text_(text), line_(line) {}

    // formula := clause (',' clause)* ; clause := pred ('|' pred)*
    DependencyFormula parse_formula() {
        DependencyFormula out;
        skip_space();
        if (done()) return out;
        out.clauses.push_back(parse_clause());
        while (accept(',')) out.clauses.push_back(parse_clause());
        expect_end();
        return out;
    }

    // Flat comma list, alternatives rejected (Conflicts grammar).
    std::vector<PackagePredicate> parse_predicate_list() {
        std::vector<PackagePredicate> out;
        skip_space();
        if (done()) return out;
        out.push_back(parse_predicate());
        while (accept(',')) out.push_back(parse_predicate());
        if (!done() && peek() == '|')
            fail("alternatives ('|') are not allowed in this field");
        expect_end();
        return out;
    }

    // Bare feature names, constraints rejected (Provides grammar).
    std::vector<std::string> parse_name_list() {
        std::vector<std::string> out;
        skip_space();
        if (done()) return out;
        out.push_back(parse_bare_name());
        while (accept(',')) out.push_back(parse_bare_name());
        expect_end();
        return out;
    }

private:
    Clause parse_clause() {
        Clause clause;
        clause.push_back(parse_predicate());
        while (accept('|')) clause.push_back(parse_predicate());
        return clause;
    }

    PackagePredicate parse_predicate() {
        PackagePredicate pred;
        pred.target = parse_name();
        skip_space();
        if (!done() && peek() == '(') {
            ++pos_;
            skip_space();
            pred.constraint = parse_constraint();
            skip_space();
            if (done() || peek() != ')')
                fail("unbalanced parenthesis in version constraint");
            ++pos_;
            skip_space();
        }
        return pred;
    }

    VersionConstraint parse_constraint() {
        std::size_t start = pos_;
        while (!done() && (peek() == '<' || peek() == '>' || peek() == '='))
            ++pos_;
        std::string_view op = text_.substr(start, pos_ - start);
        Relation rel;
        if (op == "<<") rel = Relation::StrictlyEarlier;
        else if (op == "<=") rel = Relation::EarlierEqual;
        else if (op == "=") rel = Relation::Exactly;
        else if (op == ">=") rel = Relation::LaterEqual;
        else if (op == ">>") rel = Relation::StrictlyLater;
        else if (op == "<" || op == ">")
            fail("ambiguous relation '" + std::string(op) +
                 "': use one of <<, <=, =, >=, >>", start);
        else
            fail("expected a version relation (<<, <=, =, >=, >>)", start);
        skip_space();
        std::size_t vstart = pos_;
        while (!done() && peek() != ')' && !is_space(peek())) ++pos_;
        if (pos_ == vstart) fail("missing version after relation", vstart);
        VersionConstraint c{rel, std::string(text_.substr(vstart, pos_ - vstart))};
        validate_version(c.version, line_, column(vstart));
        return c;
    }

    static void validate_version(const std::string& v, long line, long col) {
        try {
            version_compare(v, v);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line, col);
        }
    }

    std::string parse_name() {
        skip_space();
        std::size_t start = pos_;
        while (!done() && name_char(peek())) ++pos_;
        if (pos_ == start) {
            if (!done() && peek() == ':')
                fail("unexpected ':'");
            fail("empty package predicate");
        }
        if (!done() && peek() == ':')
            fail("architecture qualifiers are not supported", pos_);
        if (!done() && peek() == '[')
            fail("architecture restrictions are not supported", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string parse_bare_name() {
        std::string name = parse_name();
        skip_space();
        if (!done() && peek() == '(')
            fail("version constraints are not allowed in this field", pos_);
        return name;
    }

    static bool name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.' ||
               c == '_';
    }

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_space() { while (!done() && is_space(peek())) ++pos_; }

    bool accept(char c) {
        skip_space();
        if (done() || peek() != c) return false;
        ++pos_;
        skip_space();
        return true;
    }

    void expect_end() {
        skip_space();
        if (!done()) fail(std::string("unexpected '") + peek() + "'");
    }

    long column(std::size_t at) const { return static_cast<long>(at) + 1; }

    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, line_, column(at));
    }

    std::string_view text_;
    long line_;
    std::size_t pos_ = 0;
};

inline bool looks_gzipped(std::string_view bytes) {
    return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
           static_cast<unsigned char>(bytes[1]) == 0x8b;
}

inline std::string gunzip(std::string_view bytes) {
    z_stream strm{};
    if (inflateInit2(&strm, 15 + 32) != Z_OK)  // zlib or gzip, by header
        throw ParseError("cannot initialise zlib inflate");
    std::string out;
    std::vector<unsigned char> buf(1 << 16);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    strm.avail_in = static_cast<uInt>(bytes.size());
    int rc = Z_OK;
    do {
        strm.next_out = buf.data();
        strm.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw ParseError("corrupt gzip stream");
        }
        out.append(reinterpret_cast<char*>(buf.data()), buf.size() - strm.avail_out);
    } while (rc != Z_STREAM_END && (strm.avail_in > 0 || strm.avail_out == 0));
    inflateEnd(&strm);
    if (rc != Z_STREAM_END) throw ParseError("truncated gzip stream");
    return out;
}

}  // namespace detail

// formula := clause (',' clause)* ; clause := pred ('|' pred)* ;
// pred := name [ '(' relop version ')' ]. Order-preserving.
inline DependencyFormula parse_dependency_field(std::string_view text,
                                                long line = 0) {
    return detail::RelationScanner(text, line).parse_formula();
}

inline std::vector<PackagePredicate> parse_conflicts_field(std::string_view text,
                                                           long line = 0) {
    return detail::RelationScanner(text, line).parse_predicate_list();
}

inline std::vector<std::string> parse_provides_field(std::string_view text,
                                                     long line = 0) {
    return detail::RelationScanner(text, line).parse_name_list();
}

// Field-syntax serialisation; parsing its output yields the same formula.
inline std::string to_field_string(const PackagePredicate& pred) {
    std::string out = pred.target;
    if (pred.constraint) {
        out += " (";
        out += relation_symbol(pred.constraint->relation);
        out += ' ';
        out += pred.constraint->version;
        out += ')';
    }
    return out;
}

inline std::string to_field_string(const DependencyFormula& formula) {
    std::string out;
    for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
        if (c) out += ", ";
        for (std::size_t p = 0; p < formula.clauses[c].size(); ++p) {
            if (p) out += " | ";
            out += to_field_string(formula.clauses[c][p]);
        }
    }
    return out;
}

// Parses a whole Packages byte stream (plain or gzip, detected by magic
// bytes) into a Repository. One Package per stanza carrying both Package
// and Version; Depends and Pre-Depends are concatenated.
inline Repository parse_repository(std::string_view bytes,
                                   LoadReport* report = nullptr) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    std::string inflated;
    if (detail::looks_gzipped(bytes)) {
        inflated = detail::gunzip(bytes);
        bytes = inflated;
    }

    Repository repo;
    for (const detail::Stanza& stanza : detail::split_stanzas(bytes)) {
        ++rep.stanzas;
        const auto* name_f = stanza.find("package");
        const auto* version_f = stanza.find("version");
        if (!name_f || name_f->value.empty() || !version_f ||
            version_f->value.empty()) {
            ++rep.skipped;
            rep.notes.push_back("stanza at line " +
                                std::to_string(stanza.first_line) +
                                " lacks Package or Version; skipped");
            continue;
        }
        Package pkg;
        pkg.id.name = name_f->value;
        pkg.id.version = version_f->value;
        if (pkg.id.name.find_first_of(" \t") != std::string::npos)
            throw ParseError("package name contains whitespace", name_f->line);

        if (const auto* f = stanza.find("depends"))
            pkg.depends = parse_dependency_field(f->value, f->line);
        if (const auto* f = stanza.find("pre-depends")) {
            DependencyFormula pre = parse_dependency_field(f->value, f->line);
            for (auto& clause : pre.clauses)
                pkg.depends.clauses.push_back(std::move(clause));
        }
        if (const auto* f = stanza.find("conflicts"))
            pkg.conflicts = parse_conflicts_field(f->value, f->line);
        if (const auto* f = stanza.find("provides"))
            pkg.provides = parse_provides_field(f->value, f->line);

        if (!repo.add(std::move(pkg))) {
            ++rep.duplicates;
            rep.notes.push_back("duplicate stanza for " + name_f->value + " " +
                                version_f->value + " at line " +
                                std::to_string(stanza.first_line) +
                                "; last one wins");
        }
    }
    return repo;
}

// Reads and parses a Packages file from disk.
inline Repository load_packages_file(const std::string& path,
                                     LoadReport* report = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read " + path);
    return parse_repository(buf.str(), report);
}

}  // namespace strongdeps
