#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "strongdeps/errors.hpp"

namespace strongdeps {

enum class Ordering : std::int8_t { Less = -1, Equal = 0, Greater = 1 };

// The five Debian version relations a constraint may use.
enum class Relation : std::uint8_t {
    StrictlyEarlier,  // <<
    EarlierEqual,     // <=
    Exactly,          // =
    LaterEqual,       // >=
    StrictlyLater,    // >>
};

inline std::string_view relation_symbol(Relation r) {
    switch (r) {
        case Relation::StrictlyEarlier: return "<<";
        case Relation::EarlierEqual:    return "<=";
        case Relation::Exactly:         return "=";
        case Relation::LaterEqual:      return ">=";
        case Relation::StrictlyLater:   return ">>";
    }
    return "?";
}

namespace detail {

inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Character weight for the lexical step: '~' sorts before everything
// (including the end of the string), letters before non-letters.
inline int version_char_weight(char c) {
    if (c == '~') return -1;
    if (c == '\0') return 0;
    if (ascii_alpha(c)) return static_cast<unsigned char>(c);
    return static_cast<unsigned char>(c) + 256;
}

// Compares two version fragments by alternating a lexical pass over the
// leading non-digit run and a numeric pass over the leading digit run.
inline Ordering compare_fragment(std::string_view a, std::string_view b) {
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        while ((ia < a.size() && !ascii_digit(a[ia])) ||
               (ib < b.size() && !ascii_digit(b[ib]))) {
            char ca = (ia < a.size() && !ascii_digit(a[ia])) ? a[ia] : '\0';
            char cb = (ib < b.size() && !ascii_digit(b[ib])) ? b[ib] : '\0';
            int wa = version_char_weight(ca);
            int wb = version_char_weight(cb);
            if (wa != wb) return wa < wb ? Ordering::Less : Ordering::Greater;
            if (ca != '\0') ++ia;
            if (cb != '\0') ++ib;
        }
        unsigned long long na = 0, nb = 0;
        while (ia < a.size() && ascii_digit(a[ia])) na = na * 10 + (a[ia++] - '0');
        while (ib < b.size() && ascii_digit(b[ib])) nb = nb * 10 + (b[ib++] - '0');
        if (na != nb) return na < nb ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

struct VersionParts {
    unsigned long long epoch = 0;
    std::string_view upstream;
    std::string_view revision;  // empty when absent; "" compares equal to "0"
};

inline bool upstream_char_ok(char c) {
    return ascii_digit(c) || ascii_alpha(c) || c == '.' || c == '+' ||
           c == '-' || c == ':' || c == '~';
}

inline VersionParts split_version(std::string_view v) {
    if (v.empty()) throw ParseError("empty version string");
    VersionParts parts;
    std::string_view rest = v;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
        std::string_view e = rest.substr(0, colon);
        if (e.empty())
            throw ParseError("malformed version '" + std::string(v) + "': empty epoch");
        for (char c : e)
            if (!ascii_digit(c))
                throw ParseError("malformed version '" + std::string(v) +
                                 "': non-numeric epoch");
        parts.epoch = std::stoull(std::string(e));
        rest = rest.substr(colon + 1);
    }
    if (auto dash = rest.rfind('-'); dash != std::string_view::npos) {
        parts.upstream = rest.substr(0, dash);
        parts.revision = rest.substr(dash + 1);
    } else {
        parts.upstream = rest;
    }
    if (parts.upstream.empty())
        throw ParseError("malformed version '" + std::string(v) +
                         "': empty upstream part");
    for (char c : parts.upstream)
        if (!upstream_char_ok(c))
            throw ParseError("malformed version '" + std::string(v) +
                             "': invalid character '" + std::string(1, c) + "'");
    for (char c : parts.revision)
        if (!upstream_char_ok(c) || c == ':' || c == '-')
            throw ParseError("malformed version '" + std::string(v) +
                             "': invalid character in revision");
    return parts;
}

}  // namespace detail

// Total order on Debian version strings: epoch numerically, then upstream
// and revision with digit/non-digit segmentation. A missing revision
// compares like "0"; '~' sorts before everything including end of part.
inline Ordering version_compare(std::string_view a, std::string_view b) {
    auto pa = detail::split_version(a);
    auto pb = detail::split_version(b);
    if (pa.epoch != pb.epoch)
        return pa.epoch < pb.epoch ? Ordering::Less : Ordering::Greater;
    if (auto c = detail::compare_fragment(pa.upstream, pb.upstream); c != Ordering::Equal)
        return c;
    return detail::compare_fragment(pa.revision, pb.revision);
}

inline bool version_satisfies(std::string_view candidate, Relation rel,
                              std::string_view wanted) {
    Ordering c = version_compare(candidate, wanted);
    switch (rel) {
        case Relation::StrictlyEarlier: return c == Ordering::Less;
        case Relation::EarlierEqual:    return c != Ordering::Greater;
        case Relation::Exactly:         return c == Ordering::Equal;
        case Relation::LaterEqual:      return c != Ordering::Less;
        case Relation::StrictlyLater:   return c == Ordering::Greater;
    }
    return false;
}

}  // namespace strongdeps
