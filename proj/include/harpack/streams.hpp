#pragma once

#include "harpack/geometry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace harpack {

// Text formats.
//   placement stream: header "index,x,y,w,h,rotated", one row per rectangle.
//   box dump:         header "id,x,y,w,h", one row per empty box.
// Scalars are %.17g decimals in Float mode (exact binary64 round-trip) and
// p/q rationals in Exact mode.

inline constexpr const char* kPlacementHeader = "index,x,y,w,h,rotated";
inline constexpr const char* kBoxHeader = "id,x,y,w,h";

template <class S>
std::string placement_row(const Placement<S>& p) {
    std::string row = std::to_string(p.index);
    row += ',';
    row += ScalarOps<S>::format(p.x);
    row += ',';
    row += ScalarOps<S>::format(p.y);
    row += ',';
    row += ScalarOps<S>::format(p.w);
    row += ',';
    row += ScalarOps<S>::format(p.h);
    row += ',';
    row += p.rotated ? '1' : '0';
    row += '\n';
    return row;
}

template <class S>
std::string box_row(const EmptyBox<S>& b) {
    std::string row = std::to_string(b.id);
    row += ',';
    row += ScalarOps<S>::format(b.x);
    row += ',';
    row += ScalarOps<S>::format(b.y);
    row += ',';
    row += ScalarOps<S>::format(b.w);
    row += ',';
    row += ScalarOps<S>::format(b.h);
    row += '\n';
    return row;
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

template <class S>
S parse_scalar_or_throw(const std::string& s, const char* what) {
    auto v = ScalarOps<S>::parse(s);
    if (!v) throw std::runtime_error(std::string("malformed ") + what + ": " + s);
    return *v;
}

}  // namespace detail

template <class S>
std::vector<Placement<S>> read_placements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open placement stream: " + path);
    std::string line;
    if (!std::getline(in, line) || line.find("index,") != 0)
        throw std::runtime_error("malformed placement stream header: " + path);
    std::vector<Placement<S>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_fields(line);
        if (f.size() != 6) throw std::runtime_error("malformed placement row: " + line);
        Placement<S> p;
        p.index = std::stoull(f[0]);
        p.x = detail::parse_scalar_or_throw<S>(f[1], "x");
        p.y = detail::parse_scalar_or_throw<S>(f[2], "y");
        p.w = detail::parse_scalar_or_throw<S>(f[3], "w");
        p.h = detail::parse_scalar_or_throw<S>(f[4], "h");
        if (f[5] != "0" && f[5] != "1")
            throw std::runtime_error("malformed rotated flag: " + line);
        p.rotated = f[5] == "1";
        out.push_back(std::move(p));
    }
    return out;
}

template <class S>
std::vector<EmptyBox<S>> read_boxes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open box dump: " + path);
    std::string line;
    if (!std::getline(in, line) || line.find("id,") != 0)
        throw std::runtime_error("malformed box dump header: " + path);
    std::vector<EmptyBox<S>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_fields(line);
        if (f.size() != 5) throw std::runtime_error("malformed box row: " + line);
        out.push_back(EmptyBox<S>::make(
            std::stoull(f[0]), detail::parse_scalar_or_throw<S>(f[1], "x"),
            detail::parse_scalar_or_throw<S>(f[2], "y"),
            detail::parse_scalar_or_throw<S>(f[3], "w"),
            detail::parse_scalar_or_throw<S>(f[4], "h")));
    }
    return out;
}

/// Mode of a stream on disk: Exact iff any rational "p/q" field appears.
NumericMode detect_stream_mode(const std::string& path);

}  // namespace harpack
