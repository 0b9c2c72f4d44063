#include "kv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "wavecore/errors.hpp"

namespace wavecore::kv {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

Entries parse_lines(std::string_view text) {
    Entries entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
        if (!entries.emplace(key, std::move(value)).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    return entries;
}

std::optional<std::string> take(Entries& entries, std::string_view key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    auto v = std::move(it->second);
    entries.erase(it);
    return v;
}

double parse_real(const std::string& key, std::string_view v) {
    if (v == "off") return std::numeric_limits<double>::infinity();
    const std::string s(v);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ValidationError(key, "expected a real number, got '" + s + "'");
    return out;
}

std::vector<double> parse_reals(const std::string& key, std::string_view v) {
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        out.push_back(parse_real(key, trim(v.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_reals(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_real(xs[i]);
    }
    return out;
}

}  // namespace wavecore::kv
