#pragma once

// Shared helpers for the `key = value` text formats.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavecore::kv {

using Entries = std::map<std::string, std::string, std::less<>>;

std::string_view trim(std::string_view s);

/// Splits lines, strips `#` comments and blank lines. Throws ParseError on a
/// line without '=' or a duplicate key.
Entries parse_lines(std::string_view text);

std::optional<std::string> take(Entries& entries, std::string_view key);

double parse_real(const std::string& key, std::string_view v);
std::vector<double> parse_reals(const std::string& key, std::string_view v);
std::string format_real(double x);
std::string format_reals(const std::vector<double>& xs);

}  // namespace wavecore::kv
