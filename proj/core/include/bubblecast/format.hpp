#pragma once

#include <string>

namespace bubblecast {

/// Canonical numeric formatting for every machine-readable output:
/// 15 significant digits, shortest spelling ("%.15g").
std::string format_number(double value);

/// Escapes a string for embedding in a JSON document (adds quotes).
std::string json_quote(const std::string& text);

}  // namespace bubblecast
