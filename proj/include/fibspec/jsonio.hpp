#pragma once

#include <complex>
#include <string>

#include <json.hpp>

namespace fibspec {

/// "%.17g" rendering; every double in machine output goes through this.
std::string format_double(double v);

/// Deterministic dump: keys in sorted order (nlohmann::json's std::map
/// already guarantees that), floats with 17 significant digits, 2-space
/// indentation. Non-finite doubles serialize as null.
std::string dump_deterministic(const nlohmann::json& j);

nlohmann::json complex_to_json(std::complex<double> z);

/// Command-line complex grammar: `a`, `bi`, `a+bi`, `a-bi` with ordinary
/// floating literals for a and b (`i` alone means 1i). Throws
/// std::invalid_argument on malformed input.
std::complex<double> parse_complex(const std::string& text);

}  // namespace fibspec
