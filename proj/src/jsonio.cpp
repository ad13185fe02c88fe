#include "fibspec/jsonio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fibspec {

namespace {

std::string escape(const std::string& s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
    return out;
}

void dump_rec(const nlohmann::json& j, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::null: out += "null"; break;
        case nlohmann::json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            break;
        case nlohmann::json::value_t::number_float: out += format_double(j.get<double>()); break;
        case nlohmann::json::value_t::string: out += escape(j.get<std::string>()); break;
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(item, depth + 1, out);
            }
            out += "\n" + pad + "]";
            break;
        }
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + escape(it.key()) + ": ";
                dump_rec(it.value(), depth + 1, out);
            }
            out += "\n" + pad + "}";
            break;
        }
        default: out += "null";
    }
}

[[noreturn]] void fail_parse(const std::string& text) {
    throw std::invalid_argument("cannot parse complex number '" + text +
                                "' (expected a, bi, a+bi, or a-bi)");
}

// One signed floating literal; "" / "+" / "-" mean +-1 (for bare "i" forms).
double parse_part(const std::string& part, const std::string& whole) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(part, &used);
    } catch (const std::exception&) {
        fail_parse(whole);
    }
    if (used != part.size()) fail_parse(whole);
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_deterministic(const nlohmann::json& j) {
    std::string out;
    dump_rec(j, 0, out);
    return out;
}

nlohmann::json complex_to_json(std::complex<double> z) {
    return nlohmann::json{{"im", z.imag()}, {"re", z.real()}};
}

std::complex<double> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail_parse(text);

    if (s.back() != 'i' && s.back() != 'I') return {parse_part(s, text), 0.0};
    s.pop_back();

    // Split at the last top-level sign; a sign right after an exponent
    // marker belongs to the exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_part(s, text)};
    return {parse_part(s.substr(0, split), text), parse_part(s.substr(split), text)};
}

}  // namespace fibspec
