#include "output.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "ssepfree/io.hpp"

namespace ssepfree::cli {

namespace {

void dump(const Json& j, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case Json::value_t::number_float: {
            double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : "null";
            break;
        }
        case Json::value_t::array:
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad;
                dump(j[i], depth + 1, out);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            out += close + "]";
            break;
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [k, v] : j.items()) {
                out += pad + Json(k).dump() + ": ";
                dump(v, depth + 1, out);
                out += ++i < j.size() ? ",\n" : "\n";
            }
            out += close + "}";
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump(j, 0, out);
    out += "\n";
    return out;
}

Json big(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    write_file_atomic(path, text);
}

}  // namespace ssepfree::cli
