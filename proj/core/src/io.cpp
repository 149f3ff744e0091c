#include "ssepfree/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssepfree/errors.hpp"

namespace ssepfree {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

long line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        long line = line_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("invalid JSON at line " + std::to_string(line) + ": " + e.what(), line);
    }
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path);
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("error while writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path);
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (!have_header) {
            for (const auto& f : fields)
                if (f.empty()) throw ParseError("empty column name in header at line " + std::to_string(lineno), lineno);
            t.header = fields;
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size())
            throw ParseError("expected " + std::to_string(t.header.size()) + " fields at line " + std::to_string(lineno),
                             lineno);
        std::vector<double> row;
        for (const auto& f : fields) {
            double v = 0;
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v))
                throw ParseError("invalid number '" + f + "' at line " + std::to_string(lineno), lineno);
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
        t.lines.push_back(lineno);
    }
    if (!have_header) throw ParseError("missing header row", lineno == 0 ? 1 : lineno);
    return t;
}

GridFunction grid_from_csv(const CsvTable& table, const std::string& column) {
    int col = -1;
    if (!column.empty()) {
        col = table.column(column);
        if (col < 0) throw ValidationError("no column named " + column);
    } else {
        col = table.column("value");
        if (col < 0) col = static_cast<int>(table.header.size()) - 1;
    }
    if (table.rows.size() < 17) throw ValidationError("a profile needs at least 17 rows (16 intervals)");
    const int M = static_cast<int>(table.rows.size()) - 1;
    std::vector<double> v;
    const int xcol = table.column("x");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (xcol >= 0 && xcol != col) {
            double x = table.rows[i][static_cast<std::size_t>(xcol)];
            if (std::abs(x - static_cast<double>(i) / M) > 1e-9)
                throw ParseError("x column is not the uniform grid on [0,1] at line " + std::to_string(table.lines[i]),
                                 table.lines[i]);
        }
        v.push_back(table.rows[i][static_cast<std::size_t>(col)]);
    }
    return GridFunction(M, std::move(v));
}

std::string grid_to_csv(const GridFunction& f, const std::string& name) {
    std::string out = "x," + name + "\n";
    for (int i = 0; i < f.size(); ++i) out += format_number(f.x(i)) + "," + format_number(f[i]) + "\n";
    return out;
}

BernoulliModel model_from_json(const std::string& text) {
    using nlohmann::json;
    json j = parse_json(text);
    if (!j.is_object()) throw ValidationError("model must be a JSON object");
    if (j.contains("independent")) {
        if (!j["independent"].is_array()) throw ValidationError("field 'independent' must be an array of numbers");
        std::vector<double> g;
        for (const auto& v : j["independent"]) {
            if (!v.is_number()) throw ValidationError("field 'independent' must be an array of numbers");
            g.push_back(v.get<double>());
        }
        if (j.contains("N") && j["N"] != static_cast<int>(g.size()))
            throw ValidationError("field 'N' disagrees with the length of 'independent'");
        return BernoulliModel::independent(g);
    }
    if (!j.contains("N") || !j["N"].is_number_integer()) throw ValidationError("field 'N' must be an integer");
    const int N = j["N"].get<int>();
    if (N < 1 || N > kMaxBernoulliSites) throw ValidationError("field 'N' must lie in 1..12");
    const char* field = j.contains("probabilities") ? "probabilities" : "probs";
    if (!j.contains(field) || !j[field].is_object()) throw ValidationError("field 'probabilities' must be an object");
    std::vector<double> p(std::size_t{1} << N, 0.0);
    for (const auto& [key, value] : j[field].items()) {
        if (static_cast<int>(key.size()) != N || key.find_first_not_of("01") != std::string::npos)
            throw ValidationError("field 'probabilities': key '" + key + "' must be " + std::to_string(N) + " characters of 0/1");
        if (!value.is_number()) throw ValidationError("field 'probabilities': value for '" + key + "' must be a number");
        std::size_t c = 0;
        for (int k = 0; k < N; ++k)
            if (key[static_cast<std::size_t>(k)] == '1') c |= std::size_t{1} << k;
        p[c] = value.get<double>();
    }
    return BernoulliModel(N, std::move(p));
}

TaggedBipartiteGraph graph_from_json(const std::string& text) {
    using nlohmann::json;
    json j = parse_json(text);
    try {
        auto blacks = j.at("blacks").get<int>();
        auto tags = j.at("whites").get<std::vector<int>>();
        auto edges = j.at("edges").get<std::vector<std::pair<int, int>>>();
        return TaggedBipartiteGraph::make(blacks, std::move(tags), std::move(edges));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("graph needs 'blacks', 'whites' and 'edges': ") + e.what());
    }
}

std::string graph_to_json(const TaggedBipartiteGraph& g) {
    nlohmann::ordered_json j;
    j["blacks"] = g.blacks;
    j["whites"] = g.white_tags;
    j["edges"] = g.edges;
    return j.dump();
}

std::string monomial_name(const std::vector<int>& exponents) {
    std::string out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "e" + std::to_string(i + 1);
        if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
    }
    return out.empty() ? "1" : out;
}

std::string series_to_csv(const ExpansionSeries& s) {
    std::string out = "monomial,coefficient\n";
    for (const auto& [ex, c] : s.terms) out += monomial_name(ex) + "," + format_number(c) + "\n";
    return out;
}

}  // namespace ssepfree
