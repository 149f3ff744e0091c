#ifndef SSEPFREE_IO_HPP
#define SSEPFREE_IO_HPP

#include <string>
#include <vector>

#include "ssepfree/bernoulli.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/grid.hpp"

namespace ssepfree {

/// Whole file as text; IoError names the path.
std::string read_file(const std::string& path);
/// Writes through a sibling temporary file renamed over the target.
void write_file_atomic(const std::string& path, const std::string& content);

/// Fixed format with 17 significant digits.
std::string format_number(double v);

/// Numeric CSV: comma separated, '.' decimal, mandatory header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    /// 1-based source line of each row.
    std::vector<long> lines;

    /// Column index by name, or -1.
    int column(const std::string& name) const;
};

/// Throws ParseError carrying the offending line.
CsvTable parse_csv(const std::string& text);
/// Grid profile from a table with columns (x, value) or a single value
/// column; x, when present, must be the uniform grid on [0, 1].
GridFunction grid_from_csv(const CsvTable& table, const std::string& column = "");
std::string grid_to_csv(const GridFunction& f, const std::string& name = "value");

/// {"N": n, "probabilities": {"0110": p, ...}} where character k is b_(k+1), or
/// {"independent": [g1, ..., gN]}. Absent configurations have weight 0.
BernoulliModel model_from_json(const std::string& text);
/// {"blacks": B, "whites": [tags...], "edges": [[b, w], ...]}, 0-based.
TaggedBipartiteGraph graph_from_json(const std::string& text);
/// Compact single-line form accepted by graph_from_json.
std::string graph_to_json(const TaggedBipartiteGraph& g);

/// e-monomial like e1^3*e2^3.
std::string monomial_name(const std::vector<int>& exponents);
/// Rows "monomial,coefficient".
std::string series_to_csv(const ExpansionSeries& s);

}  // namespace ssepfree

#endif
