#pragma once

// CSV and JSON artifacts. CSV files carry '#'-prefixed "key: value" metadata
// lines, one header row of column names, then rows of numbers printed with 17
// significant digits ('.' decimal point, ',' separator).

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "confract/diffusion.hpp"

namespace confract {

inline constexpr const char* kSchemaVersion = "confract-csv/1";

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Value of a metadata key, or empty.
    std::string meta_value(const std::string& key) const;
    std::size_t column(const std::string& name) const;
};

std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
/// Throws ParseError with the 1-based line number as offset.
Table read_csv(std::istream& in);

nlohmann::json table_to_json(const Table& table);

/// Columns x, t, u in x-major order; metadata records the problem.
Table field_to_table(const SpaceTimeField& field);
SpaceTimeField table_to_field(const Table& table);

nlohmann::json problem_to_json(const DiffusionProblem& problem);
/// {"problem": ..., "x_grid": [...], "t_grid": [...], "values": row-major u[x][t]}
nlohmann::json field_to_json(const SpaceTimeField& field);

}  // namespace confract
