#include "confract/field_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

namespace confract {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_number(const std::string& text, std::size_t line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a number", line, {"number"});
    return v;
}

std::vector<double> distinct_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::string Table::meta_value(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return "";
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DomainError("table has no column '" + name + "'");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (const auto& [k, v] : table.meta) out << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string::npos) {
                t.meta.emplace_back(body, "");
            } else {
                t.meta.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
            }
            continue;
        }
        if (!have_header) {
            t.columns = split(line);
            have_header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != t.columns.size())
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                                 " fields, found " + std::to_string(cells.size()),
                             lineno, {std::to_string(t.columns.size()) + " fields"});
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_number(c, lineno));
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("CSV has no header row", lineno, {"header row"});
    return t;
}

nlohmann::json table_to_json(const Table& table) {
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : table.meta) meta[k] = v;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = row[i];
        rows.push_back(std::move(r));
    }
    return {{"meta", meta}, {"columns", table.columns}, {"rows", rows}};
}

Table field_to_table(const SpaceTimeField& field) {
    field.validate();
    const DiffusionProblem& p = field.problem;
    Table t;
    t.meta = {{"schema", kSchemaVersion},
              {"kind", "field"},
              {"problem", to_string(p.kind)},
              {"alpha", format_number(p.alpha.value())},
              {"kappa", format_number(p.kappa)}};
    if (p.kind == ProblemKind::finite_mixed) {
        t.meta.emplace_back("length", format_number(p.a_len));
        t.meta.emplace_back("boundary_level", format_number(p.U));
    }
    if (p.kind == ProblemKind::semi_infinite && p.boundary_f && p.boundary_f->source())
        t.meta.emplace_back("f", *p.boundary_f->source());
    t.columns = {"x", "t", "u"};
    for (std::size_t i = 0; i < field.x_grid.size(); ++i)
        for (std::size_t j = 0; j < field.t_grid.size(); ++j)
            t.rows.push_back({field.x_grid[i], field.t_grid[j],
                              field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    return t;
}

SpaceTimeField table_to_field(const Table& table) {
    const std::size_t cx = table.column("x"), ct = table.column("t"), cu = table.column("u");
    SpaceTimeField f;
    std::vector<double> xs, ts;
    for (const auto& r : table.rows) {
        xs.push_back(r[cx]);
        ts.push_back(r[ct]);
    }
    f.x_grid = distinct_sorted(xs);
    f.t_grid = distinct_sorted(ts);
    if (f.x_grid.size() * f.t_grid.size() != table.rows.size())
        throw ParseError("field CSV rows do not form a rectangular grid", 0, {"x-major rectangular grid"});
    f.values.resize(static_cast<Eigen::Index>(f.x_grid.size()), static_cast<Eigen::Index>(f.t_grid.size()));
    std::map<double, Eigen::Index> xi, ti;
    for (std::size_t i = 0; i < f.x_grid.size(); ++i) xi[f.x_grid[i]] = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < f.t_grid.size(); ++j) ti[f.t_grid[j]] = static_cast<Eigen::Index>(j);
    for (const auto& r : table.rows) f.values(xi.at(r[cx]), ti.at(r[ct])) = r[cu];

    const std::string problem = table.meta_value("problem");
    if (!problem.empty()) f.problem.kind = parse_problem_kind(problem);
    const std::string alpha = table.meta_value("alpha");
    if (!alpha.empty()) f.problem.alpha = FractionalOrder(parse_number(alpha, 0));
    const std::string kappa = table.meta_value("kappa");
    if (!kappa.empty()) f.problem.kappa = parse_number(kappa, 0);
    const std::string length = table.meta_value("length");
    if (!length.empty()) f.problem.a_len = parse_number(length, 0);
    const std::string level = table.meta_value("boundary_level");
    if (!level.empty()) f.problem.U = parse_number(level, 0);
    return f;
}

nlohmann::json problem_to_json(const DiffusionProblem& p) {
    nlohmann::json j = {{"kind", to_string(p.kind)}, {"alpha", p.alpha.value()}, {"kappa", p.kappa}};
    if (p.kind == ProblemKind::finite_mixed) {
        j["length"] = p.a_len;
        j["boundary_level"] = p.U;
    }
    if (p.kind == ProblemKind::semi_infinite && p.boundary_f && p.boundary_f->source())
        j["f"] = *p.boundary_f->source();
    return j;
}

nlohmann::json field_to_json(const SpaceTimeField& field) {
    field.validate();
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index i = 0; i < field.values.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(field.values.cols()));
        for (Eigen::Index j = 0; j < field.values.cols(); ++j) row[static_cast<std::size_t>(j)] = field.values(i, j);
        values.push_back(row);
    }
    return {{"schema", kSchemaVersion},
            {"problem", problem_to_json(field.problem)},
            {"x_grid", field.x_grid},
            {"t_grid", field.t_grid},
            {"values", values}};
}

}  // namespace confract
