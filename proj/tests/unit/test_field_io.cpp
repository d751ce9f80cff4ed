#include <doctest.h>

#include <cmath>
#include <sstream>

#include "confract/field_io.hpp"

using namespace confract;

TEST_CASE("numbers print with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(std::stod(format_number(std::exp(-2.0))) == std::exp(-2.0));
}

TEST_CASE("CSV round trip") {
    Table t;
    t.meta = {{"schema", kSchemaVersion}, {"alpha", "0.5"}};
    t.columns = {"s", "re", "im"};
    t.rows = {{1.0, 1.0 / 3.0, -0.0}, {2.0, 1e-300, 12345.678901234567}};
    std::stringstream ss;
    write_csv(ss, t);
    const std::string first = ss.str();
    CHECK(first.rfind("# schema: confract-csv/1\n# alpha: 0.5\ns,re,im\n", 0) == 0);
    const Table back = read_csv(ss);
    CHECK(back.meta_value("alpha") == "0.5");
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back.rows[i][j] == t.rows[i][j]);
    std::stringstream again;
    write_csv(again, back);
    CHECK(again.str() == first);
}

TEST_CASE("CSV errors") {
    std::stringstream bad("a,b\n1,2\n3\n");
    try {
        read_csv(bad);
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    std::stringstream word("a\nnan-ish\n");
    CHECK_THROWS_AS(read_csv(word), ParseError);
    std::stringstream empty("# only: meta\n");
    CHECK_THROWS_AS(read_csv(empty), ParseError);
}

TEST_CASE("fields convert to tables and back") {
    SpaceTimeField f;
    f.x_grid = {0.0, 0.5, 1.0};
    f.t_grid = {0.0, 1.0};
    f.values.resize(3, 2);
    f.values << 1.0, 1.0, 0.0, 0.25, 0.0, 0.125;
    f.problem.kind = ProblemKind::finite_mixed;
    f.problem.alpha = FractionalOrder(0.5);
    f.problem.U = 1.0;
    const Table t = field_to_table(f);
    CHECK(t.rows.size() == 6);
    CHECK(t.meta_value("problem") == "finite-mixed");
    const SpaceTimeField g = table_to_field(t);
    CHECK(g.x_grid == f.x_grid);
    CHECK(g.t_grid == f.t_grid);
    CHECK(g.values == f.values);
    CHECK(g.problem.kind == ProblemKind::finite_mixed);
    CHECK(g.problem.alpha.value() == 0.5);

    const nlohmann::json j = field_to_json(f);
    CHECK(j["values"][1][1].get<double>() == 0.25);
    CHECK(j["problem"]["kind"] == "finite-mixed");

    Table ragged = t;
    ragged.rows.pop_back();
    CHECK_THROWS_AS(table_to_field(ragged), ParseError);
}
