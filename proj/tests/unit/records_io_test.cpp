#include <doctest.h>

#include "disparity/error.hpp"
#include "disparity/records_io.hpp"

using namespace disparity;

TEST_CASE("split_csv_line handles quotes") {
    CHECK(split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split_csv_line(R"("x, y",1,"say ""hi""")") == std::vector<std::string>{"x, y", "1", "say \"hi\""});
    CHECK_THROWS_AS(split_csv_line("\"open,1"), Error);
}

TEST_CASE("aggregated rows parse into outcomes") {
    const auto in = parse_aggregated_csv("group,n,z\nA,100,40\nB,50,10\n");
    REQUIRE(in.groups.size() == 2);
    CHECK(in.groups[0].key() == GroupKey{"A"});
    CHECK(in.groups[0].n() == 100);
    CHECK(in.groups[0].z() == 40);
    CHECK(in.groups[0].y() == 0.4);
}

TEST_CASE("aggregated input errors") {
    CHECK_THROWS_WITH_AS(parse_aggregated_csv("group,n,z\nA,10,11\n"), doctest::Contains("line 2"), Error);
    CHECK_THROWS_WITH_AS(parse_aggregated_csv("group,n,z\nA,10,1\nB,x,1\n"), doctest::Contains("line 3"), Error);
    CHECK_THROWS_WITH_AS(parse_aggregated_csv("group,n,z\nA,10,1\nA,10,2\n"), doctest::Contains("duplicate group"), Error);
    CHECK_THROWS_WITH_AS(parse_aggregated_csv("group,n\nA,10\n"), doctest::Contains("'z'"), Error);
    CHECK_THROWS_WITH_AS(parse_aggregated_csv(""), doctest::Contains("no data"), Error);
    CHECK_THROWS_WITH_AS(parse_aggregated_csv("group,n,z\n"), doctest::Contains("no data"), Error);

    const auto zero = parse_aggregated_csv("group,n,z\nA,0,0\nB,3,1\nC,4,4\n");
    CHECK(zero.groups.size() == 2);
    REQUIRE(zero.excluded.size() == 1);
    CHECK(zero.excluded[0].reason == "zero trials");
}

TEST_CASE("records parse with CRLF, BOM and blank lines") {
    const auto t = parse_records_csv("\xEF\xBB\xBFrace,label,prediction,age\r\nA,1,0,young\r\n\r\nB,0,0,\r\n");
    CHECK(t.columns == std::vector<std::string>{"race", "age"});
    REQUIRE(t.size() == 2);
    CHECK(t.labels == std::vector<std::uint8_t>{1, 0});
    CHECK(t.predictions == std::vector<std::uint8_t>{0, 0});
    CHECK(t.rows[1] == std::vector<std::string>{"B", ""});
}

TEST_CASE("records input errors") {
    CHECK_THROWS_WITH_AS(parse_records_csv("race,label,prediction\nA,1,1\nB,2,0\n"),
                         doctest::Contains("line 3: label must be 0 or 1"), Error);
    CHECK_THROWS_WITH_AS(parse_records_csv("race,label,prediction\nA,1\n"), doctest::Contains("line 2"), Error);
    CHECK_THROWS_WITH_AS(parse_records_csv("race,label\nA,1\n"), doctest::Contains("'prediction'"), Error);
    CHECK_THROWS_WITH_AS(parse_records_csv(""), doctest::Contains("no data"), Error);
}

TEST_CASE("load_records reads files") {
    const std::string dir = DISPARITY_TEST_DATA;
    const auto rec = load_records(dir + "/records.csv", InputFormat::records);
    CHECK(std::get<RecordTable>(rec).size() == 40);
    const auto agg = load_records(dir + "/aggregated.csv", InputFormat::aggregated);
    CHECK(std::get<AggregatedInput>(agg).groups.size() == 3);
    CHECK_THROWS_WITH_AS(load_records(dir + "/does_not_exist.csv", InputFormat::records),
                         doctest::Contains("cannot open"), Error);
    CHECK(parse_input_format("aggregated") == InputFormat::aggregated);
    CHECK_FALSE(parse_input_format("parquet").has_value());
}
