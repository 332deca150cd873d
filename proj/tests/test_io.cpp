#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "qkd/io.hpp"

using namespace qkd;

#ifndef QKD_DATA_DIR
#error "QKD_DATA_DIR must be defined by the build"
#endif

namespace {

std::string temp_csv(const std::string& content) {
    static int counter = 0;
    std::string path = "test_io_tmp_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("bundled table parses to seven rows") {
    const auto rows = parse_measured_table(std::string(QKD_DATA_DIR) + "/table1.csv");
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].first.loss_db == doctest::Approx(1.24));
    CHECK(rows[0].second.q_mu == doctest::Approx(1.182e-2));
    CHECK(rows[0].second.y0 == doctest::Approx(4.383e-6));
    CHECK(rows[6].first.loss_db == doctest::Approx(11.01));
}

TEST_CASE("empty file is a parse error") {
    const std::string path = temp_csv("");
    CHECK_THROWS_AS(parse_measured_table(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("missing file is a parse error") {
    CHECK_THROWS_AS(parse_measured_table("no_such_file.csv"), ParseError);
}

TEST_CASE("wrong header is a parse error") {
    const std::string path = temp_csv("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(parse_measured_table(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("out-of-range probability names the field") {
    const std::string path = temp_csv(
        "loss_db,q_mu,e_mu,q_nu,e_nu,y0\n1.0,1e-2,1.5,1e-3,0.05,1e-6\n");
    try {
        parse_measured_table(path);
        FAIL("expected invariant violation");
    } catch (const std::invalid_argument& ex) {
        CHECK(std::string(ex.what()).find("e_mu") != std::string::npos);
        CHECK(std::string(ex.what()).find("line 2") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("malformed field reports the line number") {
    const std::string path = temp_csv(
        "loss_db,q_mu,e_mu,q_nu,e_nu,y0\n"
        "1.0,1e-2,0.05,1e-3,0.05,1e-6\n"
        "2.0,oops,0.05,1e-3,0.05,1e-6\n");
    try {
        parse_measured_table(path);
        FAIL("expected parse error");
    } catch (const ParseError& ex) {
        CHECK(std::string(ex.what()).find("line 3") != std::string::npos);
        CHECK(std::string(ex.what()).find("q_mu") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("write/parse round trip preserves values exactly") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> gain(1e-6, 0.5);
    std::uniform_real_distribution<double> err(0.0, 0.2);
    std::vector<MeasuredRow> rows;
    for (int i = 0; i < 40; ++i) {
        const double y0 = gain(rng) * 1e-4;
        rows.emplace_back(ChannelPoint(i * 0.37),
                          MeasuredStats(gain(rng) + y0, err(rng), gain(rng) + y0,
                                        err(rng), y0));
    }
    const std::string path = temp_csv("");
    write_measured_table(path, rows);
    const auto parsed = parse_measured_table(path);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].first.loss_db == rows[i].first.loss_db);
        CHECK(parsed[i].second.q_mu == rows[i].second.q_mu);
        CHECK(parsed[i].second.e_mu == rows[i].second.e_mu);
        CHECK(parsed[i].second.q_nu == rows[i].second.q_nu);
        CHECK(parsed[i].second.e_nu == rows[i].second.e_nu);
        CHECK(parsed[i].second.y0 == rows[i].second.y0);
    }
    std::remove(path.c_str());
}

TEST_CASE("file digest is stable and content-sensitive") {
    const std::string a = temp_csv("hello\n");
    const std::string b = temp_csv("hello\n");
    const std::string c = temp_csv("hellp\n");
    CHECK(file_digest(a) == file_digest(b));
    CHECK(file_digest(a) != file_digest(c));
    CHECK(file_digest(a).size() == 16);
    std::remove(a.c_str());
    std::remove(b.c_str());
    std::remove(c.c_str());
}
