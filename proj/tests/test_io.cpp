#include "doctest.h"
#include <stdexcept>
#include "sseq/chart.hpp"
#include <cstdio>
#include <fstream>
#include "sseq/tower_io.hpp"

using namespace sseq;
using nlohmann::json;

namespace {

json t1_doc()
{
    return json::parse(R"({
        "p": 2,
        "generators": [
            {"name": "a", "degree": 1, "filtration": 0},
            {"name": "b", "degree": 0, "filtration": 1}
        ],
        "differential": [
            {"from": "a", "to": [["b", 1]]}
        ]
    })");
}

}  // namespace

TEST_CASE("parsing the worked tower document")
{
    FilteredComplex f = parse_tower_json(t1_doc());
    Tower t = f.to_tower();
    CHECK(t.length() == 1);
    CHECK(page(t, 1).module.dims == std::map<Bidegree, int>{{{0, 1}, 1}, {{1, 1}, 1}});
    CHECK(page(t, 2).module.dims.empty());
}

TEST_CASE("empty generator list gives the zero tower")
{
    FilteredComplex f = parse_tower_json(json::parse(R"({"p": 3, "generators": [],
        "differential": []})"));
    Tower t = f.to_tower();
    CHECK(t.length() == 0);
    CHECK(t.level(0).empty());
}

TEST_CASE("rejections name the offending generator")
{
    json bad = t1_doc();
    bad["generators"][1]["degree"] = 1;  // d(a) = b with equal degrees
    try {
        parse_tower_json(bad);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }

    json composite = t1_doc();
    composite["p"] = 6;
    CHECK_THROWS_AS(parse_tower_json(composite), std::invalid_argument);

    json unknown = t1_doc();
    unknown["differential"][0]["to"] = json::array({json::array({"zz", 1})});
    CHECK_THROWS_AS(parse_tower_json(unknown), std::invalid_argument);

    json dup = t1_doc();
    dup["generators"][1]["name"] = "a";
    CHECK_THROWS_AS(parse_tower_json(dup), std::invalid_argument);
}

TEST_CASE("round trip: parse(emit(parse(doc))) has identical pages")
{
    FilteredComplex f = parse_tower_json(t1_doc());
    FilteredComplex g = parse_tower_json(emit_tower(f));
    Tower tf = f.to_tower();
    Tower tg = g.to_tower();
    for (int r = 1; r <= tf.length() + 2; ++r)
        CHECK(page(tf, r).module.dims == page(tg, r).module.dims);
}

TEST_CASE("csv charts")
{
    Tower t = parse_tower_json(t1_doc()).to_tower();
    CHECK(emit_chart(page(t, 1), ChartFormat::Csv) == "s,t,dim\n0,1,1\n1,1,1\n");
    CHECK(emit_chart(page(t, 2), ChartFormat::Csv) == "s,t,dim\n");
    // determinism
    CHECK(emit_chart(page(t, 1), ChartFormat::Csv) == emit_chart(page(t, 1), ChartFormat::Csv));
}

TEST_CASE("text and svg charts render deterministically")
{
    Tower t = parse_tower_json(t1_doc()).to_tower();
    std::string text = emit_chart(page(t, 1), ChartFormat::Text);
    CHECK(text.find("page r=1") == 0);
    CHECK(text == emit_chart(page(t, 1), ChartFormat::Text));

    LineSpec line(Rational(1, 2), Rational(0), 1);
    std::string svg = emit_chart(page(t, 1), ChartFormat::Svg, line);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg == emit_chart(page(t, 1), ChartFormat::Svg, line));

    CHECK_THROWS_AS(chart_format_from("png"), std::invalid_argument);
}

TEST_CASE("map documents: parse, validate, reject")
{
    // Write a tower and two map documents into the working directory.
    {
        std::ofstream t("io_test_tower.json");
        t << t1_doc().dump();
        std::ofstream m("io_test_map.json");
        m << R"({"source": "io_test_tower.json", "target": "io_test_tower.json",
                 "entries": [{"from": "a", "to": [["a", 1]]},
                              {"from": "b", "to": [["b", 1]]}]})";
        std::ofstream bad("io_test_bad_map.json");
        bad << R"({"source": "io_test_tower.json", "target": "io_test_tower.json",
                   "entries": [{"from": "a", "to": [["b", 1]]}]})";
    }
    LoadedMap lm = parse_map_file("io_test_map.json");
    TowerMap f = lm.tower_map();
    CHECK(f.length() == 1);
    CHECK(is_retract(f, f));  // the identity map is its own retraction

    // degree-changing entry is rejected naming both generators
    try {
        parse_map_file("io_test_bad_map.json");
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        CHECK(what.find("'a'") != std::string::npos);
        CHECK(what.find("degree") != std::string::npos);
    }
    std::remove("io_test_tower.json");
    std::remove("io_test_map.json");
    std::remove("io_test_bad_map.json");
}

TEST_CASE("report serialization")
{
    VerificationReport rep;
    rep.condition = "2";
    rep.premises = {LineSpec(Rational(1, 2), Rational(-3), 2)};
    rep.conclusion = rep.premises[0];
    rep.holds = false;
    rep.witnesses = {{1, 1, 1, ""}};
    json j = report_to_json(rep);
    CHECK(j["condition"] == "2");
    CHECK(j["holds"] == false);
    CHECK(j["premises"][0]["m"] == "1/2");
    CHECK(j["premises"][0]["b"] == "-3");
    CHECK(j["witnesses"][0]["s"] == 1);
}
