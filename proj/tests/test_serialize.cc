#include <doctest.h>

#include "oracles.h"
#include "witness_forge/catalog.h"
#include "witness_forge/serialize.h"

using namespace witness_forge;

TEST_CASE("dump17 formatting") {
    const json j{{"x", 0.1}, {"n", 3}, {"whole", 2.0}, {"row", {1.0, 2.5}}, {"flag", true}};
    const std::string s = dump17(j);
    CHECK(s ==
          "{\n"
          "  \"x\": 0.10000000000000001,\n"
          "  \"n\": 3,\n"
          "  \"whole\": 2.0,\n"
          "  \"row\": [1.0, 2.5],\n"
          "  \"flag\": true\n"
          "}\n");
    CHECK(dump17(json::array()) == "[]\n");
    CHECK(dump17(json::object()) == "{}\n");
    CHECK(dump17(json(std::nan(""))) == "null\n");
    CHECK(dump17(json(1e-300)) == "1e-300\n");
    CHECK(dump17(json(1.0 / 3.0)) == "0.33333333333333331\n");
    // Nested arrays break per row.
    CHECK(dump17(json{{1.0, 2.0}, {3.0, 4.0}}, 1) == "[\n [1.0, 2.0],\n [3.0, 4.0]\n]\n");
}

TEST_CASE("17 significant digits round-trip doubles") {
    Rng rng(80);
    for (int t = 0; t < 200; ++t) {
        const double x = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
        const json back = json::parse(dump17(json(x)));
        CHECK(back.get<double>() == x);
    }
}

TEST_CASE("matrix round trip") {
    Rng rng(81);
    const CMatrix m = oracle::random_matrix(rng, 3);
    const json j = to_json(m);
    CHECK(j["dim"] == 3);
    CHECK(j["re"].size() == 3);
    CHECK(j["re"][1][2].get<double>() == m(1, 2).real());
    CHECK(j["im"][2][0].get<double>() == m(2, 0).imag());
    CHECK(cmatrix_from_json(json::parse(dump17(j))) == m);
    // Flat row-major form and missing imaginary part.
    const json flat{{"dim", 2}, {"re", {1.0, 2.0, 3.0, 4.0}}};
    const CMatrix f = cmatrix_from_json(flat);
    CHECK(f(1, 0) == cplx(3.0, 0.0));
    CHECK_THROWS_AS(cmatrix_from_json(json{{"dim", 2}, {"re", {1.0, 2.0, 3.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(cmatrix_from_json(json{{"re", {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(cmatrix_from_json(json{{"dim", -1}, {"re", {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(cmatrix_from_json(json{{"dim", 1}, {"re", {"x"}}}), std::invalid_argument);
}

TEST_CASE("real matrices") {
    const RealMatrix r{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(realmatrix_from_json(to_json(r)) == r);
    CHECK_THROWS_AS(realmatrix_from_json(json{{1.0, 2.0}, {3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(realmatrix_from_json(json::array()), std::invalid_argument);
}

TEST_CASE("map round trips") {
    const NamedMap choi = build_catalog("choi-abc", {1, 1, 0});
    const json j = to_json(choi);
    CHECK(j["kind"] == "gen");
    CHECK(j["name"] == "choi-abc");
    CHECK(j["bistochastic"] == true);
    const NamedMap back = map_from_json(json::parse(dump17(j)));
    REQUIRE(back.gen.has_value());
    CHECK(*back.gen == *choi.gen);

    const NamedMap rob = build_catalog("robertson4", {});
    const json t = to_json(rob);
    CHECK(t["kind"] == "table");
    CHECK(t["action"].size() == 16);
    const NamedMap rb = map_from_json(t);
    CHECK_FALSE(rb.gen.has_value());
    CHECK(max_action_diff(rb.rep, rob.rep) == 0.0);

    const NamedMap cat = map_from_json(json{{"kind", "catalog"}, {"name", "tau-dk"}, {"params", {4, 1}}});
    CHECK(*cat.gen == tau_dk(4, 1));

    CHECK_THROWS_AS(map_from_json(json{{"kind", "other"}}), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json(json{{"name", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json(json{{"kind", "catalog"}, {"name", "nope"}}), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json(json{{"kind", "gen"}, {"d", 2}, {"a", {{1.0, -1.0}, {0.0, 1.0}}}, {"c", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("certificates serialize their evidence") {
    Certificate c;
    c.property = "cp";
    c.verdict = "not_cp";
    c.lambda_min = -1.0;
    c.tolerance = 1e-10;
    c.witness_vector = {cplx(1.0, 0.0), cplx(0.0, 1.0)};
    c.evidence = {{"b_matrix_lambda_min", -1.0}};
    c.budget = {{"restarts", 4.0}};
    const json j = to_json(c);
    CHECK(j["holds"] == false);
    CHECK(j["evidence"]["witness_vector"]["im"][1] == 1.0);
    CHECK(j["evidence"]["b_matrix_lambda_min"] == -1.0);
    CHECK(j["evidence"]["budget"]["restarts"] == 4.0);

    PositivityVerdict v;
    v.verdict = Positivity::positive;
    v.method = "simplex";
    const json pv = to_json(v);
    CHECK(pv["verdict"] == "positive");
    CHECK(pv["holds"] == true);
    CHECK_FALSE(pv["evidence"].contains("witness_vector"));
}

TEST_CASE("catalog entries build") {
    for (const auto &e : catalog_entries()) {
        std::vector<double> p;
        if (e.name == "choi-abc") p = {1, 1, 0};
        else if (e.name == "tau-dk" || e.name == "phi-dk") p = {3, 1};
        else if (e.name == "phi-p") p = {1, 1, 1, 1};
        else if (e.name == "cyclic") p = {0.5, 0.5, 0};
        else if (e.name == "lambda-id") p = {3, 2};
        else if (e.name == "rotation-family") p = {3, 1, 1.0471975511965976};
        else if (e.name == "appendix") p = {1, 1, 0, -1.0471975511965976};
        else if (e.name == "robertson4") p = {};
        else p = {3};
        CAPTURE(e.name);
        CHECK_NOTHROW(build_catalog(e.name, p));
    }
    CHECK_THROWS_AS(build_catalog("tau-dk", {3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(build_catalog("tau-dk", {3, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(build_catalog("choi-abc", {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_catalog("identity", {std::nan("")}), std::invalid_argument);
}
