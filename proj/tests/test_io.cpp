#include "doctest.h"

#include "frobmor/json_io.hpp"
#include "frobmor/functors.hpp"
#include "test_util.hpp"

using namespace frobmor;

namespace {
constexpr u32 P = 5;
}

TEST_CASE("serialize . parse is the identity on a fixture") {
    // fixture written the way a user would: exact integers, no whitespace games
    std::string fixture = R"({
      "l": 1,
      "terms": [
        {"n": 2, "dim": 1, "action": [[0]]},
        {"n": 2, "dim": 2, "action": [[0, 0], [1, 0]]}
      ],
      "maps": [[[0], [1]]]
    })";
    json j = json::parse(fixture);
    ChainObject x = chain_from_json(j, P);
    CHECK(x.length() == 1);
    CHECK(x.terms[1].dim == 2);
    // parse . serialize . parse is stable and serialize matches the input
    // up to formatting
    json round = to_json(x);
    CHECK(round == j);
    CHECK(to_json(chain_from_json(round, P)) == round);
}

TEST_CASE("chain map roundtrip") {
    testutil::Rng rng{5};
    auto a = testutil::random_chain(rng, 2, 2, 4, P);
    auto b = testutil::random_chain(rng, 2, 2, 4, P);
    auto f = testutil::random_chain_map(rng, a, b);
    json j = to_json(f);
    ChainMap back = chain_map_from_json(j, P);
    CHECK(back == f);
    CHECK(to_json(back) == j);
}

TEST_CASE("invariant gates reject bad fixtures") {
    // action with action^n != 0
    json bad_module = json::parse(R"({"n": 2, "dim": 1, "action": [[1]]})");
    CHECK_THROWS_AS(module_from_json(bad_module, P), error);

    // non-monic structure map in a chain (multiplication by x on Lambda)
    json bad_chain = json::parse(R"({
      "l": 1,
      "terms": [
        {"n": 2, "dim": 2, "action": [[0,0],[1,0]]},
        {"n": 2, "dim": 2, "action": [[0,0],[1,0]]}
      ],
      "maps": [[[0,0],[1,0]]]
    })");
    CHECK_THROWS_AS(chain_from_json(bad_chain, P), error);

    // non-commuting chain map fixture
    json bad_map = json::parse(R"({
      "src": {"l": 0, "terms": [{"n": 2, "dim": 1, "action": [[0]]}], "maps": []},
      "tgt": {"l": 0, "terms": [{"n": 2, "dim": 2, "action": [[0,0],[1,0]]}], "maps": []},
      "comps": [[[1],[0]]]
    })");
    CHECK_THROWS_AS(chain_map_from_json(bad_map, P), error);

    // schema violations carry positional diagnostics
    json ragged = json::parse(R"({"n": 2, "dim": 2, "action": [[0,0],[1]]})");
    try {
        module_from_json(ragged, P);
        CHECK(false);
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

TEST_CASE("triangle certificates serialize") {
    testutil::Rng rng{7};
    auto x = testutil::random_chain(rng, 1, 2, 4, P);
    auto t = sod_triangle(x, {SodCase::GammaGamma, 0, 0});
    json j = to_json(t);
    CHECK(j.contains("left"));
    CHECK(j["witness"] == "cone");
    CHECK(j["left_tag"]["kind"] == "Gamma");
}
