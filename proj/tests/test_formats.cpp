#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcspan/constructions.hpp"
#include "lcspan/error.hpp"
#include "lcspan/formats.hpp"
#include "support.hpp"

using namespace lcspan;

namespace {

std::string error_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("graph text form")
{
    const Graph g(4, {{2, 3}, {0, 1}, {1, 2}});
    const std::string text = format_graph(g);
    CHECK(text == "GRAPH v1\nN 4 M 3\n0 1\n1 2\n2 3\n");
    CHECK(parse_graph(text).edges() == g.edges());
    CHECK(parse_graph("\n  GRAPH v1 \r\nN 2 M 1\n\n0\t1\n").edge_count() == 1);
    CHECK(header_token(text) == "GRAPH");

    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 2\n0 1\n0 1\n"); }) == "GRAPH v1 line 4: duplicate edge");
    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 2\n1 2\n0 1\n"); }) == "GRAPH v1 line 4: edges not sorted");
    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 1\n2 1\n"); }) == "GRAPH v1 line 3: edge must be written with u < v");
    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 1\n1 1\n"); }) == "GRAPH v1 line 3: self-loop");
    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 1\n1 3\n"); }) == "GRAPH v1 line 3: endpoint out of range");
    CHECK(error_of([] { parse_graph("GRAPH v1\nN 3 M 2\n0 1\n"); }).find("declared M 2") != std::string::npos);
    CHECK(error_of([] { parse_graph("GRAPH v2\nN 3 M 0\n"); }).find("missing header") != std::string::npos);
    CHECK(error_of([] { parse_graph("GRAPH v1\nN x M 0\n"); }).find("line 2") != std::string::npos);
}

TEST_CASE("graph round trip")
{
    SplitMix64 rng(71);
    for (int t = 0; t < 50; ++t) {
        const Graph g = testing::random_graph(rng, rng.below(15), 0.3);
        const Graph back = parse_graph(format_graph(g));
        CHECK(back.vertex_count() == g.vertex_count());
        CHECK(back.edges() == g.edges());
        CHECK(format_graph(back) == format_graph(g));
    }
}

TEST_CASE("label cover text form")
{
    const auto x = testing::xor_odd_4cycle();
    const std::string text = format_lc(x);
    CHECK(text.rfind("LC v1\nA 2 B 2 SA 2 SB 2 M 4\nE 0 0 2\n0 0\n1 1\n", 0) == 0);
    CHECK(parse_lc(text) == x);

    CHECK(error_of([] { parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 1\nE 0 0 2\n1 0\n0 0\n"); }) ==
          "LC v1 line 5: pairs not sorted");
    CHECK(error_of([] { parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 1\nE 0 0 0\n"); }) == "LC v1 line 3: empty relation");
    CHECK(error_of([] { parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 1\nE 0 0 3\n0 0\n"); }) ==
          "LC v1 line 3: relation truncated");
    CHECK(error_of([] { parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 2\nE 0 0 1\n0 0\n"); }).find("declared M 2") !=
          std::string::npos);
    CHECK_THROWS_AS(parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 1\nE 0 0 1\n0 5\n"), InputError);
    CHECK_THROWS_AS(parse_lc("LC v1\nA 1 B 1 SA 2 SB 2 M 1\nE 0 4 1\n0 0\n"), InputError);
}

TEST_CASE("label cover round trip")
{
    SplitMix64 rng(72);
    for (int t = 0; t < 60; ++t) {
        const auto lc = testing::random_tiny_lc(rng, 5, 4);
        const std::string text = format_lc(lc);
        const auto back = parse_lc(text);
        CHECK(back == lc);
        CHECK(format_lc(back) == text);
    }
    const auto big = regularize(lc_from_3sat5(gen_3sat5(6, 3)));
    CHECK(parse_lc(format_lc(big)) == big);
}

TEST_CASE("cover and labeling text forms")
{
    const RepCover cover({{Side::B, 1, 0}, {Side::A, 0, 2}, {Side::A, 0, 1}});
    const std::string text = format_cover(cover);
    CHECK(text == "COVER v1\nA 0 1\nA 0 2\nB 1 0\n");
    CHECK(parse_cover(text) == cover);
    CHECK(parse_cover("COVER v1\n") == RepCover());
    CHECK(error_of([] { parse_cover("COVER v1\nA 0 1\nA 0 1\n"); }) == "COVER v1 line 3: duplicate member");
    CHECK(error_of([] { parse_cover("COVER v1\nC 0 1\n"); }).find("side must be A or B") != std::string::npos);

    const Labeling lab{{2, 0}, {1}};
    const std::string ltext = format_labeling(lab);
    CHECK(ltext == "LABEL v1\nA 0 2\nA 1 0\nB 0 1\n");
    CHECK(parse_labeling(ltext) == lab);
    CHECK(parse_labeling("LABEL v1\nB 0 1\nA 1 0\nA 0 2\n") == lab);
    CHECK(error_of([] { parse_labeling("LABEL v1\nA 0 1\nA 0 2\n"); }).find("labeled twice") != std::string::npos);
    CHECK(error_of([] { parse_labeling("LABEL v1\nA 1 1\n"); }).find("missing") != std::string::npos);

    SplitMix64 rng(73);
    for (int t = 0; t < 30; ++t) {
        Labeling l;
        for (std::uint64_t i = rng.below(6); i > 0; --i) l.gamma_a.push_back(static_cast<Symbol>(rng.below(9)));
        for (std::uint64_t i = rng.below(6); i > 0; --i) l.gamma_b.push_back(static_cast<Symbol>(rng.below(9)));
        CHECK(parse_labeling(format_labeling(l)) == l);
        RepCover c;
        for (std::uint64_t i = rng.below(10); i > 0; --i)
            c.insert({rng.below(2) ? Side::A : Side::B, static_cast<std::uint32_t>(rng.below(4)),
                      static_cast<Symbol>(rng.below(4))});
        CHECK(parse_cover(format_cover(c)) == c);
    }
}

TEST_CASE("subset text form")
{
    const Graph c5 = testing::cycle(5);
    const auto h = EdgeSubset::of(c5, {4, 0, 2});
    const std::string text = format_subset(h);
    CHECK(text == "SUBSET v1\nHOST " + hex64(c5.fingerprint()) + "\n0\n2\n4\n");
    CHECK(parse_subset(text) == h);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
    CHECK(error_of([] { parse_subset("SUBSET v1\nHOST 12\n"); }).find("16 hex digits") != std::string::npos);
    CHECK(error_of([] { parse_subset("SUBSET v1\nHOST 0000000000000000\n3\n3\n"); }) ==
          "SUBSET v1 line 4: duplicate edge id");
}

TEST_CASE("cnf text form")
{
    Formula3Sat5 f = gen_3sat5(3, 42, std::vector<bool>{true, false, true});
    const std::string text = format_cnf(f);
    CHECK(text.rfind("c 3SAT(5) formula\nc seed 42\nc planted 101\np cnf 3 5\n", 0) == 0);
    CHECK(parse_cnf(text) == f);
    f.planted.reset();
    CHECK(format_cnf(f).find("c planted none") != std::string::npos);
    CHECK(parse_cnf(format_cnf(f)) == f);
    CHECK(header_token(text) == "c");

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = gen_3sat5(3 * static_cast<std::uint32_t>(1 + seed % 5), seed);
        CHECK(parse_cnf(format_cnf(g)) == g);
    }

    CHECK(error_of([] { parse_cnf("p cnf 3 1\n1 2 3\n"); }).find("fields") != std::string::npos);
    CHECK(error_of([] { parse_cnf("1 2 3 0\n"); }).find("before the 'p cnf' line") != std::string::npos);
    CHECK(error_of([] { parse_cnf("p cnf 3 1\n1 2 4 0\n"); }) == "cnf line 2: variable out of range");
    // Syntactically fine but not 3SAT(5).
    CHECK_THROWS_AS(parse_cnf("p cnf 3 1\n1 2 3 0\n"), InputError);
}

TEST_CASE("files")
{
    testing::TempDir dir("formats");
    write_file(dir / "g.graph", "GRAPH v1\nN 1 M 0\n");
    CHECK(read_file(dir / "g.graph") == "GRAPH v1\nN 1 M 0\n");
    CHECK_THROWS_AS(read_file(dir / "missing"), InputError);
    CHECK_THROWS_AS(write_file(dir / "no/such/dir/x", "x"), InputError);
}
