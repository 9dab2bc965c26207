#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lcspan/cli.hpp"
#include "lcspan/constructions.hpp"
#include "lcspan/error.hpp"
#include "lcspan/formats.hpp"
#include "lcspan/report.hpp"
#include "lcspan/subsample.hpp"
#include "support.hpp"

using namespace lcspan;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

void write_lc(const std::string& path, const LabelCoverInstance& lc) { write_file(path, format_lc(lc)); }

LabelCoverInstance path_instance()
{
    return testing::make_lc(2, 2, 3, 2, {{0, 0, {{0, 0}, {1, 1}}}, {1, 0, {{0, 1}}}, {1, 1, {{1, 0}, {2, 1}}}});
}

std::vector<std::string> artifact_names()
{
    return {"01_formula.cnf", "02_lc.lc",        "02_lc.label",    "03_regular.lc",      "03_regular.label",
            "04_parrep.lc",   "04_parrep.label", "05_sampled.lc",  "06_stripped.lc",     "07_minrep.graph",
            "08_gadget.graph", "08_gadget.meta.json", "09_cover.cover", "10_spanner.subset", "report.json"};
}

}  // namespace

TEST_CASE("generation and construction commands match the library")
{
    testing::TempDir dir("cli_chain");
    REQUIRE(run({"gen-3sat5", "--vars", "6", "--seed", "5", "--planted", "-o", dir / "f.cnf"}).code == cli::kExitOk);
    const Formula3Sat5 f = parse_cnf(read_file(dir / "f.cnf"));
    CHECK(f.var_count == 6);
    REQUIRE(f.planted);
    CHECK(f == gen_3sat5(6, 5, f.planted));
    CHECK(run({"gen-3sat5", "--vars", "6", "--seed", "5", "--planted"}).out == read_file(dir / "f.cnf"));

    REQUIRE(run({"lc-from-3sat", "-i", dir / "f.cnf", "-o", dir / "a.lc", "--labeling-out", dir / "a.label"}).code == 0);
    const auto lc = lc_from_3sat5(f);
    CHECK(parse_lc(read_file(dir / "a.lc")) == lc);
    CHECK(value(lc, parse_labeling(read_file(dir / "a.label"))) == Rational(1, 1));

    REQUIRE(run({"regularize", "-i", dir / "a.lc", "-o", dir / "r.lc", "--labeling-in", dir / "a.label",
                 "--labeling-out", dir / "r.label"})
                .code == 0);
    const auto reg = regularize(lc);
    CHECK(parse_lc(read_file(dir / "r.lc")) == reg);
    CHECK(value(reg, parse_labeling(read_file(dir / "r.label"))) == Rational(1, 1));

    REQUIRE(run({"parrep", "-i", dir / "a.lc", "--ell", "2", "-o", dir / "p.lc", "--labeling-in", dir / "a.label",
                 "--labeling-out", dir / "p.label"})
                .code == 0);
    const auto rep = parallel_repetition(lc, 2);
    CHECK(parse_lc(read_file(dir / "p.lc")) == rep);
    CHECK(value(rep, parse_labeling(read_file(dir / "p.label"))) == Rational(1, 1));
    CHECK(run({"parrep", "-i", dir / "r.lc", "--ell", "3"}).code == cli::kExitResource);

    const auto sub = run({"subsample", "-i", dir / "r.lc", "--alpha", "1.5", "--seed", "9", "-o", dir / "s.lc"});
    REQUIRE(sub.code == 0);
    SampleParams sp;
    sp.alpha = 1.5;
    sp.seed = 9;
    const auto sampled = subsample(reg, sp);
    CHECK(parse_lc(read_file(dir / "s.lc")) == sampled);
    CHECK(run({"subsample", "-i", dir / "r.lc", "--alpha", "9"}).err.find("clamped to 1") != std::string::npos);
    CHECK(run({"subsample", "-i", dir / "r.lc", "--alpha", "9", "--no-clamp"}).code == cli::kExitInput);

    REQUIRE(run({"strip-cycles", "-i", dir / "s.lc", "--k", "4", "-o", dir / "t.lc"}).code == 0);
    CHECK(parse_lc(read_file(dir / "t.lc")) == strip_bad_edges(sampled, 4));
    const auto g = run({"girth", "-i", dir / "t.lc"});
    CHECK(g.out == supergirth(strip_bad_edges(sampled, 4)).to_string() + "\n");
    CHECK(run({"girth", "-i", dir / "r.lc", "--independent"}).out == "4\n");

    REQUIRE(run({"minrep-expand", "-i", dir / "a.lc", "-o", dir / "m.graph"}).code == 0);
    CHECK(parse_graph(read_file(dir / "m.graph")).edges() == MinRepInstance(lc).graph().edges());
    CHECK(run({"girth", "-i", dir / "m.graph"}).code == 0);
}

TEST_CASE("spanner commands")
{
    testing::TempDir dir("cli_spanner");
    write_lc(dir / "p.lc", path_instance());
    const auto red = run({"spanner-reduce", "-i", dir / "p.lc", "--k", "3", "--x", "4", "-o", dir / "g.graph", "--meta",
                          dir / "g.meta.json"});
    REQUIRE(red.code == 0);
    CHECK(red.out.find("x = 4") != std::string::npos);
    CHECK(red.err.find("note: x = 4 overrides") != std::string::npos);
    const Graph g = parse_graph(read_file(dir / "g.graph"));

    write_file(dir / "c.cover", "COVER v1\nA 0 0\nA 1 0\nA 1 2\nB 0 0\nB 0 1\nB 1 0\nB 1 1\n");
    REQUIRE(run({"spanner-from-cover", "--meta", dir / "g.meta.json", "--cover", dir / "c.cover", "-o", dir / "h.subset"})
                .code == 0);
    const auto ok = run({"spanner-verify", "--graph", dir / "g.graph", "--subset", dir / "h.subset", "--k", "3"});
    CHECK(ok.code == cli::kExitOk);
    CHECK(ok.out.rfind("OK: ", 0) == 0);

    auto h = parse_subset(read_file(dir / "h.subset"));
    h.members.erase(h.members.begin());
    write_file(dir / "bad.subset", format_subset(h));
    const auto bad = run({"spanner-verify", "--graph", dir / "g.graph", "--subset", dir / "bad.subset", "--k", "3"});
    CHECK(bad.code == cli::kExitVerifyFailed);
    CHECK(bad.out.rfind("FAIL: ", 0) == 0);

    REQUIRE(run({"make-proper", "--meta", dir / "g.meta.json", "--subset", dir / "h.subset", "-o", dir / "pr.subset"})
                .code == 0);
    CHECK(run({"spanner-verify", "--graph", dir / "g.graph", "--subset", dir / "pr.subset", "--k", "3"}).code == 0);
    REQUIRE(run({"cover-from-spanner", "--meta", dir / "g.meta.json", "--subset", dir / "h.subset", "-o",
                 dir / "back.cover"})
                .code == 0);
    CHECK(repcover_valid(path_instance(), parse_cover(read_file(dir / "back.cover"))).valid);
    CHECK(run({"make-proper", "--meta", dir / "g.meta.json", "--subset", dir / "bad.subset"}).code == cli::kExitInput);

    REQUIRE(run({"spanner-greedy", "--graph", dir / "g.graph", "--k", "3", "-o", dir / "gr.subset"}).code == 0);
    CHECK(parse_subset(read_file(dir / "gr.subset")) == greedy_spanner(g, 3));
    CHECK(run({"spanner-verify", "--graph", dir / "g.graph", "--subset", dir / "gr.subset", "--k", "3"}).code == 0);

    // A subset of some other graph is rejected as an input error.
    write_file(dir / "c5.graph", format_graph(testing::cycle(5)));
    CHECK(run({"spanner-verify", "--graph", dir / "c5.graph", "--subset", dir / "h.subset", "--k", "3"}).code ==
          cli::kExitInput);

    write_lc(dir / "x.lc", testing::xor_odd_4cycle());
    const auto refused = run({"spanner-reduce", "-i", dir / "x.lc", "--k", "3", "-o", dir / "x.graph", "--meta",
                              dir / "x.json"});
    CHECK(refused.code == cli::kExitInput);
    CHECK(refused.err.find("supergirth 4") != std::string::npos);
    CHECK(run({"spanner-reduce", "-i", dir / "x.lc", "--k", "3", "--x", "1", "--unsafe-supergirth", "-o",
               dir / "x.graph", "--meta", dir / "x.json"})
              .code == 0);
    CHECK(run({"spanner-reduce", "-i", dir / "p.lc", "--k", "3", "--max-edges", "10", "-o", dir / "y.graph", "--meta",
               dir / "y.json"})
              .code == cli::kExitResource);
}

TEST_CASE("exact solver commands")
{
    testing::TempDir dir("cli_exact");
    write_lc(dir / "x.lc", testing::xor_odd_4cycle());
    const auto v = run({"solve-lc-exact", "-i", dir / "x.lc", "--labeling-out", dir / "x.label"});
    CHECK(v.code == 0);
    CHECK(v.out.rfind("value 3/4 ", 0) == 0);
    CHECK(value(testing::xor_odd_4cycle(), parse_labeling(read_file(dir / "x.label"))) == Rational(3, 4));

    const auto c = run({"solve-cover-exact", "-i", dir / "x.lc", "-o", dir / "x.cover"});
    CHECK(c.out.rfind("minimum REP-cover 5 ", 0) == 0);
    CHECK(parse_cover(read_file(dir / "x.cover")).size() == 5);

    write_file(dir / "c4.graph", format_graph(testing::cycle(4)));
    CHECK(run({"solve-spanner-exact", "--graph", dir / "c4.graph", "--k", "3"}).out.rfind("minimum 3-spanner 3 edges", 0) ==
          0);
    write_file(dir / "k4.graph", format_graph(testing::complete(4)));
    CHECK(run({"solve-spanner-exact", "--graph", dir / "k4.graph", "--k", "2"}).out.rfind("minimum 2-spanner 3 edges", 0) ==
          0);

    // Global options work before and after the subcommand.
    CHECK(run({"--budget", "4", "solve-cover-exact", "-i", dir / "x.lc"}).code == cli::kExitResource);
    CHECK(run({"solve-cover-exact", "-i", dir / "x.lc", "--budget", "4"}).code == cli::kExitResource);
    CHECK(run({"solve-lc-exact", "-i", dir / "x.lc", "--threads", "2"}).code == 0);
}

TEST_CASE("exit codes for bad input")
{
    testing::TempDir dir("cli_errors");
    CHECK(run({}).code == cli::kExitInput);
    CHECK(run({"no-such-command"}).code == cli::kExitInput);
    CHECK(run({"girth"}).code == cli::kExitInput);
    const auto missing = run({"girth", "-i", dir / "missing.graph"});
    CHECK(missing.code == cli::kExitInput);
    CHECK(missing.err.find("cannot open") != std::string::npos);
    write_file(dir / "junk", "hello\n");
    CHECK(run({"girth", "-i", dir / "junk"}).code == cli::kExitInput);
    write_file(dir / "bad.graph", "GRAPH v1\nN 2 M 1\n1 0\n");
    CHECK(run({"girth", "-i", dir / "bad.graph"}).err.find("line 3") != std::string::npos);
    CHECK(run({"gen-3sat5", "--vars", "4"}).code == cli::kExitInput);
    CHECK(run({"subsample", "-i", dir / "junk", "--alpha", "-1"}).code == cli::kExitInput);
    CHECK(run({"--version"}).code == cli::kExitOk);
    const auto help = run({"--help"});
    CHECK(help.code == cli::kExitOk);
    CHECK(help.out.find("pipeline") != std::string::npos);
}

TEST_CASE("stats command")
{
    testing::TempDir dir("cli_stats");
    const Formula3Sat5 f = gen_3sat5(3, 2, std::vector<bool>{true, true, false});
    const auto lc = regularize(lc_from_3sat5(f));
    write_lc(dir / "r.lc", lc);
    write_file(dir / "r.label", format_labeling(lift_labeling(lc_from_3sat5(f), labeling_from_assignment(f, *f.planted),
                                                              LiftStage::regularize())));
    const auto r = run({"stats", "-i", dir / "r.lc", "--labeling", dir / "r.label", "--alpha", "1", "--k", "4", "--trials",
                        "50", "--seed", "3"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["schema"] == "stats_v1");
    CHECK(j["command"] == "stats");
    CHECK(j["supergirth"] == 4);
    CHECK(j["labeling"]["value"] == "1/1");
    CHECK(j["labeling"]["satisfied"] == 225);
    CHECK(j["sample"]["edges_before"] == 225);
    CHECK(j["montecarlo"]["kept_edges"]["trials"] == 50);
    CHECK(j["montecarlo"]["satisfied"]["mean"] == j["montecarlo"]["kept_edges"]["mean"]);
    CHECK(run({"stats", "-i", dir / "r.lc", "--trials", "5"}).code == cli::kExitInput);
    CHECK(run({"stats", "-i", dir / "r.lc", "--alpha", "1", "--k", "4", "--trials", "50", "--seed", "3", "--threads", "1"})
              .out == run({"stats", "-i", dir / "r.lc", "--alpha", "1", "--k", "4", "--trials", "50", "--seed", "3",
                           "--threads", "4"})
                          .out);
}

TEST_CASE("spanner sidecar round trip")
{
    const auto lc = path_instance();
    SpannerBuildOptions opt;
    opt.x_override = 3;
    const auto si = build_spanner_instance(MinRepInstance(lc), 5, opt);
    const SpannerMeta meta = spanner_meta(si, false);
    CHECK(meta.k == 5);
    CHECK(meta.x == 3);
    CHECK_FALSE(meta.default_x);
    CHECK(meta.families.size() == si.graph().edge_count());
    for (EdgeId e = 0; e < si.graph().edge_count(); ++e) CHECK(meta.families[e] == family_letter(si.family(e)));
    const Json j = to_json(meta);
    CHECK(j["schema"] == kSpannerMetaSchema);
    const SpannerMeta back = spanner_meta_from_json(Json::parse(j.dump()));
    CHECK(back == meta);
    const SpannerInstance rebuilt = rebuild_spanner_instance(back);
    CHECK(rebuilt.graph().edges() == si.graph().edges());
    CHECK(rebuilt.hat_e() == si.hat_e());

    SpannerMeta tampered = meta;
    tampered.graph_fingerprint ^= 1;
    CHECK_THROWS_AS(rebuild_spanner_instance(tampered), InputError);
    Json broken = j;
    broken["schema"] = "other";
    CHECK_THROWS_AS(spanner_meta_from_json(broken), InputError);
}

TEST_CASE("pipeline succeeds and writes every artifact")
{
    testing::TempDir dir("cli_pipeline");
    const auto r = run({"pipeline", "--vars", "3", "--ell", "1", "--alpha", "0.3", "--k", "3", "--seed", "7",
                        "--planted", "--trials", "20", "--oracles", "--out-dir", dir / "a"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("PASS") != std::string::npos);
    for (const auto& name : artifact_names()) CHECK(std::filesystem::exists(dir / ("a/" + name)));

    const Json rep = Json::parse(read_file(dir / "a/report.json"));
    CHECK(rep["schema"] == "stats_v1");
    CHECK(rep["command"] == "pipeline");
    CHECK_FALSE(rep.contains("timing"));

    const auto lc = parse_lc(read_file(dir / "a/06_stripped.lc"));
    CHECK(supergirth(lc) > Distance(4));
    const auto meta = spanner_meta_from_json(Json::parse(read_file(dir / "a/08_gadget.meta.json")));
    const auto si = rebuild_spanner_instance(meta);
    const auto h = parse_subset(read_file(dir / "a/10_spanner.subset"));
    CHECK(verify_spanner(si.graph(), h, 3).ok);
    CHECK(h.size() <= 4 * si.x() * si.n_tilde());
    CHECK(repcover_valid(si.source(), parse_cover(read_file(dir / "a/09_cover.cover"))).valid);
}

TEST_CASE("pipeline artifacts are byte-identical across runs and thread counts")
{
    testing::TempDir dir("cli_determinism");
    const std::vector<std::string> base{"pipeline", "--vars", "3", "--ell", "1", "--alpha", "0.5", "--k", "4",
                                        "--seed", "11", "--planted", "--trials", "200"};
    auto with = [&](const std::string& out, const std::string& threads) {
        auto args = base;
        args.insert(args.end(), {"--out-dir", dir / out, "--threads", threads});
        return run(args);
    };
    REQUIRE(with("a", "1").code == 0);
    REQUIRE(with("b", "1").code == 0);
    REQUIRE(with("c", "4").code == 0);
    for (const auto& name : artifact_names()) {
        CAPTURE(name);
        const std::string a = read_file(dir / ("a/" + name));
        CHECK(a == read_file(dir / ("b/" + name)));
        CHECK(a == read_file(dir / ("c/" + name)));
    }
}

TEST_CASE("pipeline without a planted assignment")
{
    testing::TempDir dir("cli_unplanted");
    const auto r = run({"pipeline", "--vars", "3", "--alpha", "0.3", "--k", "3", "--seed", "2", "--out-dir", dir / "a"});
    CHECK(r.code == cli::kExitOk);
    CHECK_FALSE(std::filesystem::exists(dir / "a/02_lc.label"));
    CHECK(run({"pipeline", "--vars", "3", "--alpha", "0.3", "--k", "2", "--out-dir", dir / "b"}).code == cli::kExitInput);
}
