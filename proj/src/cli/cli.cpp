#include "lcspan/cli.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <new>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lcspan/constructions.hpp"
#include "lcspan/error.hpp"
#include "lcspan/formats.hpp"
#include "lcspan/oracles.hpp"
#include "lcspan/parallel.hpp"
#include "lcspan/report.hpp"
#include "lcspan/rng.hpp"
#include "lcspan/spanner.hpp"
#include "lcspan/subsample.hpp"

namespace lcspan::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
    int threads = 0;
    std::uint64_t budget = 0;
    std::uint64_t time_cap_ms = 0;
};

OracleBudget budget_of(const Globals& g)
{
    OracleBudget b = budget_from_env();
    if (g.budget > 0) b.max_search_space = g.budget;
    b.time_cap = std::chrono::milliseconds(g.time_cap_ms);
    return b;
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const fs::path& path)
{
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

LabelCoverInstance load_lc(const std::string& path) { return parse_lc(read_file(path)); }
Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }
EdgeSubset load_subset(const std::string& path) { return parse_subset(read_file(path)); }
Labeling load_labeling(const std::string& path) { return parse_labeling(read_file(path)); }
SpannerInstance load_spanner_instance(const std::string& meta_path)
{
    return rebuild_spanner_instance(spanner_meta_from_json(load_json(meta_path)));
}

std::vector<bool> planted_assignment(std::uint32_t vars, std::uint64_t seed)
{
    SplitMix64 rng(stage_seed(seed, "planted"));
    std::vector<bool> bits(vars);
    for (std::uint32_t i = 0; i < vars; ++i) bits[i] = (rng() >> 63) != 0;
    return bits;
}

std::string describe_edge(const Graph& g, EdgeId e)
{
    return "edge " + std::to_string(e) + " (" + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) + ")";
}

// Every Min-Rep vertex: always a valid cover.
RepCover full_cover(const MinRepInstance& mr)
{
    std::vector<RepMember> members;
    for (Vertex v = 0; v < mr.graph().vertex_count(); ++v) members.push_back(mr.member_of(v));
    return RepCover(std::move(members));
}

Json lc_summary(const LabelCoverInstance& lc)
{
    return {{"a_count", lc.a_count()},
            {"b_count", lc.b_count()},
            {"sigma_a", lc.sigma_a()},
            {"sigma_b", lc.sigma_b()},
            {"superedges", lc.edge_count()}};
}

class Audit {
public:
    void check(const std::string& name, const Json& reported, const Json& recomputed)
    {
        const bool same = reported == recomputed;
        ok_ = ok_ && same;
        checks_.push_back({{"check", name}, {"reported", reported}, {"recomputed", recomputed}, {"ok", same}});
    }
    bool ok() const { return ok_; }
    Json to_json() const { return {{"ok", ok_}, {"checks", checks_}}; }

private:
    bool ok_ = true;
    Json checks_ = Json::array();
};

class StageClock {
public:
    void lap(const std::string& name)
    {
        const auto now = std::chrono::steady_clock::now();
        ms_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
    Json to_json() const
    {
        Json j = Json::object();
        for (const auto& [k, v] : ms_) j[k] = v;
        return j;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    std::map<std::string, double> ms_;
};

struct PipelineConfig {
    std::uint32_t vars = 3;
    std::uint32_t ell = 1;
    double alpha = 4.0;
    std::uint32_t k = 3;
    std::uint64_t seed = 0;
    bool planted = false;
    std::uint64_t x = 0;
    bool unsafe_supergirth = false;
    bool no_clamp = false;
    std::uint32_t degree = 0;
    std::uint64_t trials = 0;
    bool oracles = false;
    bool timing = false;
    std::string out_dir = ".";
    std::uint64_t max_superedges = kDefaultRepetitionBudget;
    std::uint64_t max_edges = 20'000'000;
};

int run_pipeline(const PipelineConfig& cfg, const Globals& globals, std::ostream& out, std::ostream& err)
{
    if (cfg.k < 3) throw InputError("--k must be at least 3");
    if (cfg.ell < 1) throw InputError("--ell must be at least 1");
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());

    StageClock clock;
    PipelineTrace trace;
    Json report;
    report["schema"] = kStatsSchema;
    report["command"] = "pipeline";
    report["config"] = {{"vars", cfg.vars},
                        {"ell", cfg.ell},
                        {"alpha", cfg.alpha},
                        {"k", cfg.k},
                        {"strip_threshold", cfg.k + 1},
                        {"seed", cfg.seed},
                        {"planted", cfg.planted},
                        {"x", cfg.x == 0 ? Json("default") : Json(cfg.x)},
                        {"clamp_p", !cfg.no_clamp},
                        {"degree", cfg.degree == 0 ? Json("max") : Json(cfg.degree)},
                        {"trials", cfg.trials},
                        {"unsafe_supergirth", cfg.unsafe_supergirth}};
    Json artifacts = Json::array();
    std::map<std::string, std::string> written;
    auto put = [&](const std::string& name, const std::string& kind, const std::string& text) {
        write_file(dir / name, text);
        written[name] = text;
        artifacts.push_back({{"file", name}, {"format", kind}, {"bytes", text.size()}});
    };
    bool verified = true;
    Json verification;

    // Generate and lift.
    std::optional<std::vector<bool>> planted;
    if (cfg.planted) planted = planted_assignment(cfg.vars, cfg.seed);
    const Formula3Sat5 formula = gen_3sat5(cfg.vars, cfg.seed, planted);
    put("01_formula.cnf", "DIMACS cnf", format_cnf(formula));
    report["formula"] = {{"vars", formula.var_count}, {"clauses", formula.clauses.size()}};
    clock.lap("gen-3sat5");

    const LabelCoverInstance lc0 = lc_from_3sat5(formula);
    trace.record("lc-from-3sat", lc0, cfg.seed);
    put("02_lc.lc", "LC v1", format_lc(lc0));
    std::optional<Labeling> lab0, lab1, lab2;
    if (planted) {
        lab0 = labeling_from_assignment(formula, *planted);
        put("02_lc.label", "LABEL v1", format_labeling(*lab0));
    }
    clock.lap("lc-from-3sat");

    const LabelCoverInstance lc1 = regularize(lc0);
    trace.record("regularize", lc1).params["copies_a"] = 3;
    trace.stages.back().params["copies_b"] = 5;
    put("03_regular.lc", "LC v1", format_lc(lc1));
    if (lab0) {
        lab1 = lift_labeling(lc0, *lab0, LiftStage::regularize());
        put("03_regular.label", "LABEL v1", format_labeling(*lab1));
    }
    clock.lap("regularize");

    const LabelCoverInstance lc2 = parallel_repetition(lc1, cfg.ell, cfg.max_superedges);
    trace.record("parrep", lc2).params["ell"] = cfg.ell;
    put("04_parrep.lc", "LC v1", format_lc(lc2));
    if (lab1) {
        lab2 = lift_labeling(lc1, *lab1, LiftStage::repetition(cfg.ell));
        put("04_parrep.label", "LABEL v1", format_labeling(*lab2));
    }
    clock.lap("parrep");

    // Sample, then strip at k + 1 so the reduction sees supergirth >= k + 2.
    SampleParams sp;
    sp.alpha = cfg.alpha;
    sp.k = cfg.k + 1;
    sp.seed = stage_seed(cfg.seed, "subsample");
    sp.clamp_p = !cfg.no_clamp;
    if (cfg.degree > 0) sp.degree = cfg.degree;
    LabelCoverInstance lc3, lc4;
    const SampleStats stats = sample_and_strip(lc2, sp, &lc3, &lc4);
    auto& st_sample = trace.record("subsample", lc3, sp.seed);
    st_sample.params["alpha"] = cfg.alpha;
    st_sample.params["p"] = stats.probability.p;
    st_sample.params["degree"] = stats.degree_used;
    if (stats.probability.clamped) {
        const std::string note = "p = " + std::to_string(stats.probability.unclamped) + " clamped to 1";
        st_sample.notes.push_back(note);
        err << "warning: " << note << '\n';
    }
    trace.record("strip-cycles", lc4).params["threshold"] = sp.k;
    put("05_sampled.lc", "LC v1", format_lc(lc3));
    put("06_stripped.lc", "LC v1", format_lc(lc4));
    report["sample"] = to_json(stats);
    const bool girth_ok = stats.girth_after > Distance(sp.k);
    verification["supergirth_after_strip"] = distance_json(stats.girth_after);
    verification["supergirth_exceeds_threshold"] = girth_ok;
    verified = verified && girth_ok;
    clock.lap("subsample+strip");

    if (lab2) {
        const Rational v = value(lc4, *lab2);
        verification["planted_value_after_strip"] = v.to_string();
        verified = verified && v == Rational(1, 1);
    }

    // Reduce.
    const MinRepInstance mr = minrep_expand(lc4);
    put("07_minrep.graph", "GRAPH v1", format_graph(mr.graph()));
    SpannerBuildOptions opts;
    if (cfg.x > 0) opts.x_override = cfg.x;
    opts.unsafe_supergirth = cfg.unsafe_supergirth;
    opts.max_edges = cfg.max_edges;
    const SpannerInstance si = build_spanner_instance(mr, cfg.k, opts);
    const SpannerMeta meta = spanner_meta(si, cfg.unsafe_supergirth);
    put("08_gadget.graph", "GRAPH v1", format_graph(si.graph()));
    put("08_gadget.meta.json", kSpannerMetaSchema, dump(to_json(meta)));
    Json family_counts = Json::object();
    for (EdgeFamily f : {EdgeFamily::E, EdgeFamily::EM, EdgeFamily::EsA, EdgeFamily::EtB, EdgeFamily::EG})
        family_counts[family_name(f)] = si.family_members(f).size();
    report["spanner_instance"] = {{"k", si.k()},
                                  {"k_a", si.k_a()},
                                  {"k_b", si.k_b()},
                                  {"x", si.x()},
                                  {"default_x", si.uses_default_x()},
                                  {"n", si.n()},
                                  {"n_tilde", si.n_tilde()},
                                  {"vertices", si.graph().vertex_count()},
                                  {"edges", si.graph().edge_count()},
                                  {"families", family_counts},
                                  {"hat_e", si.hat_e().size()},
                                  {"notes", si.notes()}};
    clock.lap("spanner-reduce");

    const RepCover cover = lab2 ? labeling_to_repcover(lc4, *lab2) : full_cover(mr);
    const CoverCheck cc = repcover_valid(mr, cover);
    put("09_cover.cover", "COVER v1", format_cover(cover));
    verification["cover_source"] = lab2 ? "planted labeling" : "all Min-Rep vertices";
    verification["cover_size"] = cover.size();
    verification["cover_valid"] = cc.valid;
    verified = verified && cc.valid;

    if (cc.valid) {
        const EdgeSubset h = spanner_from_repcover(si, cover);
        put("10_spanner.subset", "SUBSET v1", format_subset(h));
        const SpannerCheck check = verify_spanner(si.graph(), h, cfg.k);
        const std::uint64_t bound = static_cast<std::uint64_t>(cfg.k + 1) * si.x() * si.n_tilde();
        verification["spanner_edges"] = h.size();
        verification["spanner_verified"] = check.ok;
        if (check.witness) verification["spanner_witness"] = describe_edge(si.graph(), *check.witness);
        verification["size_bound"] = bound;
        verification["within_size_bound"] = h.size() <= bound;
        verified = verified && check.ok && (!lab2 || h.size() <= bound);
    }
    clock.lap("verify");

    if (cfg.trials > 0) {
        SampleParams mp = sp;
        Json mc;
        const MonteCarloEstimate kept = montecarlo_kept_edges(lc2, mp, cfg.trials);
        const double p = sample_probability(lc2, mp).p;
        mc["kept_edges"] = to_json(kept);
        mc["kept_edges"]["expected"] = p * static_cast<double>(lc2.edge_count());
        if (lab2) {
            const MonteCarloEstimate sat = montecarlo_satisfied(lc2, *lab2, mp, cfg.trials);
            mc["satisfied"] = to_json(sat);
            mc["satisfied"]["expected"] = p * static_cast<double>(satisfied_count(lc2, *lab2));
        }
        report["montecarlo"] = mc;
        clock.lap("montecarlo");
    }

    if (cfg.oracles) {
        Json oj;
        try {
            const ExactValue ev = lc_value_exact(lc4, budget_of(globals));
            oj["stripped_value"] = ev.value.to_string();
            oj["search_space"] = ev.search_space;
        } catch (const ResourceError& e) {
            oj["stripped_value"] = nullptr;
            oj["skipped"] = e.what();
        }
        report["oracles"] = oj;
        clock.lap("oracles");
    }

    // Self-audit: every reported size is recomputed from the files on disk.
    Audit audit;
    const char* lc_files[] = {"02_lc.lc", "03_regular.lc", "04_parrep.lc", "05_sampled.lc", "06_stripped.lc"};
    std::vector<LabelCoverInstance> parsed;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& st = trace.stages[i];
        const std::string text = read_file(dir / lc_files[i]);
        LabelCoverInstance lc = parse_lc(text);
        audit.check(std::string(lc_files[i]) + " dimensions",
                    Json::array({st.a_count, st.b_count, st.sigma_a, st.sigma_b, st.superedges}),
                    Json::array({lc.a_count(), lc.b_count(), lc.sigma_a(), lc.sigma_b(), lc.edge_count()}));
        audit.check(std::string(lc_files[i]) + " round trip", true, format_lc(lc) == text);
        parsed.push_back(std::move(lc));
    }
    audit.check("sample edges_sampled", stats.edges_sampled, parsed[3].edge_count());
    audit.check("sample edges_after", stats.edges_after, parsed[4].edge_count());
    audit.check("supergirth after strip", distance_json(stats.girth_after), distance_json(supergirth(parsed[4])));
    {
        const std::string text = read_file(dir / "01_formula.cnf");
        const Formula3Sat5 f = parse_cnf(text);
        audit.check("01_formula.cnf clauses", formula.clauses.size(), f.clauses.size());
        audit.check("01_formula.cnf round trip", true, f == formula && format_cnf(f) == text);
    }
    if (lab2) {
        const char* label_files[] = {"02_lc.label", "03_regular.label", "04_parrep.label"};
        for (std::size_t i = 0; i < 3; ++i) {
            const std::string text = read_file(dir / label_files[i]);
            const Labeling lab = parse_labeling(text);
            audit.check(std::string(label_files[i]) + " value", "1/1", value(parsed[i], lab).to_string());
            audit.check(std::string(label_files[i]) + " round trip", true, format_labeling(lab) == text);
        }
    }
    {
        const std::string text = read_file(dir / "07_minrep.graph");
        const Graph g = parse_graph(text);
        const MinRepInstance again = minrep_expand(parsed[4]);
        audit.check("07_minrep.graph size", Json::array({mr.graph().vertex_count(), mr.graph().edge_count()}),
                    Json::array({g.vertex_count(), g.edge_count()}));
        audit.check("07_minrep.graph matches stripped instance", true, g == again.graph() && format_graph(g) == text);
    }
    const std::string gadget_text = read_file(dir / "08_gadget.graph");
    const Graph gadget = parse_graph(gadget_text);
    {
        audit.check("08_gadget.graph size",
                    Json::array({report["spanner_instance"]["vertices"], report["spanner_instance"]["edges"]}),
                    Json::array({gadget.vertex_count(), gadget.edge_count()}));
        const SpannerMeta m = spanner_meta_from_json(load_json(dir / "08_gadget.meta.json"));
        audit.check("08_gadget.meta.json round trip", true, m == meta);
        audit.check("08_gadget.meta.json fingerprint", hex64(m.graph_fingerprint), hex64(gadget.fingerprint()));
        const SpannerInstance rebuilt = rebuild_spanner_instance(m);
        audit.check("08_gadget.graph rebuilt from metadata", true, rebuilt.graph() == gadget);
        audit.check("08_gadget.graph round trip", true, format_graph(gadget) == gadget_text);
    }
    {
        const std::string text = read_file(dir / "09_cover.cover");
        const RepCover c = parse_cover(text);
        audit.check("09_cover.cover size", cover.size(), c.size());
        audit.check("09_cover.cover valid", cc.valid, repcover_valid(parsed[4], c).valid);
        audit.check("09_cover.cover round trip", true, format_cover(c) == text);
    }
    if (cc.valid) {
        const std::string text = read_file(dir / "10_spanner.subset");
        const EdgeSubset h = parse_subset(text);
        audit.check("10_spanner.subset size", verification["spanner_edges"], h.size());
        audit.check("10_spanner.subset host", hex64(gadget.fingerprint()), hex64(h.host));
        audit.check("10_spanner.subset verifies", verification["spanner_verified"],
                    serial::verify_spanner(gadget, h, cfg.k).ok);
        audit.check("10_spanner.subset round trip", true, format_subset(h) == text);
    }
    verified = verified && audit.ok();

    report["stages"] = to_json(trace);
    report["verification"] = verification;
    report["verified"] = verified;
    report["artifacts"] = artifacts;
    report["audit"] = audit.to_json();
    if (cfg.timing) {
        clock.lap("audit");
        report["timing_ms"] = clock.to_json();
    }
    write_file(dir / "report.json", dump(report));

    out << std::left << std::setw(14) << "stage" << std::right << std::setw(10) << "|A|" << std::setw(10) << "|B|"
        << std::setw(8) << "SA" << std::setw(8) << "SB" << std::setw(12) << "superedges" << '\n';
    for (const auto& s : trace.stages)
        out << std::left << std::setw(14) << s.name << std::right << std::setw(10) << s.a_count << std::setw(10)
            << s.b_count << std::setw(8) << s.sigma_a << std::setw(8) << s.sigma_b << std::setw(12) << s.superedges
            << '\n';
    out << "p = " << stats.probability.p << ", bad edges " << stats.bad_edge_count << ", supergirth after strip "
        << stats.girth_after.to_string() << '\n';
    out << "gadget: " << si.graph().vertex_count() << " vertices, " << si.graph().edge_count() << " edges, x = "
        << si.x() << '\n';
    out << "cover " << cover.size() << (cc.valid ? " valid" : " INVALID");
    if (verification.contains("spanner_edges"))
        out << ", spanner " << verification["spanner_edges"].get<std::uint64_t>() << " edges "
            << (verification["spanner_verified"].get<bool>() ? "verified" : "FAILED");
    out << '\n' << "audit " << (audit.ok() ? "ok" : "FAILED") << ", report " << (dir / "report.json").string() << '\n';
    out << (verified ? "PASS" : "FAIL") << '\n';
    return verified ? kExitOk : kExitVerifyFailed;
}

Json stats_report(const LabelCoverInstance& lc, const std::optional<Labeling>& lab, double alpha,
                  std::uint32_t k, std::uint64_t seed, bool clamp, std::uint32_t degree, std::uint64_t trials)
{
    Json j;
    j["schema"] = kStatsSchema;
    j["command"] = "stats";
    j["instance"] = lc_summary(lc);
    j["degrees"] = to_json(degree_stats(lc));
    j["supergirth"] = distance_json(supergirth(lc));
    j["non_isolated_supervertices"] = non_isolated_supervertices(lc);
    if (lab) {
        check_labeling(lc, *lab);
        j["labeling"] = {{"satisfied", satisfied_count(lc, *lab)}, {"value", value(lc, *lab).to_string()}};
    }
    if (alpha > 0) {
        SampleParams sp;
        sp.alpha = alpha;
        sp.k = k;
        sp.seed = seed;
        sp.clamp_p = clamp;
        if (degree > 0) sp.degree = degree;
        const SampleStats s = sample_and_strip(lc, sp);
        j["sample"] = to_json(s);
        if (trials > 0) {
            Json mc;
            mc["kept_edges"] = to_json(montecarlo_kept_edges(lc, sp, trials));
            mc["kept_edges"]["expected"] = s.probability.p * static_cast<double>(lc.edge_count());
            if (lab) {
                mc["satisfied"] = to_json(montecarlo_satisfied(lc, *lab, sp, trials));
                mc["satisfied"]["expected"] = s.probability.p * static_cast<double>(satisfied_count(lc, *lab));
            }
            j["montecarlo"] = mc;
        }
    } else if (trials > 0) {
        throw InputError("--trials needs --alpha");
    }
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Label Cover and basic k-spanner reduction toolkit", "lcspan"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "lcspan 1.0");

    Globals globals;
    app.add_option("--threads", globals.threads, "Worker threads for parallel kernels (default: all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--budget", globals.budget,
                   "Search-space budget for exact solvers (default: $LCSPAN_BUDGET or 2^24)");
    app.add_option("--time-cap-ms", globals.time_cap_ms, "Wall-clock cap per exact solver call, 0 = none");

    int status = kExitOk;
    std::function<void()> action;
    auto on = [&](CLI::App* sub, std::function<void()> fn) { sub->callback([&action, fn] { action = fn; }); };

    // Shared option storage; each command binds only what it uses.
    std::string in, out_path, labeling_in, labeling_out, graph_path, subset_path, meta_path, cover_path;
    std::uint32_t vars = 0, ell = 1, k = 3, degree = 0;
    std::uint64_t seed = 0, x = 0, max_superedges = kDefaultRepetitionBudget, max_edges = 20'000'000, trials = 0;
    double alpha = 0.0;
    bool planted = false, no_clamp = false, unsafe = false, independent = false;

    auto opt_in = [&](CLI::App* s, const char* what) { s->add_option("-i,--in", in, what)->required(); };
    auto opt_out = [&](CLI::App* s, const char* what) { s->add_option("-o,--out", out_path, what); };

    auto* gen = app.add_subcommand("gen-3sat5", "Generate a random 3SAT(5) formula (DIMACS cnf)");
    gen->add_option("--vars", vars, "Number of variables n' (divisible by 3)")->required();
    gen->add_option("--seed", seed, "Master seed");
    gen->add_flag("--planted", planted, "Plant a satisfying assignment derived from the seed");
    opt_out(gen, "Output file (default: stdout)");
    on(gen, [&] {
        std::optional<std::vector<bool>> p;
        if (planted) p = planted_assignment(vars, seed);
        emit(out_path, format_cnf(gen_3sat5(vars, seed, p)), out);
    });

    auto* lcf = app.add_subcommand("lc-from-3sat", "Clause/variable Label Cover instance of a 3SAT(5) formula");
    opt_in(lcf, "DIMACS cnf input");
    opt_out(lcf, "LC v1 output (default: stdout)");
    lcf->add_option("--labeling-out", labeling_out, "Write the planted assignment's labeling (LABEL v1)");
    on(lcf, [&] {
        const Formula3Sat5 f = parse_cnf(read_file(in));
        emit(out_path, format_lc(lc_from_3sat5(f)), out);
        if (!labeling_out.empty()) {
            if (!f.planted) throw InputError("--labeling-out needs a formula with a planted assignment");
            write_file(labeling_out, format_labeling(labeling_from_assignment(f, *f.planted)));
        }
    });

    auto* reg = app.add_subcommand("regularize", "3 copies of A, 5 copies of B: 15-regular supergraph");
    opt_in(reg, "LC v1 input from lc-from-3sat");
    opt_out(reg, "LC v1 output (default: stdout)");
    reg->add_option("--labeling-in", labeling_in, "Labeling of the input to carry through");
    reg->add_option("--labeling-out", labeling_out, "Where to write the carried labeling");
    on(reg, [&] {
        const LabelCoverInstance lc = load_lc(in);
        emit(out_path, format_lc(regularize(lc)), out);
        if (!labeling_in.empty() && !labeling_out.empty())
            write_file(labeling_out,
                       format_labeling(lift_labeling(lc, load_labeling(labeling_in), LiftStage::regularize())));
    });

    auto* rep = app.add_subcommand("parrep", "ell-fold parallel repetition");
    opt_in(rep, "LC v1 input");
    opt_out(rep, "LC v1 output (default: stdout)");
    rep->add_option("--ell", ell, "Repetition count")->required()->check(CLI::PositiveNumber);
    rep->add_option("--max-superedges", max_superedges, "Refuse outputs with more superedges");
    rep->add_option("--labeling-in", labeling_in, "Labeling of the input to carry through");
    rep->add_option("--labeling-out", labeling_out, "Where to write the carried labeling");
    on(rep, [&] {
        const LabelCoverInstance lc = load_lc(in);
        emit(out_path, format_lc(parallel_repetition(lc, ell, max_superedges)), out);
        if (!labeling_in.empty() && !labeling_out.empty())
            write_file(labeling_out,
                       format_labeling(lift_labeling(lc, load_labeling(labeling_in), LiftStage::repetition(ell))));
    });

    auto* sub = app.add_subcommand("subsample", "Keep each superedge with probability alpha*log2(SA)/d");
    opt_in(sub, "LC v1 input");
    opt_out(sub, "LC v1 output (default: stdout)");
    sub->add_option("--alpha", alpha, "alpha > 0")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Sampling seed");
    sub->add_option("--degree", degree, "d in the formula (default: maximum degree)");
    sub->add_flag("--no-clamp", no_clamp, "Reject p > 1 instead of clamping it");
    on(sub, [&] {
        const LabelCoverInstance lc = load_lc(in);
        SampleParams sp;
        sp.alpha = alpha;
        sp.seed = seed;
        sp.clamp_p = !no_clamp;
        if (degree > 0) sp.degree = degree;
        const SampleProbability p = sample_probability(lc, sp);
        if (p.clamped) err << "warning: p = " << p.unclamped << " clamped to 1\n";
        emit(out_path, format_lc(subsample(lc, sp)), out);
    });

    auto* strip = app.add_subcommand("strip-cycles", "Remove every superedge on a cycle of length <= k");
    opt_in(strip, "LC v1 input");
    opt_out(strip, "LC v1 output (default: stdout)");
    strip->add_option("--k", k, "Cycle length threshold")->required();
    on(strip, [&] { emit(out_path, format_lc(strip_bad_edges(load_lc(in), k)), out); });

    auto* gir = app.add_subcommand("girth", "Girth of a GRAPH v1 file, or supergirth of an LC v1 file");
    opt_in(gir, "GRAPH v1 or LC v1 input");
    gir->add_flag("--independent", independent, "Use the BFS-from-every-vertex formulation");
    on(gir, [&] {
        const std::string text = read_file(in);
        const std::string head = header_token(text);
        Graph g;
        if (head == "GRAPH")
            g = parse_graph(text);
        else if (head == "LC")
            g = supergraph(parse_lc(text));
        else
            throw InputError("girth expects a GRAPH v1 or LC v1 file");
        out << (independent ? girth_independent(g) : girth(g)).to_string() << '\n';
    });

    auto* mre = app.add_subcommand("minrep-expand", "Min-Rep graph of a Label Cover instance");
    opt_in(mre, "LC v1 input");
    opt_out(mre, "GRAPH v1 output (default: stdout)");
    on(mre, [&] { emit(out_path, format_graph(minrep_expand(load_lc(in)).graph()), out); });

    auto* red = app.add_subcommand("spanner-reduce", "Build the basic k-spanner gadget graph G'");
    opt_in(red, "LC v1 input (supergirth >= k + 2)");
    red->add_option("-o,--out", out_path, "GRAPH v1 output")->required();
    red->add_option("--meta", meta_path, "Sidecar metadata output (JSON)")->required();
    red->add_option("--k", k, "Stretch k >= 3")->required();
    red->add_option("--x", x, "Number of tower copies (default: ceil(n^2/n_tilde))");
    red->add_flag("--unsafe-supergirth", unsafe, "Build even if the supergirth is below k + 2");
    red->add_option("--max-edges", max_edges, "Refuse gadgets with more edges");
    on(red, [&] {
        SpannerBuildOptions opts;
        if (x > 0) opts.x_override = x;
        opts.unsafe_supergirth = unsafe;
        opts.max_edges = max_edges;
        const SpannerInstance si = build_spanner_instance(MinRepInstance(load_lc(in)), k, opts);
        write_file(out_path, format_graph(si.graph()));
        write_file(meta_path, dump(to_json(spanner_meta(si, unsafe))));
        for (const std::string& note : si.notes()) err << "note: " << note << '\n';
        out << "gadget: " << si.graph().vertex_count() << " vertices, " << si.graph().edge_count()
            << " edges, k = " << si.k() << ", x = " << si.x() << '\n';
    });

    auto* ver = app.add_subcommand("spanner-verify", "Check that a subset is a k-spanner of its host graph");
    ver->add_option("--graph", graph_path, "Host GRAPH v1 file")->required();
    ver->add_option("--subset", subset_path, "SUBSET v1 file")->required();
    ver->add_option("--k", k, "Stretch")->required();
    on(ver, [&] {
        const Graph g = load_graph(graph_path);
        const EdgeSubset h = load_subset(subset_path);
        check_host(g, h);
        const SpannerCheck c = verify_spanner(g, h, k);
        if (c.ok) {
            out << "OK: " << h.size() << " of " << g.edge_count() << " edges form a " << k << "-spanner\n";
        } else {
            out << "FAIL: " << describe_edge(g, *c.witness) << " is not spanned within " << k << " hops\n";
            status = kExitVerifyFailed;
        }
    });

    auto* grd = app.add_subcommand("spanner-greedy", "Greedy k-spanner");
    grd->add_option("--graph", graph_path, "GRAPH v1 input")->required();
    grd->add_option("--k", k, "Stretch")->required();
    opt_out(grd, "SUBSET v1 output (default: stdout)");
    on(grd, [&] { emit(out_path, format_subset(greedy_spanner(load_graph(graph_path), k)), out); });

    auto* sfc = app.add_subcommand("spanner-from-cover", "Spanner of the gadget graph built from a REP-cover");
    sfc->add_option("--meta", meta_path, "Gadget metadata from spanner-reduce")->required();
    sfc->add_option("--cover", cover_path, "COVER v1 file")->required();
    opt_out(sfc, "SUBSET v1 output (default: stdout)");
    on(sfc, [&] {
        const SpannerInstance si = load_spanner_instance(meta_path);
        emit(out_path, format_subset(spanner_from_repcover(si, parse_cover(read_file(cover_path)))), out);
    });

    auto* cfs = app.add_subcommand("cover-from-spanner", "REP-cover extracted from a spanner of the gadget graph");
    cfs->add_option("--meta", meta_path, "Gadget metadata from spanner-reduce")->required();
    cfs->add_option("--subset", subset_path, "SUBSET v1 k-spanner of the gadget")->required();
    opt_out(cfs, "COVER v1 output (default: stdout)");
    on(cfs, [&] {
        const SpannerInstance si = load_spanner_instance(meta_path);
        emit(out_path, format_cover(repcover_from_spanner(si, load_subset(subset_path))), out);
    });

    auto* mkp = app.add_subcommand("make-proper", "Rewrite a spanner of the gadget graph without E_G edges");
    mkp->add_option("--meta", meta_path, "Gadget metadata from spanner-reduce")->required();
    mkp->add_option("--subset", subset_path, "SUBSET v1 k-spanner of the gadget")->required();
    opt_out(mkp, "SUBSET v1 output (default: stdout)");
    on(mkp, [&] {
        const SpannerInstance si = load_spanner_instance(meta_path);
        emit(out_path, format_subset(make_proper(si, load_subset(subset_path))), out);
    });

    auto* slc = app.add_subcommand("solve-lc-exact", "Exact Label Cover value by exhaustive search");
    opt_in(slc, "LC v1 input");
    slc->add_option("--labeling-out", labeling_out, "Write an optimal labeling (LABEL v1)");
    on(slc, [&] {
        const ExactValue ev = lc_value_exact(load_lc(in), budget_of(globals));
        out << "value " << ev.value.to_string() << " (search space " << ev.search_space << ", enumerated side "
            << (ev.enumerated == Side::A ? "A" : "B") << ")\n";
        if (!labeling_out.empty()) write_file(labeling_out, format_labeling(ev.witness));
    });

    auto* scv = app.add_subcommand("solve-cover-exact", "Minimum REP-cover by exhaustive search");
    opt_in(scv, "LC v1 input");
    opt_out(scv, "COVER v1 output for the witness");
    on(scv, [&] {
        const ExactCover ec = min_repcover_exact(MinRepInstance(load_lc(in)), budget_of(globals));
        out << "minimum REP-cover " << ec.size << " (search space " << ec.search_space << ")\n";
        if (!out_path.empty()) write_file(out_path, format_cover(ec.witness));
    });

    auto* ssp = app.add_subcommand("solve-spanner-exact", "Minimum k-spanner by exhaustive search");
    ssp->add_option("--graph", graph_path, "GRAPH v1 input")->required();
    ssp->add_option("--k", k, "Stretch")->required();
    opt_out(ssp, "SUBSET v1 output for the witness");
    on(ssp, [&] {
        const ExactSpanner es = min_spanner_exact(load_graph(graph_path), k, budget_of(globals));
        out << "minimum " << k << "-spanner " << es.size << " edges (search space " << es.search_space << ")\n";
        if (!out_path.empty()) write_file(out_path, format_subset(es.witness));
    });

    PipelineConfig pc;
    auto* pip = app.add_subcommand("pipeline", "Formula to verified spanner, writing every stage's artifact");
    pip->add_option("--vars", pc.vars, "Variables n' (divisible by 3)")->required();
    pip->add_option("--ell", pc.ell, "Parallel repetition count")->check(CLI::PositiveNumber);
    pip->add_option("--alpha", pc.alpha, "Sampling alpha")->required()->check(CLI::PositiveNumber);
    pip->add_option("--k", pc.k, "Stretch k >= 3; cycles up to k + 1 are stripped first")->required();
    pip->add_option("--seed", pc.seed, "Master seed for every random stage");
    pip->add_flag("--planted", pc.planted, "Plant a satisfying assignment and carry it through");
    pip->add_option("--x", pc.x, "Tower copies (default: ceil(n^2/n_tilde))");
    pip->add_option("--degree", pc.degree, "d in the sampling formula (default: maximum degree)");
    pip->add_flag("--no-clamp", pc.no_clamp, "Reject p > 1 instead of clamping it");
    pip->add_flag("--unsafe-supergirth", pc.unsafe_supergirth, "Build the gadget despite short supercycles");
    pip->add_option("--trials", pc.trials, "Monte Carlo trials on the sampling stage");
    pip->add_flag("--oracles", pc.oracles, "Run the exact value oracle on the stripped instance when within budget");
    pip->add_flag("--timing", pc.timing, "Record wall-clock per stage (makes the report non-reproducible)");
    pip->add_option("--out-dir", pc.out_dir, "Directory for the artifacts and report.json");
    pip->add_option("--max-superedges", pc.max_superedges, "Refuse repetitions with more superedges");
    pip->add_option("--max-edges", pc.max_edges, "Refuse gadgets with more edges");
    on(pip, [&] { status = run_pipeline(pc, globals, out, err); });

    auto* sts = app.add_subcommand("stats", "stats_v1 JSON for a Label Cover instance");
    opt_in(sts, "LC v1 input");
    opt_out(sts, "JSON output (default: stdout)");
    sts->add_option("--labeling", labeling_in, "Labeling to score (LABEL v1)");
    sts->add_option("--alpha", alpha, "Also sample and strip with this alpha");
    sts->add_option("--k", k, "Strip threshold used with --alpha");
    sts->add_option("--seed", seed, "Sampling seed");
    sts->add_option("--degree", degree, "d in the sampling formula (default: maximum degree)");
    sts->add_flag("--no-clamp", no_clamp, "Reject p > 1 instead of clamping it");
    sts->add_option("--trials", trials, "Monte Carlo trials (needs --alpha)");
    on(sts, [&] {
        std::optional<Labeling> lab;
        if (!labeling_in.empty()) lab = load_labeling(labeling_in);
        emit(out_path, dump(stats_report(load_lc(in), lab, alpha, k, seed, !no_clamp, degree, trials)), out);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        set_num_threads(globals.threads);
        if (action) action();
        return status;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::bad_alloc&) {
        err << "resource error: out of memory\n";
        return kExitResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace lcspan::cli
