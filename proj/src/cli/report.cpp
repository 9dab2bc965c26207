#include "lcspan/report.hpp"

#include "lcspan/error.hpp"
#include "lcspan/formats.hpp"

namespace lcspan {

char family_letter(EdgeFamily f)
{
    switch (f) {
    case EdgeFamily::E: return 'E';
    case EdgeFamily::EM: return 'M';
    case EdgeFamily::EsA: return 'A';
    case EdgeFamily::EtB: return 'B';
    case EdgeFamily::EG: return 'G';
    }
    return '?';
}

SpannerMeta spanner_meta(const SpannerInstance& si, bool unsafe_supergirth)
{
    SpannerMeta m;
    m.k = si.k();
    m.k_a = si.k_a();
    m.k_b = si.k_b();
    m.x = si.x();
    m.default_x = si.uses_default_x();
    m.unsafe_supergirth = unsafe_supergirth;
    m.n = si.n();
    m.n_tilde = si.n_tilde();
    m.vertex_count = si.graph().vertex_count();
    m.edge_count = si.graph().edge_count();
    m.graph_fingerprint = si.graph().fingerprint();
    m.families.reserve(si.families().size());
    for (EdgeFamily f : si.families()) m.families.push_back(family_letter(f));
    m.hat_e = si.hat_e();
    m.notes = si.notes();
    m.source_lc = format_lc(si.label_cover());
    return m;
}

Json to_json(const SpannerMeta& m)
{
    const LabelCoverInstance lc = parse_lc(m.source_lc);
    const std::uint64_t a = lc.a_count(), b = lc.b_count();
    const std::uint64_t a_block = a * lc.sigma_a();
    Json roles = Json::array();
    roles.push_back({{"kind", "minrep_A"}, {"first", 0}, {"count", a_block}, {"index", "i*sigma_a + alpha"}});
    roles.push_back({{"kind", "minrep_B"}, {"first", a_block}, {"count", m.n - a_block},
                     {"index", "a_block + j*sigma_b + beta"}});
    roles.push_back({{"kind", "S"}, {"first", m.n}, {"count", m.x * a * m.k_a},
                     {"index", "n + (p*|A| + i)*k_a + level - 1"}});
    roles.push_back({{"kind", "T"}, {"first", m.n + m.x * a * m.k_a}, {"count", m.x * b * m.k_b},
                     {"index", "n + x*|A|*k_a + (p*|B| + j)*k_b + level - 1"}});

    Json counts = Json::object();
    for (char c : std::string("EMABG")) counts[std::string(1, c)] = std::count(m.families.begin(), m.families.end(), c);

    Json j;
    j["schema"] = kSpannerMetaSchema;
    j["k"] = m.k;
    j["k_a"] = m.k_a;
    j["k_b"] = m.k_b;
    j["x"] = m.x;
    j["default_x"] = m.default_x;
    j["unsafe_supergirth"] = m.unsafe_supergirth;
    j["n"] = m.n;
    j["n_tilde"] = m.n_tilde;
    j["graph"] = {{"vertices", m.vertex_count}, {"edges", m.edge_count}, {"fingerprint", hex64(m.graph_fingerprint)}};
    j["roles"] = roles;
    j["families"] = {{"legend", {{"E", "E"}, {"M", "E_M"}, {"A", "E_sA"}, {"B", "E_tB"}, {"G", "E_G"}}},
                     {"counts", counts},
                     {"per_edge", m.families}};
    j["hat_e"] = m.hat_e;
    j["notes"] = m.notes;
    j["source_lc"] = m.source_lc;
    return j;
}

SpannerMeta spanner_meta_from_json(const Json& j)
{
    try {
        if (j.at("schema").get<std::string>() != kSpannerMetaSchema)
            throw InputError("spanner metadata: schema must be " + std::string(kSpannerMetaSchema));
        SpannerMeta m;
        m.k = j.at("k").get<std::uint32_t>();
        m.k_a = j.at("k_a").get<std::uint32_t>();
        m.k_b = j.at("k_b").get<std::uint32_t>();
        m.x = j.at("x").get<std::uint64_t>();
        m.default_x = j.at("default_x").get<bool>();
        m.unsafe_supergirth = j.at("unsafe_supergirth").get<bool>();
        m.n = j.at("n").get<std::uint64_t>();
        m.n_tilde = j.at("n_tilde").get<std::uint64_t>();
        m.vertex_count = j.at("graph").at("vertices").get<std::uint64_t>();
        m.edge_count = j.at("graph").at("edges").get<std::uint64_t>();
        const std::string fp = j.at("graph").at("fingerprint").get<std::string>();
        m.graph_fingerprint = std::stoull(fp, nullptr, 16);
        m.families = j.at("families").at("per_edge").get<std::string>();
        m.hat_e = j.at("hat_e").get<std::vector<EdgeId>>();
        m.notes = j.at("notes").get<std::vector<std::string>>();
        m.source_lc = j.at("source_lc").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("spanner metadata: ") + e.what());
    } catch (const std::logic_error& e) {
        throw InputError(std::string("spanner metadata: ") + e.what());
    }
}

SpannerInstance rebuild_spanner_instance(const SpannerMeta& meta)
{
    SpannerBuildOptions opts;
    if (!meta.default_x) opts.x_override = meta.x;
    opts.unsafe_supergirth = meta.unsafe_supergirth;
    SpannerInstance si(MinRepInstance(parse_lc(meta.source_lc)), meta.k, opts);
    if (si.graph().fingerprint() != meta.graph_fingerprint || si.x() != meta.x)
        throw InputError("spanner metadata does not match the gadget graph it describes");
    return si;
}

Json distance_json(Distance d)
{
    if (d.is_finite()) return d.value();
    return "inf";
}

Json to_json(const DegreeSummary& d) { return {{"min", d.min}, {"max", d.max}, {"mean", d.mean}}; }

Json to_json(const DegreeStats& d) { return {{"A", to_json(d.a)}, {"B", to_json(d.b)}, {"all", to_json(d.all)}}; }

Json to_json(const SampleStats& s)
{
    Json j;
    j["alpha"] = s.params.alpha;
    j["k"] = s.params.k;
    j["seed"] = s.params.seed;
    j["clamp_p"] = s.params.clamp_p;
    j["degree_used"] = s.degree_used;
    j["p"] = s.probability.p;
    j["p_unclamped"] = s.probability.unclamped;
    j["clamped"] = s.probability.clamped;
    j["edges_before"] = s.edges_before;
    j["edges_sampled"] = s.edges_sampled;
    j["bad_edges"] = s.bad_edge_count;
    j["edges_after"] = s.edges_after;
    j["degrees_sampled"] = to_json(s.degrees_sampled);
    j["degrees_after"] = to_json(s.degrees_after);
    j["girth_after"] = distance_json(s.girth_after);
    return j;
}

Json to_json(const MonteCarloEstimate& m)
{
    return {{"trials", m.trials}, {"mean", m.mean}, {"variance", m.variance}, {"std_error", m.std_error}};
}

Json to_json(const PipelineTrace& trace)
{
    Json out = Json::array();
    for (const auto& s : trace.stages) {
        Json params = Json::object();
        for (const auto& [k, v] : s.params) params[k] = v;
        out.push_back({{"name", s.name},
                       {"seed", s.seed},
                       {"a_count", s.a_count},
                       {"b_count", s.b_count},
                       {"sigma_a", s.sigma_a},
                       {"sigma_b", s.sigma_b},
                       {"superedges", s.superedges},
                       {"params", params},
                       {"notes", s.notes}});
    }
    return out;
}

}  // namespace lcspan
