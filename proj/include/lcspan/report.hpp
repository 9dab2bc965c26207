#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcspan/constructions.hpp"
#include "lcspan/spanner.hpp"
#include "lcspan/subsample.hpp"

namespace lcspan {

using Json = nlohmann::ordered_json;

// Sidecar for a gadget GRAPH v1 file. It embeds the source Label Cover
// instance, so the full SpannerInstance can be rebuilt from it.
struct SpannerMeta {
    std::uint32_t k = 0;
    std::uint32_t k_a = 0;
    std::uint32_t k_b = 0;
    std::uint64_t x = 0;
    bool default_x = true;
    bool unsafe_supergirth = false;
    std::uint64_t n = 0;
    std::uint64_t n_tilde = 0;
    std::uint64_t vertex_count = 0;
    std::uint64_t edge_count = 0;
    std::uint64_t graph_fingerprint = 0;
    std::string families;  // one letter per edge id: E, M, A (E_sA), B (E_tB), G (E_G)
    std::vector<EdgeId> hat_e;
    std::vector<std::string> notes;
    std::string source_lc;  // LC v1 text

    friend bool operator==(const SpannerMeta&, const SpannerMeta&) = default;
};

inline constexpr const char* kSpannerMetaSchema = "spanner_meta_v1";
inline constexpr const char* kStatsSchema = "stats_v1";

SpannerMeta spanner_meta(const SpannerInstance& si, bool unsafe_supergirth);
Json to_json(const SpannerMeta& meta);
SpannerMeta spanner_meta_from_json(const Json& j);
// Rebuilds the instance and checks it against the recorded fingerprint.
SpannerInstance rebuild_spanner_instance(const SpannerMeta& meta);

char family_letter(EdgeFamily f);

Json to_json(const DegreeSummary& d);
Json to_json(const DegreeStats& d);
Json to_json(const SampleStats& s);
Json to_json(const MonteCarloEstimate& m);
Json to_json(const PipelineTrace& trace);
Json distance_json(Distance d);

}  // namespace lcspan
