#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lcspan/constructions.hpp"
#include "lcspan/graph.hpp"
#include "lcspan/label_cover.hpp"
#include "lcspan/spanner.hpp"

namespace lcspan {

// Line-oriented ASCII formats. Writers emit the canonical form; parsers reject
// anything malformed with an InputError naming the offending line.
//
//   GRAPH v1 / N <n> M <m> / m lines "u v", u < v, sorted
//   LC v1 / A <a> B <b> SA <sa> SB <sb> M <m> / per superedge "E a b t" + t sorted "alpha beta"
//   COVER v1 / lines "<A|B> <supervertex> <symbol>", sorted
//   LABEL v1 / lines "<A|B> <vertex> <symbol>", every vertex exactly once
//   SUBSET v1 / HOST <16 hex digits> / sorted edge ids
//   DIMACS cnf with "c seed <s>" and "c planted <bits|none>" comments

std::string format_graph(const Graph& g);
Graph parse_graph(std::string_view text);

std::string format_lc(const LabelCoverInstance& lc);
LabelCoverInstance parse_lc(std::string_view text);

std::string format_cover(const RepCover& cover);
RepCover parse_cover(std::string_view text);

std::string format_labeling(const Labeling& lab);
// Side sizes are inferred: the vertices listed for a side must be exactly 0..count-1.
Labeling parse_labeling(std::string_view text);

std::string format_subset(const EdgeSubset& h);
EdgeSubset parse_subset(std::string_view text);

std::string format_cnf(const Formula3Sat5& f);
Formula3Sat5 parse_cnf(std::string_view text);

std::string hex64(std::uint64_t v);

// First token of the first line, e.g. "GRAPH", "LC", "p" or "c" for CNF.
std::string header_token(std::string_view text);

std::string read_file(const std::filesystem::path& path);
// Writes atomically enough for our purposes: truncate then write; throws InputError on failure.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lcspan
