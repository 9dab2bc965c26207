#include "lcspan/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lcspan/error.hpp"

namespace lcspan {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string_view> tokens;
};

// Non-blank lines, split on spaces and tabs.
std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            const std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
            if (i > start) line.tokens.push_back(raw.substr(start, i - start));
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail(std::string_view format, const Line& line, const std::string& what)
{
    throw InputError(std::string(format) + " line " + std::to_string(line.number) + ": " + what);
}

[[noreturn]] void fail(std::string_view format, const std::string& what)
{
    throw InputError(std::string(format) + ": " + what);
}

template <typename T>
T number(std::string_view format, const Line& line, std::string_view tok)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        fail(format, line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
}

void expect_header(std::string_view format, const std::vector<Line>& lines, std::string_view name)
{
    if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != name || lines[0].tokens[1] != "v1")
        fail(format, "missing header '" + std::string(name) + " v1'");
}

void expect_arity(std::string_view format, const Line& line, std::size_t n)
{
    if (line.tokens.size() != n)
        fail(format, line, "expected " + std::to_string(n) + " fields, got " + std::to_string(line.tokens.size()));
}

void expect_key(std::string_view format, const Line& line, std::size_t at, std::string_view key)
{
    if (line.tokens[at] != key) fail(format, line, "expected '" + std::string(key) + "'");
}

Side parse_side(std::string_view format, const Line& line, std::string_view tok)
{
    if (tok == "A") return Side::A;
    if (tok == "B") return Side::B;
    fail(format, line, "side must be A or B, got '" + std::string(tok) + "'");
}

const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

}  // namespace

std::string hex64(std::uint64_t v)
{
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

std::string header_token(std::string_view text)
{
    const auto lines = tokenize(text);
    return lines.empty() ? std::string() : std::string(lines[0].tokens[0]);
}

std::string format_graph(const Graph& g)
{
    std::ostringstream out;
    out << "GRAPH v1\nN " << g.vertex_count() << " M " << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

Graph parse_graph(std::string_view text)
{
    constexpr std::string_view F = "GRAPH v1";
    const auto lines = tokenize(text);
    expect_header(F, lines, "GRAPH");
    if (lines.size() < 2) fail(F, "missing 'N <n> M <m>' line");
    const Line& dims = lines[1];
    expect_arity(F, dims, 4);
    expect_key(F, dims, 0, "N");
    expect_key(F, dims, 2, "M");
    const auto n = number<std::uint64_t>(F, dims, dims.tokens[1]);
    const auto m = number<std::uint64_t>(F, dims, dims.tokens[3]);
    if (n > std::numeric_limits<Vertex>::max()) fail(F, dims, "vertex count too large");
    if (lines.size() != m + 2)
        fail(F, "declared M " + std::to_string(m) + " but found " + std::to_string(lines.size() - 2) + " edge lines");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& l = lines[i];
        expect_arity(F, l, 2);
        const auto u = number<std::uint64_t>(F, l, l.tokens[0]);
        const auto v = number<std::uint64_t>(F, l, l.tokens[1]);
        if (u >= n || v >= n) fail(F, l, "endpoint out of range");
        if (u == v) fail(F, l, "self-loop");
        if (u > v) fail(F, l, "edge must be written with u < v");
        const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!edges.empty() && !(edges.back() < e))
            fail(F, l, edges.back() == e ? "duplicate edge" : "edges not sorted");
        edges.push_back(e);
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

std::string format_lc(const LabelCoverInstance& lc)
{
    std::ostringstream out;
    out << "LC v1\nA " << lc.a_count() << " B " << lc.b_count() << " SA " << lc.sigma_a() << " SB "
        << lc.sigma_b() << " M " << lc.edge_count() << '\n';
    for (std::size_t id = 0; id < lc.edge_count(); ++id) {
        const Superedge& e = lc.edge(id);
        const Relation& r = lc.relation(id);
        out << "E " << e.a << ' ' << e.b << ' ' << r.size() << '\n';
        for (const SymbolPair& p : r) out << p.alpha << ' ' << p.beta << '\n';
    }
    return out.str();
}

LabelCoverInstance parse_lc(std::string_view text)
{
    constexpr std::string_view F = "LC v1";
    const auto lines = tokenize(text);
    expect_header(F, lines, "LC");
    if (lines.size() < 2) fail(F, "missing dimension line");
    const Line& dims = lines[1];
    expect_arity(F, dims, 10);
    const char* keys[] = {"A", "B", "SA", "SB", "M"};
    std::uint32_t vals[5];
    for (int i = 0; i < 5; ++i) {
        expect_key(F, dims, static_cast<std::size_t>(2 * i), keys[i]);
        vals[i] = number<std::uint32_t>(F, dims, dims.tokens[static_cast<std::size_t>(2 * i + 1)]);
    }
    std::vector<LabelCoverInstance::ExplicitEdge> edges;
    edges.reserve(vals[4]);
    std::size_t i = 2;
    while (i < lines.size()) {
        const Line& head = lines[i++];
        expect_arity(F, head, 4);
        expect_key(F, head, 0, "E");
        const auto a = number<std::uint32_t>(F, head, head.tokens[1]);
        const auto b = number<std::uint32_t>(F, head, head.tokens[2]);
        const auto t = number<std::uint64_t>(F, head, head.tokens[3]);
        if (t == 0) fail(F, head, "empty relation");
        if (i + t > lines.size()) fail(F, head, "relation truncated");
        Relation r;
        r.reserve(t);
        for (std::uint64_t j = 0; j < t; ++j) {
            const Line& l = lines[i++];
            expect_arity(F, l, 2);
            const SymbolPair p{number<Symbol>(F, l, l.tokens[0]), number<Symbol>(F, l, l.tokens[1])};
            if (!r.empty() && !(r.back() < p)) fail(F, l, r.back() == p ? "duplicate pair" : "pairs not sorted");
            r.push_back(p);
        }
        edges.push_back({a, b, std::move(r)});
    }
    if (edges.size() != vals[4])
        fail(F, "declared M " + std::to_string(vals[4]) + " but found " + std::to_string(edges.size()) + " superedges");
    return LabelCoverInstance::from_explicit(vals[0], vals[1], vals[2], vals[3], std::move(edges));
}

std::string format_cover(const RepCover& cover)
{
    std::ostringstream out;
    out << "COVER v1\n";
    for (const RepMember& m : cover.members()) out << side_name(m.side) << ' ' << m.supervertex << ' ' << m.symbol << '\n';
    return out.str();
}

RepCover parse_cover(std::string_view text)
{
    constexpr std::string_view F = "COVER v1";
    const auto lines = tokenize(text);
    expect_header(F, lines, "COVER");
    std::vector<RepMember> members;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        expect_arity(F, l, 3);
        const RepMember m{parse_side(F, l, l.tokens[0]), number<std::uint32_t>(F, l, l.tokens[1]),
                          number<Symbol>(F, l, l.tokens[2])};
        if (!members.empty() && !(members.back() < m))
            fail(F, l, members.back() == m ? "duplicate member" : "members not sorted");
        members.push_back(m);
    }
    return RepCover(std::move(members));
}

std::string format_labeling(const Labeling& lab)
{
    std::ostringstream out;
    out << "LABEL v1\n";
    for (std::size_t v = 0; v < lab.gamma_a.size(); ++v) out << "A " << v << ' ' << lab.gamma_a[v] << '\n';
    for (std::size_t v = 0; v < lab.gamma_b.size(); ++v) out << "B " << v << ' ' << lab.gamma_b[v] << '\n';
    return out.str();
}

Labeling parse_labeling(std::string_view text)
{
    constexpr std::string_view F = "LABEL v1";
    const auto lines = tokenize(text);
    expect_header(F, lines, "LABEL");
    std::vector<std::pair<std::uint32_t, Symbol>> sides[2];
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        expect_arity(F, l, 3);
        const Side s = parse_side(F, l, l.tokens[0]);
        sides[static_cast<int>(s)].emplace_back(number<std::uint32_t>(F, l, l.tokens[1]),
                                                number<Symbol>(F, l, l.tokens[2]));
    }
    Labeling lab;
    for (int s = 0; s < 2; ++s) {
        auto& entries = sides[s];
        std::sort(entries.begin(), entries.end());
        std::vector<Symbol>& gamma = s == 0 ? lab.gamma_a : lab.gamma_b;
        for (std::size_t v = 0; v < entries.size(); ++v) {
            if (entries[v].first != v)
                fail(F, std::string("side ") + (s == 0 ? "A" : "B") + " vertex " + std::to_string(v) +
                            (entries[v].first < v ? " labeled twice" : " missing"));
            gamma.push_back(entries[v].second);
        }
    }
    return lab;
}

std::string format_subset(const EdgeSubset& h)
{
    std::ostringstream out;
    out << "SUBSET v1\nHOST " << hex64(h.host) << '\n';
    for (EdgeId e : h.members) out << e << '\n';
    return out.str();
}

EdgeSubset parse_subset(std::string_view text)
{
    constexpr std::string_view F = "SUBSET v1";
    const auto lines = tokenize(text);
    expect_header(F, lines, "SUBSET");
    if (lines.size() < 2) fail(F, "missing 'HOST <hash>' line");
    const Line& host = lines[1];
    expect_arity(F, host, 2);
    expect_key(F, host, 0, "HOST");
    EdgeSubset h;
    const std::string_view hex = host.tokens[1];
    const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), h.host, 16);
    if (hex.size() != 16 || ec != std::errc() || ptr != hex.data() + hex.size())
        fail(F, host, "host hash must be 16 hex digits");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& l = lines[i];
        expect_arity(F, l, 1);
        const auto e = number<EdgeId>(F, l, l.tokens[0]);
        if (!h.members.empty() && h.members.back() >= e)
            fail(F, l, h.members.back() == e ? "duplicate edge id" : "edge ids not sorted");
        h.members.push_back(e);
    }
    return h;
}

std::string format_cnf(const Formula3Sat5& f)
{
    std::ostringstream out;
    out << "c 3SAT(5) formula\nc seed " << f.seed << "\nc planted ";
    if (f.planted) {
        for (bool b : *f.planted) out << (b ? '1' : '0');
        if (f.planted->empty()) out << '-';
    } else {
        out << "none";
    }
    out << "\np cnf " << f.var_count << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        for (const Literal& l : c) out << (l.positive ? "" : "-") << (l.var + 1) << ' ';
        out << "0\n";
    }
    return out.str();
}

Formula3Sat5 parse_cnf(std::string_view text)
{
    constexpr std::string_view F = "cnf";
    const auto lines = tokenize(text);
    Formula3Sat5 f;
    bool have_problem = false;
    std::uint64_t declared = 0;
    for (const Line& l : lines) {
        if (l.tokens[0] == "c") {
            if (l.tokens.size() == 3 && l.tokens[1] == "seed") {
                f.seed = number<std::uint64_t>(F, l, l.tokens[2]);
            } else if (l.tokens.size() == 3 && l.tokens[1] == "planted" && l.tokens[2] != "none") {
                std::vector<bool> bits;
                if (l.tokens[2] != "-") {
                    for (char c : l.tokens[2]) {
                        if (c != '0' && c != '1') fail(F, l, "planted assignment must be a 0/1 string");
                        bits.push_back(c == '1');
                    }
                }
                f.planted = std::move(bits);
            }
            continue;
        }
        if (l.tokens[0] == "p") {
            if (have_problem) fail(F, l, "second problem line");
            expect_arity(F, l, 4);
            expect_key(F, l, 1, "cnf");
            f.var_count = number<std::uint32_t>(F, l, l.tokens[2]);
            declared = number<std::uint64_t>(F, l, l.tokens[3]);
            have_problem = true;
            continue;
        }
        if (!have_problem) fail(F, l, "clause before the 'p cnf' line");
        expect_arity(F, l, 4);
        if (l.tokens[3] != "0") fail(F, l, "clause must end with 0");
        Clause c;
        for (std::size_t t = 0; t < 3; ++t) {
            std::string_view tok = l.tokens[t];
            const bool negative = !tok.empty() && tok[0] == '-';
            if (negative) tok.remove_prefix(1);
            const auto var = number<std::uint32_t>(F, l, tok);
            if (var == 0 || var > f.var_count) fail(F, l, "variable out of range");
            c[t] = {var - 1, !negative};
        }
        f.clauses.push_back(c);
    }
    if (!have_problem) fail(F, "missing 'p cnf <vars> <clauses>' line");
    if (f.clauses.size() != declared)
        fail(F, "declared " + std::to_string(declared) + " clauses but found " + std::to_string(f.clauses.size()));
    if (f.planted && f.planted->size() != f.var_count) fail(F, "planted assignment length differs from variable count");
    validate(f);
    return f;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw InputError("write to '" + path.string() + "' failed");
}

}  // namespace lcspan
