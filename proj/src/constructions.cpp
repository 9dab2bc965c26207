#include "lcspan/constructions.hpp"

#include <algorithm>
#include <limits>

#include "lcspan/error.hpp"
#include "lcspan/rng.hpp"

namespace lcspan {

bool satisfies(const Clause& c, const std::vector<bool>& assignment)
{
    for (const Literal& l : c)
        if (assignment[l.var] == l.positive) return true;
    return false;
}

void validate(const Formula3Sat5& f)
{
    if (f.var_count == 0 || f.var_count % 3 != 0)
        throw InputError("variable count " + std::to_string(f.var_count) + " is not a positive multiple of 3");
    const std::size_t expected = static_cast<std::size_t>(f.var_count) * 5 / 3;
    if (f.clauses.size() != expected)
        throw InputError("expected " + std::to_string(expected) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    std::vector<std::uint32_t> occurrences(f.var_count, 0);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Clause& c = f.clauses[i];
        for (const Literal& l : c) {
            if (l.var >= f.var_count) throw InputError("clause " + std::to_string(i) + " uses an unknown variable");
            ++occurrences[l.var];
        }
        if (c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var)
            throw InputError("clause " + std::to_string(i) + " repeats a variable");
    }
    for (std::uint32_t v = 0; v < f.var_count; ++v)
        if (occurrences[v] != 5)
            throw InputError("variable " + std::to_string(v) + " occurs in " + std::to_string(occurrences[v]) +
                             " clauses, not 5");
    if (f.planted) {
        if (f.planted->size() != f.var_count) throw InputError("planted assignment has the wrong length");
        for (std::size_t i = 0; i < f.clauses.size(); ++i)
            if (!satisfies(f.clauses[i], *f.planted))
                throw InputError("clause " + std::to_string(i) + " is not satisfied by the planted assignment");
    }
}

Formula3Sat5 gen_3sat5(std::uint32_t n_prime, std::uint64_t seed, std::optional<std::vector<bool>> planted,
                       std::uint32_t max_attempts)
{
    if (n_prime < 3 || n_prime % 3 != 0)
        throw InputError("n' = " + std::to_string(n_prime) + " must be a positive multiple of 3");
    if (planted && planted->size() != n_prime)
        throw InputError("planted assignment length " + std::to_string(planted->size()) + " differs from n'");

    const std::size_t slot_count = static_cast<std::size_t>(n_prime) * 5;
    std::vector<std::uint32_t> slots(slot_count);
    for (std::size_t i = 0; i < slot_count; ++i) slots[i] = static_cast<std::uint32_t>(i / 5);

    bool found = false;
    for (std::uint32_t attempt = 0; attempt < max_attempts && !found; ++attempt) {
        for (std::size_t i = 0; i < slot_count; ++i) slots[i] = static_cast<std::uint32_t>(i / 5);
        SplitMix64 rng(stream_seed(stage_seed(seed, "gen-3sat5/shuffle"), attempt));
        for (std::size_t i = slot_count - 1; i > 0; --i) std::swap(slots[i], slots[rng.below(i + 1)]);
        found = true;
        for (std::size_t t = 0; t < slot_count; t += 3) {
            if (slots[t] == slots[t + 1] || slots[t] == slots[t + 2] || slots[t + 1] == slots[t + 2]) {
                found = false;
                break;
            }
        }
    }
    if (!found)
        throw ResourceError("no 3SAT(5) configuration without repeated variables after " +
                            std::to_string(max_attempts) + " shuffles");

    Formula3Sat5 f;
    f.var_count = n_prime;
    f.seed = seed;
    f.planted = planted;
    SplitMix64 sign(stage_seed(seed, "gen-3sat5/polarity"));
    for (std::size_t t = 0; t < slot_count; t += 3) {
        Clause c;
        for (int j = 0; j < 3; ++j) c[j] = {slots[t + j], (sign() & 1U) != 0};
        if (planted && !satisfies(c, *planted)) {
            Literal& l = c[sign.below(3)];
            l.positive = (*planted)[l.var];
        }
        f.clauses.push_back(c);
    }
    return f;
}

std::array<std::array<bool, 3>, 7> satisfying_assignments(const Clause& c)
{
    std::array<std::array<bool, 3>, 7> out{};
    std::size_t k = 0;
    for (unsigned bits = 0; bits < 8; ++bits) {
        const std::array<bool, 3> values{(bits & 4U) != 0, (bits & 2U) != 0, (bits & 1U) != 0};
        bool sat = false;
        for (int t = 0; t < 3; ++t) sat = sat || (values[t] == c[t].positive);
        if (sat) out[k++] = values;
    }
    return out;
}

LabelCoverInstance lc_from_3sat5(const Formula3Sat5& f)
{
    validate(f);
    std::vector<LabelCoverInstance::ExplicitEdge> edges;
    edges.reserve(f.clauses.size() * 3);
    for (std::uint32_t a = 0; a < f.clauses.size(); ++a) {
        const auto sat = satisfying_assignments(f.clauses[a]);
        for (int t = 0; t < 3; ++t) {
            Relation r;
            for (Symbol alpha = 0; alpha < 7; ++alpha) r.push_back({alpha, sat[alpha][t] ? 1U : 0U});
            edges.push_back({a, f.clauses[a][t].var, std::move(r)});
        }
    }
    return LabelCoverInstance::from_explicit(static_cast<std::uint32_t>(f.clauses.size()), f.var_count, 7, 2,
                                             std::move(edges));
}

Labeling labeling_from_assignment(const Formula3Sat5& f, const std::vector<bool>& assignment)
{
    if (assignment.size() != f.var_count) throw InputError("assignment length differs from variable count");
    Labeling lab;
    for (const Clause& c : f.clauses) {
        const auto sat = satisfying_assignments(c);
        const std::array<bool, 3> restricted{assignment[c[0].var], assignment[c[1].var], assignment[c[2].var]};
        auto it = std::find(sat.begin(), sat.end(), restricted);
        lab.gamma_a.push_back(it == sat.end() ? 0U : static_cast<Symbol>(it - sat.begin()));
    }
    for (bool v : assignment) lab.gamma_b.push_back(v ? 1U : 0U);
    return lab;
}

LabelCoverInstance duplicate_sides(const LabelCoverInstance& lc, std::uint32_t copies_a, std::uint32_t copies_b)
{
    if (copies_a == 0 || copies_b == 0) throw InputError("copy counts must be positive");
    const std::uint64_t edge_total = static_cast<std::uint64_t>(lc.edge_count()) * copies_a * copies_b;
    if (edge_total >= std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("duplication would create " + std::to_string(edge_total) + " superedges");
    std::vector<Superedge> edges;
    edges.reserve(edge_total);
    for (std::uint32_t i = 0; i < copies_a; ++i)
        for (std::uint32_t j = 0; j < copies_b; ++j)
            for (const Superedge& e : lc.edges())
                edges.push_back({i * lc.a_count() + e.a, j * lc.b_count() + e.b, e.relation});
    return LabelCoverInstance(lc.a_count() * copies_a, lc.b_count() * copies_b, lc.sigma_a(), lc.sigma_b(),
                              std::move(edges), lc.relation_pool());
}

LabelCoverInstance regularize(const LabelCoverInstance& lc)
{
    std::vector<std::uint32_t> deg_a(lc.a_count(), 0), deg_b(lc.b_count(), 0);
    for (const Superedge& e : lc.edges()) {
        ++deg_a[e.a];
        ++deg_b[e.b];
    }
    for (std::uint32_t a = 0; a < lc.a_count(); ++a)
        if (deg_a[a] != 3)
            throw InputError("regularize needs A-degree 3; vertex " + std::to_string(a) + " has degree " +
                             std::to_string(deg_a[a]));
    for (std::uint32_t b = 0; b < lc.b_count(); ++b)
        if (deg_b[b] != 5)
            throw InputError("regularize needs B-degree 5; vertex " + std::to_string(b) + " has degree " +
                             std::to_string(deg_b[b]));
    return duplicate_sides(lc, 3, 5);
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, std::uint64_t limit, const char* what)
{
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw ResourceError(std::string(what) + " " + std::to_string(base) + "^" + std::to_string(exp) +
                                " exceeds the allowed " + std::to_string(limit));
        r *= base;
    }
    return r;
}

}  // namespace

LabelCoverInstance parallel_repetition(const LabelCoverInstance& lc, std::uint32_t ell, std::uint64_t max_superedges)
{
    if (ell == 0) throw InputError("repetition count must be at least 1");
    const std::uint64_t id_limit = std::numeric_limits<std::uint32_t>::max() - 1;
    const std::uint64_t m = lc.edge_count();
    const std::uint64_t total = checked_pow(m, ell, max_superedges, "superedge count");
    const auto a_count = checked_pow(lc.a_count(), ell, id_limit, "A-side size");
    const auto b_count = checked_pow(lc.b_count(), ell, id_limit, "B-side size");
    const auto sigma_a = checked_pow(lc.sigma_a(), ell, id_limit, "A alphabet");
    const auto sigma_b = checked_pow(lc.sigma_b(), ell, id_limit, "B alphabet");
    const std::uint64_t pool = lc.relation_pool().size();
    checked_pow(pool, ell, std::numeric_limits<std::uint64_t>::max() / 2, "relation key space");

    struct Raw {
        std::uint32_t a, b;
        std::uint64_t key;
    };
    std::vector<Raw> raw(total);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
        std::uint64_t rest = static_cast<std::uint64_t>(idx);
        std::uint64_t a = 0, b = 0, key = 0, scale_a = 1, scale_b = 1, scale_k = 1;
        // Least significant coordinate last; peel from the back.
        for (std::uint32_t t = 0; t < ell; ++t) {
            const Superedge& e = lc.edge(rest % m);
            rest /= m;
            a += e.a * scale_a;
            b += e.b * scale_b;
            key += e.relation * scale_k;
            scale_a *= lc.a_count();
            scale_b *= lc.b_count();
            scale_k *= pool;
        }
        raw[idx] = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), key};
    }

    std::vector<std::uint64_t> keys(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) keys[i] = raw[i].key;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<Relation> relations(keys.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(keys.size()); ++r) {
        std::vector<std::uint32_t> parts(ell);
        std::uint64_t k = keys[r];
        for (std::uint32_t t = ell; t-- > 0;) {
            parts[t] = static_cast<std::uint32_t>(k % pool);
            k /= pool;
        }
        Relation prod{SymbolPair{0, 0}};
        for (std::uint32_t t = 0; t < ell; ++t) {
            const Relation& base = lc.relation_pool()[parts[t]];
            Relation next;
            next.reserve(prod.size() * base.size());
            for (const SymbolPair& p : prod)
                for (const SymbolPair& q : base)
                    next.push_back({p.alpha * lc.sigma_a() + q.alpha, p.beta * lc.sigma_b() + q.beta});
            prod = std::move(next);
        }
        relations[r] = std::move(prod);
    }

    std::vector<Superedge> edges(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto rel = std::lower_bound(keys.begin(), keys.end(), raw[i].key) - keys.begin();
        edges[i] = {raw[i].a, raw[i].b, static_cast<std::uint32_t>(rel)};
    }
    raw.clear();
    raw.shrink_to_fit();
    return LabelCoverInstance(static_cast<std::uint32_t>(a_count), static_cast<std::uint32_t>(b_count),
                              static_cast<std::uint32_t>(sigma_a), static_cast<std::uint32_t>(sigma_b),
                              std::move(edges), std::move(relations));
}

Labeling lift_labeling(const LabelCoverInstance& lc, const Labeling& lab, const LiftStage& stage)
{
    check_labeling(lc, lab);
    Labeling out;
    if (stage.kind == LiftStage::Kind::Duplicate) {
        for (std::uint32_t c = 0; c < stage.copies_a; ++c)
            out.gamma_a.insert(out.gamma_a.end(), lab.gamma_a.begin(), lab.gamma_a.end());
        for (std::uint32_t c = 0; c < stage.copies_b; ++c)
            out.gamma_b.insert(out.gamma_b.end(), lab.gamma_b.begin(), lab.gamma_b.end());
        return out;
    }
    if (stage.ell == 0) throw InputError("repetition count must be at least 1");
    const std::uint64_t id_limit = std::numeric_limits<std::uint32_t>::max() - 1;
    auto lift_side = [&](const std::vector<Symbol>& base, std::uint32_t sigma) {
        const std::uint64_t count = checked_pow(base.size(), stage.ell, id_limit, "lifted side");
        checked_pow(sigma, stage.ell, id_limit, "lifted alphabet");
        std::vector<Symbol> lifted(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t rest = idx, symbol = 0, scale = 1;
            for (std::uint32_t t = 0; t < stage.ell; ++t) {
                symbol += base[rest % base.size()] * scale;
                rest /= base.size();
                scale *= sigma;
            }
            lifted[idx] = static_cast<Symbol>(symbol);
        }
        return lifted;
    };
    out.gamma_a = lift_side(lab.gamma_a, lc.sigma_a());
    out.gamma_b = lift_side(lab.gamma_b, lc.sigma_b());
    return out;
}

PipelineTrace::Stage& PipelineTrace::record(std::string name, const LabelCoverInstance& lc, std::uint64_t seed)
{
    Stage s;
    s.name = std::move(name);
    s.seed = seed;
    s.a_count = lc.a_count();
    s.b_count = lc.b_count();
    s.sigma_a = lc.sigma_a();
    s.sigma_b = lc.sigma_b();
    s.superedges = lc.edge_count();
    stages.push_back(std::move(s));
    return stages.back();
}

}  // namespace lcspan
