#include "topolab/finite_ops.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace topolab {
namespace finite {

namespace {

json mask_to_json(Mask m) {
    json a = json::array();
    for (unsigned e : mask_elements(m)) a.push_back(e);
    return a;
}

Mask mask_from_json(const json& j, unsigned order) {
    return mask_from_elements(j.get<std::vector<unsigned>>(), order);
}

} // namespace

// ------------------------------------------------------------ FilteredGroup

FilteredGroup::FilteredGroup(FiniteGroup g, std::vector<Mask> b)
    : group(std::move(g)), base(std::move(b)) {
    if (base.empty())
        throw precondition_error("filtered group: base must be nonempty");
    Mask idbit = Mask(1) << FiniteGroup::id;
    Mask full = group.full_mask();
    for (Mask s : base) {
        if (s & ~full)
            throw precondition_error("filtered group: base set out of range");
        if (!(s & idbit))
            throw precondition_error("filtered group: base set must contain the identity");
        if (!group.is_symmetric_set(s))
            throw precondition_error("filtered group: base set must be symmetric");
    }
}

bool FilteredGroup::topological_base_ok() const {
    for (Mask bi : base) {
        bool square = false;
        for (Mask bj : base)
            if ((group.mul_set(bj, bj) & ~bi) == 0) {
                square = true;
                break;
            }
        if (!square) return false;
        for (unsigned g = 0; g < group.order(); ++g) {
            bool conj = false;
            for (Mask bj : base)
                if ((group.conjugate_set(g, bj) & ~bi) == 0) {
                    conj = true;
                    break;
                }
            if (!conj) return false;
        }
    }
    return true;
}

json FilteredGroup::to_json() const {
    json b = json::array();
    for (Mask s : base) b.push_back(mask_to_json(s));
    return json{{"group", group.to_json()}, {"base", b}};
}

FilteredGroup FilteredGroup::from_json(const json& j) {
    FiniteGroup g = FiniteGroup::from_json(j.at("group"));
    std::vector<Mask> base;
    for (const auto& s : j.at("base")) base.push_back(mask_from_json(s, g.order()));
    return FilteredGroup(std::move(g), std::move(base));
}

// ---------------------------------------------------------- property_report

json PropertyReport::to_json() const {
    json subs = json::array();
    for (Mask s : open_subgroups) subs.push_back(mask_to_json(s));
    return json{{"hausdorff", hausdorff}, {"tna", tna},   {"smog", smog},
                {"ta", ta},               {"topologicalBase", topological_base},
                {"openSubgroups", subs}};
}

PropertyReport property_report(const FilteredGroup& fg) {
    const FiniteGroup& g = fg.group;
    PropertyReport rep;
    rep.topological_base = fg.topological_base_ok();

    for (Mask h : g.all_subgroups()) {
        for (Mask b : fg.base)
            if ((b & ~h) == 0) { // base set inside h: h has interior
                rep.open_subgroups.push_back(h);
                break;
            }
    }

    Mask idbit = Mask(1) << FiniteGroup::id;

    Mask base_meet = g.full_mask();
    for (Mask b : fg.base) base_meet &= b;
    rep.hausdorff = base_meet == idbit;

    rep.tna = true;
    for (Mask b : fg.base) {
        bool has_open_subgroup_inside = false;
        for (Mask h : rep.open_subgroups)
            if ((h & ~b) == 0) {
                has_open_subgroup_inside = true;
                break;
            }
        if (!has_open_subgroup_inside) {
            rep.tna = false;
            break;
        }
    }

    Mask open_meet = g.full_mask();
    for (Mask h : rep.open_subgroups) open_meet &= h;
    rep.smog = open_meet == idbit;

    rep.ta = rep.open_subgroups.size() == 1 && rep.open_subgroups[0] == g.full_mask();

    if (rep.hausdorff && rep.tna && !rep.smog)
        throw verification_error("property report: hausdorff & TNA without SMOG");
    if (rep.ta && rep.smog && g.order() != 1)
        throw verification_error("property report: TA & SMOG on a nontrivial group");
    return rep;
}

// ------------------------------------------------------------ sym_embedding

json EmbeddingReport::to_json() const {
    json j{{"domainOrder", domain_order},
           {"codomainDegree", codomain_degree},
           {"homomorphismOk", homomorphism_ok},
           {"injectiveOk", injective_ok},
           {"images", images}};
    j["kernelWitness"] = kernel_witness ? json(*kernel_witness) : json(nullptr);
    if (!extra.is_null()) j["detail"] = extra;
    return j;
}

EmbeddingReport sym_embedding(const FilteredGroup& fg) {
    const FiniteGroup& g = fg.group;
    for (Mask b : fg.base)
        if (!g.is_subgroup(b))
            throw precondition_error("sym_embedding: base must consist of subgroups");

    // Points of the action: left cosets xH for every base subgroup H.
    struct Point { std::size_t base_index; Mask coset; unsigned rep; };
    std::vector<Point> points;
    std::vector<std::vector<std::size_t>> point_of; // [base][element] -> point
    for (std::size_t bi = 0; bi < fg.base.size(); ++bi) {
        std::vector<std::size_t> lookup(g.order(), SIZE_MAX);
        for (unsigned x = 0; x < g.order(); ++x) {
            if (lookup[x] != SIZE_MAX) continue;
            Mask coset = g.mul_set(Mask(1) << x, fg.base[bi]);
            std::size_t idx = points.size();
            for (unsigned e : mask_elements(coset)) lookup[e] = idx;
            points.push_back(Point{bi, coset, x});
        }
        point_of.push_back(std::move(lookup));
    }

    std::vector<std::vector<std::size_t>> images(g.order(), std::vector<std::size_t>(points.size()));
    for (unsigned e = 0; e < g.order(); ++e)
        for (std::size_t p = 0; p < points.size(); ++p) {
            const Point& pt = points[p];
            images[e][p] = point_of[pt.base_index][g.op(e, pt.rep)];
        }

    bool hom_ok = true;
    for (unsigned a = 0; a < g.order() && hom_ok; ++a)
        for (unsigned b = 0; b < g.order() && hom_ok; ++b) {
            unsigned ab = g.op(a, b);
            for (std::size_t p = 0; p < points.size(); ++p)
                if (images[ab][p] != images[a][images[b][p]]) {
                    hom_ok = false;
                    break;
                }
        }

    std::optional<unsigned> kernel_witness;
    for (unsigned e = 1; e < g.order() && !kernel_witness; ++e) {
        bool trivial_action = true;
        for (std::size_t p = 0; p < points.size(); ++p)
            if (images[e][p] != p) {
                trivial_action = false;
                break;
            }
        if (trivial_action) kernel_witness = e;
    }

    EmbeddingReport rep;
    rep.domain_order = g.order();
    rep.codomain_degree = points.size();
    rep.homomorphism_ok = hom_ok;
    rep.injective_ok = !kernel_witness.has_value();
    rep.kernel_witness = kernel_witness;
    rep.images = json(images);
    json pts = json::array();
    for (const auto& p : points)
        pts.push_back(json{{"subgroup", p.base_index}, {"rep", p.rep}});
    rep.extra = json{{"points", pts}};
    return rep;
}

// ------------------------------------------------------- na_metric_from_chain

SubgroupChain::SubgroupChain(const FiniteGroup& g, std::vector<Mask> subs)
    : subgroups(std::move(subs)) {
    if (subgroups.empty() || subgroups.front() != g.full_mask())
        throw precondition_error("subgroup chain: must start at the whole group");
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        if (!g.is_subgroup(subgroups[i]))
            throw precondition_error("subgroup chain: entry is not a subgroup");
        if (i > 0 && (subgroups[i] & ~subgroups[i - 1]))
            throw precondition_error("subgroup chain: entries must be decreasing");
    }
}

Rational na_metric_from_chain(const FiniteGroup& g, const SubgroupChain& chain,
                              unsigned x, unsigned y) {
    if (x >= g.order() || y >= g.order())
        throw precondition_error("na_metric: element out of range");
    if (x == y) return Rational(0);
    unsigned diff = g.op(x, g.inverse(y));
    std::size_t deepest = 0;
    for (std::size_t n = 0; n < chain.subgroups.size(); ++n)
        if (chain.subgroups[n] & (Mask(1) << diff)) deepest = n;
    return Rational::dyadic_inverse_power(static_cast<unsigned long>(deepest));
}

// ----------------------------------------------------- extension_open_subgroup

json ExtensionTrace::to_json() const {
    return json{{"U0", mask_to_json(u0)},
                {"M", mask_to_json(m)},
                {"V", mask_to_json(v)},
                {"K", mask_to_json(k_quotient)},
                {"W", mask_to_json(w)},
                {"H", mask_to_json(h)},
                {"wSquaredInWM", w_squared_in_wm},
                {"hInsideU", h_inside_u}};
}

ExtensionTrace extension_open_subgroup(const FiniteGroup& g, Mask normal_n, Mask u) {
    Mask idbit = Mask(1) << FiniteGroup::id;
    if (!g.is_normal(normal_n))
        throw precondition_error("extension: N must be a normal subgroup");
    if (!(u & idbit) || !g.is_symmetric_set(u))
        throw precondition_error("extension: U must be symmetric and contain the identity");

    ExtensionTrace tr;

    // largest symmetric U0 with U0^2 inside U; {id} always qualifies
    for (Mask cand : symmetric_subsets_desc(g, u))
        if ((g.mul_set(cand, cand) & ~u) == 0) {
            tr.u0 = cand;
            break;
        }

    // largest subgroup of N inside N cap U0
    Mask nu0 = normal_n & tr.u0;
    int best = -1;
    for (Mask s : g.all_subgroups())
        if ((s & ~nu0) == 0) {
            int size = std::popcount(s);
            if (size > best) {
                best = size;
                tr.m = s;
            }
        }

    // largest symmetric V inside U0 with V^3 cap N inside M
    for (Mask cand : symmetric_subsets_desc(g, tr.u0)) {
        Mask v3 = g.mul_set(g.mul_set(cand, cand), cand);
        if (((v3 & normal_n) & ~tr.m) == 0) {
            tr.v = cand;
            break;
        }
    }

    // largest subgroup of G/N inside pi(V)
    auto q = g.quotient(normal_n);
    Mask pi_v = 0;
    for (unsigned e : mask_elements(tr.v)) pi_v |= Mask(1) << q.projection[e];
    best = -1;
    for (Mask s : q.group.all_subgroups())
        if ((s & ~pi_v) == 0) {
            int size = std::popcount(s);
            if (size > best) {
                best = size;
                tr.k_quotient = s;
            }
        }

    // W = V cap pi^-1(K)
    tr.w = 0;
    for (unsigned e : mask_elements(tr.v))
        if (tr.k_quotient & (Mask(1) << q.projection[e])) tr.w |= Mask(1) << e;

    Mask wm = g.mul_set(tr.w, tr.m);
    tr.w_squared_in_wm = (g.mul_set(tr.w, tr.w) & ~wm) == 0;

    tr.h = g.subgroup_closure(tr.w);
    tr.h_inside_u = (tr.h & ~u) == 0;

    if (!tr.w_squared_in_wm)
        throw verification_error("extension: W^2 not inside WM");
    if (!tr.h_inside_u)
        throw verification_error("extension: generated subgroup escaped U");
    return tr;
}

// -------------------------------------------------- product_ta_factorization

namespace {

std::vector<unsigned> sorted_non_identity(const std::vector<unsigned>& u) {
    std::vector<unsigned> out;
    for (unsigned e : u)
        if (e != FiniteGroup::id) out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Word in the letters of u multiplying to target. Prefers k copies of the
// first letter whose cyclic subgroup reaches the target; otherwise the
// breadth-first shortest word with letters tried in ascending order.
std::vector<unsigned> factor_word(const FiniteGroup& f, const std::vector<unsigned>& u,
                                  unsigned target) {
    if (target == FiniteGroup::id) return {};
    auto letters = sorted_non_identity(u);
    for (unsigned cand : letters) {
        unsigned cur = cand, k = 1;
        while (cur != target && cur != FiniteGroup::id) {
            cur = f.op(cur, cand);
            ++k;
        }
        if (cur == target) return std::vector<unsigned>(k, cand);
    }
    std::vector<int> parent_letter(f.order(), -1);
    std::vector<unsigned> parent(f.order(), 0);
    std::deque<unsigned> queue{FiniteGroup::id};
    std::vector<bool> seen(f.order(), false);
    seen[FiniteGroup::id] = true;
    while (!queue.empty()) {
        unsigned cur = queue.front();
        queue.pop_front();
        if (cur == target) break;
        for (unsigned letter : letters) {
            unsigned next = f.op(cur, letter);
            if (!seen[next]) {
                seen[next] = true;
                parent[next] = cur;
                parent_letter[next] = static_cast<int>(letter);
                queue.push_back(next);
            }
        }
    }
    if (!seen[target])
        throw precondition_error("factorization: neighborhood does not generate the factor");
    std::vector<unsigned> word;
    for (unsigned cur = target; cur != FiniteGroup::id; cur = parent[cur])
        word.push_back(static_cast<unsigned>(parent_letter[cur]));
    std::reverse(word.begin(), word.end());
    return word;
}

} // namespace

json Factorization::to_json() const {
    return json{{"gPrime", g_prime},
                {"h", h},
                {"wordLength", h.size()},
                {"recompositionOk", recomposition_ok},
                {"lettersInNeighborhoodOk", letters_in_neighborhood_ok}};
}

Factorization product_ta_factorization(const std::vector<FiniteGroup>& factors,
                                       const std::vector<std::size_t>& j_indices,
                                       const std::vector<std::vector<unsigned>>& u_sets,
                                       const std::vector<unsigned>& g) {
    if (g.size() != factors.size())
        throw precondition_error("factorization: element arity mismatch");
    if (u_sets.size() != j_indices.size())
        throw precondition_error("factorization: one U set per J index required");
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (g[i] >= factors[i].order())
            throw precondition_error("factorization: coordinate out of range");

    std::vector<const std::vector<unsigned>*> u_of(factors.size(), nullptr);
    for (std::size_t k = 0; k < j_indices.size(); ++k) {
        std::size_t i = j_indices[k];
        if (i >= factors.size())
            throw precondition_error("factorization: J index out of range");
        const FiniteGroup& f = factors[i];
        const auto& u = u_sets[k];
        bool has_id = false;
        Mask umask = 0;
        for (unsigned e : u) {
            if (e >= f.order())
                throw precondition_error("factorization: U element out of range");
            has_id |= e == FiniteGroup::id;
            umask |= Mask(1) << e;
        }
        if (!has_id)
            throw precondition_error("factorization: U must contain the identity");
        if (!f.is_symmetric_set(umask))
            throw precondition_error("factorization: U must be symmetric");
        if (f.subgroup_closure(umask) != f.full_mask())
            throw precondition_error("factorization: U fails to generate its factor");
        u_of[i] = &u;
    }

    Factorization out;
    out.g_prime = g;
    std::vector<std::vector<unsigned>> words(factors.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!u_of[i]) continue;
        out.g_prime[i] = FiniteGroup::id;
        words[i] = factor_word(factors[i], *u_of[i], g[i]);
        n = std::max(n, words[i].size());
    }

    out.h.assign(n, std::vector<unsigned>(factors.size(), FiniteGroup::id));
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!u_of[i]) continue;
        for (std::size_t k = 0; k < words[i].size(); ++k) out.h[k][i] = words[i][k];
    }

    std::vector<unsigned> acc = out.g_prime;
    bool letters_ok = true;
    for (const auto& hk : out.h)
        for (std::size_t i = 0; i < factors.size(); ++i) {
            acc[i] = factors[i].op(acc[i], hk[i]);
            if (u_of[i] && std::find(u_of[i]->begin(), u_of[i]->end(), hk[i]) == u_of[i]->end())
                letters_ok = false;
        }
    out.recomposition_ok = acc == g;
    out.letters_in_neighborhood_ok = letters_ok;
    return out;
}

} // namespace finite
} // namespace topolab
