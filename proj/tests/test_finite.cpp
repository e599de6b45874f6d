#include "test_helpers.hpp"

#include <doctest.h>

#include <bit>

using namespace topolab;
using namespace topolab::finite;

namespace {

Mask mask_of(std::initializer_list<unsigned> elems) {
    Mask m = 0;
    for (unsigned e : elems) m |= Mask(1) << e;
    return m;
}

} // namespace

TEST_CASE("group constructors satisfy the axioms") {
    for (const auto& [name, g] : tt::group_corpus_24()) {
        CAPTURE(name);
        CHECK(g.op(FiniteGroup::id, 1 % g.order()) == 1 % g.order());
        for (unsigned a = 0; a < g.order(); ++a) {
            CHECK(g.op(a, g.inverse(a)) == FiniteGroup::id);
            CHECK(g.element_order(a) >= 1);
        }
    }
    CHECK(FiniteGroup::symmetric(4).order() == 24);
    CHECK(FiniteGroup::alternating(4).order() == 12);
    CHECK(FiniteGroup::quaternion8().order() == 8);
    CHECK(!FiniteGroup::quaternion8().is_abelian());
    CHECK(FiniteGroup::quaternion8().element_order(1) == 2); // -1
    CHECK(FiniteGroup::quaternion8().element_order(2) == 4); // i
}

TEST_CASE("bad tables are rejected") {
    CHECK_THROWS_AS(FiniteGroup::from_mul_table({{0, 1}, {1, 1}}), precondition_error);
    CHECK_THROWS_AS(FiniteGroup::from_mul_table({{1, 0}, {0, 1}}), precondition_error);
    // Z/4 table with one associativity-breaking entry
    auto z4 = FiniteGroup::cyclic(4).to_json();
    z4["mul"][1][1] = 3;
    CHECK_THROWS_AS(FiniteGroup::from_json(z4), precondition_error);
}

TEST_CASE("permutation generators expand by closure") {
    // S4 from a transposition and a 4-cycle
    auto s4 = FiniteGroup::from_permutation_generators(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    CHECK(s4.order() == 24);
    CHECK(!s4.is_abelian());
    auto round = FiniteGroup::from_json(
        nlohmann::json{{"degree", 4}, {"generators", {{1, 0, 2, 3}, {1, 2, 3, 0}}}});
    CHECK(round.order() == 24);
}

TEST_CASE("subgroup enumeration") {
    auto z4 = FiniteGroup::cyclic(4);
    CHECK(z4.all_subgroups().size() == 3);
    auto s3 = FiniteGroup::symmetric(3);
    CHECK(s3.all_subgroups().size() == 6); // 1, three Z2, Z3, S3
    auto s4 = FiniteGroup::symmetric(4);
    CHECK(s4.all_subgroups().size() == 30);
    auto q8 = FiniteGroup::quaternion8();
    for (Mask s : q8.all_subgroups()) CHECK(q8.is_normal(s)); // every Q8 subgroup is normal
}

TEST_CASE("maximal chains") {
    auto z16 = FiniteGroup::cyclic(16);
    auto chains16 = z16.maximal_chains();
    CHECK(chains16.size() == 1);
    CHECK(chains16[0].size() == 5);
    auto z2z2 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(z2z2.maximal_chains().size() == 3);
    for (const auto& chain : FiniteGroup::symmetric(3).maximal_chains()) {
        CHECK(chain.front() == FiniteGroup::symmetric(3).full_mask());
        CHECK(chain.back() == Mask(1));
    }
}

TEST_CASE("property report spec examples") {
    auto z4 = FiniteGroup::cyclic(4);

    auto rep1 = property_report(FilteredGroup(z4, {mask_of({0, 2}), mask_of({0})}));
    CHECK(rep1.tna);
    CHECK(rep1.smog);
    CHECK(!rep1.ta);
    CHECK(rep1.hausdorff);

    auto rep2 = property_report(FilteredGroup(z4, {mask_of({0, 1, 3})}));
    CHECK(!rep2.tna);
    CHECK(!rep2.smog);
    CHECK(rep2.ta);
    CHECK(!rep2.hausdorff);
    CHECK(!rep2.topological_base);
    CHECK(rep2.open_subgroups == std::vector<Mask>{z4.full_mask()});

    auto trivial = FiniteGroup::trivial();
    auto rep3 = property_report(FilteredGroup(trivial, {mask_of({0})}));
    CHECK(rep3.tna);
    CHECK(rep3.smog);
    CHECK(rep3.ta);
    CHECK(rep3.hausdorff);

    CHECK_THROWS_AS(FilteredGroup(z4, {mask_of({0, 1})}), precondition_error); // not symmetric
    CHECK_THROWS_AS(FilteredGroup(z4, {mask_of({1, 3})}), precondition_error); // no identity
}

TEST_CASE("property report fuzzing keeps the implication diagram") {
    SplitMix64 rng(59);
    auto corpus = tt::group_corpus_24();
    for (int t = 0; t < 300; ++t) {
        const auto& [name, g] = corpus[rng.below(corpus.size())];
        CAPTURE(name);
        std::vector<Mask> base;
        std::size_t sets = 1 + rng.below(3);
        for (std::size_t i = 0; i < sets; ++i) {
            if (rng.below(2)) {
                const auto& subs = g.all_subgroups();
                base.push_back(subs[rng.below(subs.size())]);
            } else {
                base.push_back(tt::random_symmetric_set(rng, g));
            }
        }
        // property_report throws if an implication ever failed
        auto rep = property_report(FilteredGroup(g, base));
        if (rep.ta) CHECK(rep.open_subgroups.size() == 1);
    }
}

TEST_CASE("sym embedding spec examples") {
    auto s3 = FiniteGroup::symmetric(3);
    Mask a3 = 0;
    for (Mask s : s3.all_subgroups())
        if (std::popcount(s) == 3) a3 = s;
    auto rep = sym_embedding(FilteredGroup(s3, {a3, mask_of({0})}));
    CHECK(rep.codomain_degree == 8); // 2 cosets of A3 plus 6 of the trivial subgroup
    CHECK(rep.homomorphism_ok);
    CHECK(rep.injective_ok);

    auto z4 = FiniteGroup::cyclic(4);
    auto rep2 = sym_embedding(FilteredGroup(z4, {mask_of({0, 2})}));
    CHECK(rep2.codomain_degree == 2);
    CHECK(rep2.homomorphism_ok);
    CHECK(!rep2.injective_ok);
    CHECK(rep2.kernel_witness == 2u);

    auto rep3 = sym_embedding(FilteredGroup(FiniteGroup::trivial(), {mask_of({0})}));
    CHECK(rep3.codomain_degree == 1);
    CHECK(rep3.injective_ok);

    CHECK_THROWS_AS(sym_embedding(FilteredGroup(z4, {mask_of({0, 1, 3})})), precondition_error);
}

TEST_CASE("sym embedding is faithful with the regular part") {
    SplitMix64 rng(61);
    for (const auto& [name, g] : tt::group_corpus_16()) {
        CAPTURE(name);
        std::vector<Mask> base = g.all_subgroups();
        auto rep = sym_embedding(FilteredGroup(g, base));
        CHECK(rep.homomorphism_ok);
        CHECK(rep.injective_ok); // {id} is among the subgroups
    }
}

TEST_CASE("chain metric spec examples") {
    auto z4 = FiniteGroup::cyclic(4);
    SubgroupChain chain(z4, {z4.full_mask(), mask_of({0, 2}), mask_of({0})});
    CHECK(na_metric_from_chain(z4, chain, 2, 2) == Rational(0));
    CHECK(na_metric_from_chain(z4, chain, 2, 0) == Rational(1, 2));
    CHECK(na_metric_from_chain(z4, chain, 1, 0) == Rational(1));

    CHECK_THROWS_AS(SubgroupChain(z4, {mask_of({0, 2})}), precondition_error);
    CHECK_THROWS_AS(SubgroupChain(z4, {z4.full_mask(), mask_of({0, 1})}), precondition_error);
}

TEST_CASE("chain metric strong triangle inequality exhaustively") {
    for (const auto& [name, g] : tt::group_corpus_16()) {
        CAPTURE(name);
        for (const auto& chain_masks : g.maximal_chains()) {
            SubgroupChain chain(g, chain_masks);
            unsigned n = g.order();
            std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
            for (unsigned x = 0; x < n; ++x)
                for (unsigned y = 0; y < n; ++y) d[x][y] = na_metric_from_chain(g, chain, x, y);
            bool meet_trivial = chain_masks.back() == Mask(1);
            for (unsigned x = 0; x < n; ++x)
                for (unsigned y = 0; y < n; ++y) {
                    if (meet_trivial) CHECK((d[x][y] == Rational(0)) == (x == y));
                    for (unsigned z = 0; z < n; ++z) {
                        CHECK(d[x][y] <= std::max(d[x][z], d[z][y]));
                        CHECK(d[g.op(x, z)][g.op(y, z)] == d[x][y]);
                    }
                }
        }
    }
}

TEST_CASE("extension spec examples") {
    auto z2z2 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    Mask n = mask_of({0, 2}); // the subgroup generated by (1,0)

    auto tr = extension_open_subgroup(z2z2, n, n);
    CHECK(tr.u0 == n);
    CHECK(tr.m == n);
    CHECK(tr.v == n);
    CHECK(tr.k_quotient == Mask(1));
    CHECK(tr.w == n);
    CHECK(tr.h == n);
    CHECK(tr.w_squared_in_wm);
    CHECK(tr.h_inside_u);

    auto tr_full = extension_open_subgroup(z2z2, n, z2z2.full_mask());
    CHECK(tr_full.h == z2z2.full_mask());

    auto tr_id = extension_open_subgroup(z2z2, n, mask_of({0}));
    CHECK(tr_id.h == mask_of({0}));
}

TEST_CASE("extension on random triples") {
    SplitMix64 rng(67);
    auto corpus = tt::group_corpus_16();
    for (int t = 0; t < 60; ++t) {
        const auto& [name, g] = corpus[rng.below(corpus.size())];
        CAPTURE(name);
        std::vector<Mask> normals;
        for (Mask s : g.all_subgroups())
            if (g.is_normal(s)) normals.push_back(s);
        Mask n = normals[rng.below(normals.size())];
        Mask u = tt::random_symmetric_set(rng, g);
        auto tr = extension_open_subgroup(g, n, u);
        CHECK(g.is_subgroup(tr.h));
        CHECK((tr.h & ~u) == 0);
        CHECK(tr.w_squared_in_wm);
    }
}

TEST_CASE("factorization spec examples") {
    std::vector<FiniteGroup> factors{FiniteGroup::cyclic(5), FiniteGroup::cyclic(7)};
    std::vector<std::vector<unsigned>> u{{4, 0, 1}, {6, 0, 1}};

    auto fac = product_ta_factorization(factors, {0, 1}, u, {3, 2});
    CHECK(fac.g_prime == std::vector<unsigned>{0, 0});
    CHECK(fac.h == std::vector<std::vector<unsigned>>{{1, 1}, {1, 1}, {1, 0}});
    CHECK(fac.recomposition_ok);
    CHECK(fac.letters_in_neighborhood_ok);

    auto fac_id = product_ta_factorization(factors, {0, 1}, u, {0, 0});
    CHECK(fac_id.h.empty());
    CHECK(fac_id.g_prime == std::vector<unsigned>{0, 0});
    CHECK(fac_id.recomposition_ok);

    auto fac_nowhere = product_ta_factorization(factors, {}, {}, {3, 2});
    CHECK(fac_nowhere.h.empty());
    CHECK(fac_nowhere.g_prime == std::vector<unsigned>{3, 2});
    CHECK(fac_nowhere.recomposition_ok);

    // {0, 2} is symmetric in Z/4 but generates only {0, 2}
    std::vector<FiniteGroup> z4{FiniteGroup::cyclic(4)};
    CHECK_THROWS_AS(product_ta_factorization(z4, {0}, {{0, 2}}, {1}), precondition_error);
}

TEST_CASE("factorization recomposes random elements") {
    SplitMix64 rng(71);
    std::vector<FiniteGroup> factors{FiniteGroup::cyclic(4), FiniteGroup::cyclic(6)};
    std::vector<std::vector<unsigned>> u{{3, 0, 1}, {5, 0, 1}};
    for (int t = 0; t < 100; ++t) {
        std::vector<unsigned> g{static_cast<unsigned>(rng.below(4)),
                                static_cast<unsigned>(rng.below(6))};
        auto fac = product_ta_factorization(factors, {0, 1}, u, g);
        CHECK(fac.recomposition_ok);
        CHECK(fac.letters_in_neighborhood_ok);
    }
}

TEST_CASE("subgroup chains are TNA bases and their metric balls are the subgroups") {
    for (const auto& [name, g] : tt::group_corpus_16()) {
        CAPTURE(name);
        auto chains = g.maximal_chains();
        if (chains.empty()) continue;
        const auto& masks = chains.front();
        auto rep = property_report(FilteredGroup(g, masks));
        CHECK(rep.tna); // a base of subgroups always admits open subgroups inside
        CHECK(rep.hausdorff);
        CHECK(rep.smog);
        // the chain metric's closed ball of radius 2^-n around the identity
        // is exactly the subgroup U_n
        SubgroupChain chain(g, masks);
        for (std::size_t n = 0; n < masks.size(); ++n) {
            Mask ball = 0;
            for (unsigned x = 0; x < g.order(); ++x)
                if (na_metric_from_chain(g, chain, x, FiniteGroup::id) <=
                    Rational::dyadic_inverse_power(static_cast<unsigned long>(n)))
                    ball |= Mask(1) << x;
            CHECK(ball == masks[n]);
        }
    }
}

TEST_CASE("quotient groups") {
    auto z4 = FiniteGroup::cyclic(4);
    auto q = z4.quotient(mask_of({0, 2}));
    CHECK(q.group.order() == 2);
    CHECK(q.projection[0] == 0);
    CHECK(q.projection[2] == 0);
    CHECK(q.projection[1] == q.projection[3]);
    CHECK_THROWS_AS(FiniteGroup::symmetric(3).quotient(mask_of({0, 1})), precondition_error);
}
