#pragma once

#include "topolab/finite_group.hpp"
#include "topolab/rational.hpp"

#include <optional>

namespace topolab {
namespace finite {

// Finite group with an identity-neighborhood filter base of symmetric
// subsets. Construction enforces that every base set contains the identity
// and is inverse-closed; the square-shrinking and conjugation-shrinking
// axioms of a genuine group-topology base are evaluated separately, since
// the property report is meaningful for arbitrary symmetric bases.
struct FilteredGroup {
    FiniteGroup group;
    std::vector<Mask> base;

    FilteredGroup(FiniteGroup g, std::vector<Mask> b);

    /// Square- and conjugation-shrinking: for each B_i some B_j with
    /// B_j*B_j inside B_i, and for each B_i, g some B_j with g B_j g^-1
    /// inside B_i.
    bool topological_base_ok() const;

    json to_json() const;
    static FilteredGroup from_json(const json& j);
};

struct PropertyReport {
    bool hausdorff = false;
    bool tna = false;
    bool smog = false;
    bool ta = false;
    bool topological_base = false;
    std::vector<Mask> open_subgroups;

    json to_json() const;
};

/// Open subgroups are the subgroups containing some base set. Decides
/// Hausdorff / TNA / SMOG / TA and re-asserts the implication diagram
/// (hausdorff & TNA => SMOG; TA & SMOG => trivial) on the way out.
PropertyReport property_report(const FilteredGroup& fg);

struct EmbeddingReport {
    unsigned domain_order = 1;
    std::size_t codomain_degree = 0;
    bool homomorphism_ok = false;
    bool injective_ok = false;
    std::optional<unsigned> kernel_witness;
    json images;
    json extra;

    bool accepted() const { return homomorphism_ok && injective_ok; }
    json to_json() const;
};

/// Coset action on the disjoint union of G/H over base subgroups H:
/// g maps xH to (gx)H. Homomorphism checked on all pairs; injectivity by
/// kernel triviality, with a kernel element reported otherwise.
EmbeddingReport sym_embedding(const FilteredGroup& fg);

// Decreasing chain of subgroups starting at the whole group.
struct SubgroupChain {
    std::vector<Mask> subgroups;

    SubgroupChain(const FiniteGroup& g, std::vector<Mask> subs);
};

/// 2^(-max{n : x y^-1 in U_n}) for x != y, else 0. Right invariant and
/// non-Archimedean by construction; those properties are re-verified
/// exhaustively in tests.
Rational na_metric_from_chain(const FiniteGroup& g, const SubgroupChain& chain,
                              unsigned x, unsigned y);

struct ExtensionTrace {
    Mask u0 = 0, m = 0, v = 0, w = 0;
    Mask k_quotient = 0;          // subgroup of G/N, in coset indices
    Mask h = 0;                   // the produced open subgroup
    bool w_squared_in_wm = false;
    bool h_inside_u = false;

    json to_json() const;
};

/// Runs the subgroup construction of the TNA extension argument with
/// greedy-maximal choices at every step: U0 maximal symmetric with
/// U0^2 in U, M the largest subgroup inside N cap U0, V maximal symmetric
/// with V^3 cap N inside M, K the largest subgroup of G/N inside pi(V),
/// W = V cap pi^-1(K), H = <W>. Verifies W^2 in WM and H in U.
ExtensionTrace extension_open_subgroup(const FiniteGroup& g, Mask normal_n, Mask u);

struct Factorization {
    std::vector<unsigned> g_prime;
    std::vector<std::vector<unsigned>> h; // h_1..h_n as coordinate tuples
    bool recomposition_ok = false;
    bool letters_in_neighborhood_ok = false;

    json to_json() const;
};

/// Splits g into g' (identity on J) and a word h_1..h_n of neighborhood
/// elements with g' h_1 ... h_n = g. Words are the canonical repeated-power
/// expansion by the first generating element, with a breadth-first fallback;
/// shorter words are padded with the identity.
Factorization product_ta_factorization(const std::vector<FiniteGroup>& factors,
                                       const std::vector<std::size_t>& j_indices,
                                       const std::vector<std::vector<unsigned>>& u_sets,
                                       const std::vector<unsigned>& g);

} // namespace finite
} // namespace topolab
