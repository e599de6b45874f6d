#pragma once

#include "topolab/rational.hpp"

#include <json.hpp>
#include <cstdint>
#include <vector>

namespace topolab {
namespace finite {

using json = nlohmann::json;

/// Element subset of a group of order <= 64, one bit per element index.
using Mask = std::uint64_t;

std::vector<unsigned> mask_elements(Mask m);
Mask mask_from_elements(const std::vector<unsigned>& elems, unsigned order);

// Finite group by Cayley table. Element 0 is the identity. Group axioms are
// checked exhaustively at load up to order 64 and by sampling above.
class FiniteGroup {
public:
    static constexpr unsigned id = 0;

    static FiniteGroup from_mul_table(std::vector<std::vector<unsigned>> mul);
    static FiniteGroup trivial();
    static FiniteGroup cyclic(unsigned n);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    static FiniteGroup dihedral(unsigned n); // order 2n, n >= 1
    static FiniteGroup quaternion8();
    static FiniteGroup symmetric(unsigned n);   // n <= 5
    static FiniteGroup alternating(unsigned n); // n <= 5
    static FiniteGroup from_permutation_generators(unsigned degree,
                                                   const std::vector<std::vector<unsigned>>& gens);

    json to_json() const; // {"order": n, "mul": [[...]]}
    /// Accepts {"order","mul"} or {"degree","generators"} (expanded by closure).
    static FiniteGroup from_json(const json& j);

    unsigned order() const { return order_; }
    unsigned op(unsigned a, unsigned b) const { return mul_[a][b]; }
    unsigned inverse(unsigned a) const { return inv_[a]; }
    unsigned element_order(unsigned a) const;
    bool is_abelian() const;

    // ---- subset machinery (order <= 64 only) ----
    Mask full_mask() const;
    Mask mul_set(Mask a, Mask b) const;
    Mask inv_set(Mask a) const;
    Mask conjugate_set(unsigned g, Mask s) const;
    bool is_symmetric_set(Mask s) const; // closed under inverse
    Mask subgroup_closure(Mask s) const; // subgroup generated by s (id always included)
    bool is_subgroup(Mask s) const;
    bool is_normal(Mask s) const;

    /// Every subgroup, cached; ascending by (size, mask).
    const std::vector<Mask>& all_subgroups() const;
    std::vector<Mask> maximal_subgroups_of(Mask h) const;
    /// All maximal chains G = U_0 > U_1 > ... > {id}.
    std::vector<std::vector<Mask>> maximal_chains() const;

    struct Quotient;
    Quotient quotient(Mask normal_subgroup) const;

private:
    void finish_tables_and_validate();
    void require_mask_ops() const;

    unsigned order_ = 1;
    std::vector<std::vector<unsigned>> mul_{{0}};
    std::vector<unsigned> inv_{0};
    mutable std::vector<Mask> subgroups_cache_;
};

struct FiniteGroup::Quotient {
    FiniteGroup group;
    std::vector<unsigned> projection;  // element -> coset index
    std::vector<Mask> coset_masks;     // coset index -> element set
};

/// All symmetric subsets of `universe` that contain the identity, ordered by
/// descending size with ascending mask as the tie-break (the canonical
/// greedy-maximal search order). Universe size is capped at 17 elements.
std::vector<Mask> symmetric_subsets_desc(const FiniteGroup& g, Mask universe);

} // namespace finite
} // namespace topolab
