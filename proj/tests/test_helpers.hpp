#pragma once

#include "topolab/abelian.hpp"
#include "topolab/finite_ops.hpp"
#include "topolab/rng.hpp"
#include "topolab/sequences.hpp"
#include "topolab/spaces.hpp"
#include "topolab/subsum.hpp"
#include "topolab/witnesses.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tt {

using namespace topolab;

inline Rational random_rational(SplitMix64& rng, long num_range = 20, unsigned long den_max = 12) {
    long n = rng.range(-num_range, num_range);
    long d = 1 + static_cast<long>(rng.below(den_max));
    return Rational(n, d);
}

inline Rational random_nonzero_rational(SplitMix64& rng, long num_range = 20,
                                        unsigned long den_max = 12) {
    while (true) {
        Rational r = random_rational(rng, num_range, den_max);
        if (!r.is_zero()) return r;
    }
}

/// Random element of the factorial lattice (hence of Gamma0 and Gamma1):
/// values k/(n+1)! on a small support.
inline FinSeq random_lattice_elem(SplitMix64& rng, std::size_t max_index = 8, long k_range = 6,
                                  std::size_t max_support = 4) {
    FinSeq s;
    std::size_t count = rng.below(max_support + 1);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t n = rng.below(max_index);
        long k = rng.range(-k_range, k_range);
        if (k != 0) s.set(n, Rational(mpz_class(k), factorial(n + 1)));
    }
    return s;
}

inline FinSeq random_nonzero_lattice_elem(SplitMix64& rng, std::size_t max_index = 8,
                                          long k_range = 6, std::size_t max_support = 4) {
    while (true) {
        FinSeq s = random_lattice_elem(rng, max_index, k_range, max_support);
        if (!s.is_zero()) return s;
    }
}

/// Random integer vector with zero coordinate sum (an S-lattice element).
inline FinSeq random_s_elem(SplitMix64& rng, std::size_t max_index = 8, long k_range = 3) {
    FinSeq s;
    long total = 0;
    std::size_t count = rng.below(4);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t n = rng.below(max_index);
        long k = rng.range(-k_range, k_range);
        total += k;
        s.set(n, s.get(n) + Rational(k));
    }
    s.set(max_index, s.get(max_index) - Rational(total));
    return s;
}

using NamedGroup = std::pair<std::string, finite::FiniteGroup>;

inline std::vector<NamedGroup> group_corpus_16() {
    using finite::FiniteGroup;
    std::vector<NamedGroup> out;
    for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u, 16u})
        out.emplace_back("Z" + std::to_string(n), FiniteGroup::cyclic(n));
    out.emplace_back("Z2xZ2", FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    out.emplace_back("Z2xZ4", FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
    out.emplace_back("Z2xZ2xZ2",
                     FiniteGroup::direct_product(
                         FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                         FiniteGroup::cyclic(2)));
    out.emplace_back("Z4xZ4", FiniteGroup::direct_product(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4)));
    out.emplace_back("Z2^4",
                     FiniteGroup::direct_product(
                         FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                         FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))));
    out.emplace_back("S3", FiniteGroup::symmetric(3));
    out.emplace_back("D4", FiniteGroup::dihedral(4));
    out.emplace_back("Q8", FiniteGroup::quaternion8());
    out.emplace_back("D5", FiniteGroup::dihedral(5));
    out.emplace_back("A4", FiniteGroup::alternating(4));
    out.emplace_back("D6", FiniteGroup::dihedral(6));
    out.emplace_back("D8", FiniteGroup::dihedral(8));
    return out;
}

inline std::vector<NamedGroup> group_corpus_24() {
    using finite::FiniteGroup;
    auto out = group_corpus_16();
    out.emplace_back("Z18", FiniteGroup::cyclic(18));
    out.emplace_back("Z24", FiniteGroup::cyclic(24));
    out.emplace_back("D9", FiniteGroup::dihedral(9));
    out.emplace_back("D12", FiniteGroup::dihedral(12));
    out.emplace_back("S4", FiniteGroup::symmetric(4));
    out.emplace_back("Z2xA4",
                     FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::alternating(4)));
    return out;
}

/// Random symmetric subset containing the identity.
inline finite::Mask random_symmetric_set(SplitMix64& rng, const finite::FiniteGroup& g) {
    finite::Mask m = finite::Mask(1) << finite::FiniteGroup::id;
    for (unsigned e = 1; e < g.order(); ++e)
        if (rng.below(2)) m |= finite::Mask(1) << e;
    return m | g.inv_set(m);
}

} // namespace tt
