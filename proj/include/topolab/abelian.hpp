#pragma once

#include "topolab/finite_ops.hpp"
#include "topolab/rational.hpp"

#include <vector>

namespace topolab {
namespace abelian {

using finite::EmbeddingReport;
using finite::FiniteGroup;
using finite::Mask;
using json = nlohmann::json;

// One coordinate of a quasicyclic (Pruefer) p-group realized as rationals
// with p-power denominator modulo 1.
struct PruferCoordinate {
    unsigned long prime = 2;
    Rational value; // in [0,1), denominator a power of prime

    json to_json() const; // {"p": 2, "value": "1/4"}
};

/// Addition in Z(p^infty): (a + b) mod 1, staying on p-power denominators.
Rational prufer_add(const Rational& a, const Rational& b);

/// Order of v in Z(p^infty): its (p-power) denominator.
mpz_class prufer_order(const Rational& v);

struct CyclicDecomposition {
    std::vector<unsigned long> orders; // each >= 2
};

/// Prime-power split of one cyclic order n = prod p^e: the generator maps to
/// coordinates (p, 1/p^e).
std::vector<PruferCoordinate> generator_image(unsigned long order);

struct PruferEmbedding {
    CyclicDecomposition decomposition;
    std::vector<std::vector<PruferCoordinate>> generator_images;
    EmbeddingReport report;
};

/// Embeds the direct sum of cyclic groups into a finite sum of quasicyclic
/// groups, one coordinate block per generator. Injectivity (kernel scan),
/// per-element order preservation and generator-step additivity are checked
/// exhaustively when the group order is at most exhaustive_limit, sampled
/// otherwise.
PruferEmbedding prufer_embedding(const CyclicDecomposition& dec,
                                 unsigned long exhaustive_limit = 10'000);

/// Invariant-factor orders of an abelian Cayley table (order <= 256), by
/// repeatedly splitting off an element of maximal order and recursing on the
/// quotient.
std::vector<unsigned long> orders_from_abelian_cayley(const FiniteGroup& g);

/// Diagonal map a -> (a mod B) over the base subgroups: verified homomorphism
/// into the product of quotients, kernel = intersection of the base.
EmbeddingReport quotient_product_embedding(const FiniteGroup& g,
                                           const std::vector<Mask>& base);

} // namespace abelian
} // namespace topolab
