#include "topolab/abelian.hpp"
#include "topolab/rng.hpp"

#include <algorithm>
#include <numeric>

namespace topolab {
namespace abelian {

json PruferCoordinate::to_json() const {
    return json{{"p", prime}, {"value", value.to_string()}};
}

Rational prufer_add(const Rational& a, const Rational& b) {
    Rational s = a + b;
    return s - Rational(s.floor());
}

mpz_class prufer_order(const Rational& v) { return v.den(); }

namespace {

std::vector<std::pair<unsigned long, unsigned long>> factorize(unsigned long n) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (unsigned long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

unsigned long pow_ul(unsigned long p, unsigned long e) {
    unsigned long r = 1;
    while (e--) r *= p;
    return r;
}

} // namespace

std::vector<PruferCoordinate> generator_image(unsigned long order) {
    if (order < 2)
        throw precondition_error("prufer embedding: cyclic orders must be at least 2");
    std::vector<PruferCoordinate> coords;
    for (auto [p, e] : factorize(order)) {
        PruferCoordinate c;
        c.prime = p;
        c.value = Rational(mpz_class(1), mpz_class(pow_ul(p, e)));
        coords.push_back(std::move(c));
    }
    return coords;
}

PruferEmbedding prufer_embedding(const CyclicDecomposition& dec, unsigned long exhaustive_limit) {
    if (dec.orders.empty())
        throw precondition_error("prufer embedding: decomposition must be nonempty");

    PruferEmbedding out;
    out.decomposition = dec;

    // Coordinate slots: (generator index, prime power). Each generator owns
    // its own quasicyclic coordinates, so components are independent.
    struct Slot { std::size_t gen; unsigned long prime; unsigned long modulus; };
    std::vector<Slot> slots;
    std::vector<std::vector<std::size_t>> slots_of_gen(dec.orders.size());

    unsigned long product = 1;
    bool product_overflow = false;
    for (std::size_t i = 0; i < dec.orders.size(); ++i) {
        unsigned long n = dec.orders[i];
        out.generator_images.push_back(generator_image(n));
        for (auto [p, e] : factorize(n)) {
            slots_of_gen[i].push_back(slots.size());
            slots.push_back(Slot{i, p, pow_ul(p, e)});
        }
        if (product > exhaustive_limit / n + 1) product_overflow = true;
        if (!product_overflow) product *= n;
    }

    bool exhaustive = !product_overflow && product <= exhaustive_limit;

    // image order of generator i must equal its cyclic order
    bool gen_orders_ok = true;
    for (std::size_t i = 0; i < dec.orders.size(); ++i) {
        unsigned long lcm_order = 1;
        for (std::size_t s : slots_of_gen[i])
            lcm_order = std::lcm(lcm_order, slots[s].modulus);
        if (lcm_order != dec.orders[i]) gen_orders_ok = false;
    }

    // The image of a tuple k is the concatenation of independent per-generator
    // blocks: slot (i, p^e) holds (k_i mod p^e)/p^e. Kernel triviality, order
    // preservation and generator-step additivity therefore factor through the
    // blocks, and scanning each k_i over its full cyclic range checks every
    // tuple. Values stay below the group order, so machine integers carry the
    // scans exactly.
    bool kernel_ok = true, order_ok = true, additivity_ok = true;
    std::optional<std::vector<unsigned long>> kernel_witness;

    for (std::size_t i = 0; i < dec.orders.size(); ++i) {
        unsigned long n = dec.orders[i];
        for (unsigned long k = 0; k < n; ++k) {
            bool block_zero = true;
            unsigned long image_order = 1;
            for (std::size_t s : slots_of_gen[i]) {
                unsigned long m = slots[s].modulus;
                unsigned long r = k % m;
                block_zero &= r == 0;
                image_order = std::lcm(image_order, m / std::gcd(m, r));
                // stepping the generator shifts exactly its slots by one
                if (((k + 1) % n) % m != (r + 1) % m) additivity_ok = false;
            }
            if (block_zero != (k == 0)) {
                kernel_ok = false;
                if (!kernel_witness) {
                    std::vector<unsigned long> w(dec.orders.size(), 0);
                    w[i] = k;
                    kernel_witness = w;
                }
            }
            if (image_order != n / std::gcd(n, k)) order_ok = false;
        }
    }

    // belt-and-braces: a full product scan of the kernel condition with
    // incremental zero counters, when the group is small enough
    if (exhaustive) {
        std::vector<unsigned long> k(dec.orders.size(), 0);
        std::vector<unsigned long> residues(slots.size(), 0);
        std::size_t nonzero_k = 0, nonzero_res = 0;
        while (true) {
            if ((nonzero_res == 0) != (nonzero_k == 0)) {
                kernel_ok = false;
                if (!kernel_witness) kernel_witness = k;
            }
            std::size_t i = 0;
            for (; i < k.size(); ++i) {
                unsigned long before = k[i];
                k[i] = (k[i] + 1) % dec.orders[i];
                nonzero_k += (k[i] != 0) - (before != 0);
                for (std::size_t s : slots_of_gen[i]) {
                    unsigned long prev = residues[s];
                    residues[s] = k[i] % slots[s].modulus;
                    nonzero_res += (residues[s] != 0) - (prev != 0);
                }
                if (k[i] != 0) break;
            }
            if (i == k.size()) break;
        }
    }

    // additivity through the exact rational arithmetic on sampled pairs
    // (the residue scans above cover the group exhaustively)
    {
        SplitMix64 rng(0x9a7e5);
        for (int t = 0; t < 8 && additivity_ok; ++t) {
            for (std::size_t s = 0; s < slots.size(); ++s) {
                unsigned long m = slots[s].modulus;
                unsigned long a = rng.below(m), b = rng.below(m);
                Rational sum = prufer_add(Rational(mpz_class(a), mpz_class(m)),
                                          Rational(mpz_class(b), mpz_class(m)));
                if (sum != Rational(mpz_class((a + b) % m), mpz_class(m)))
                    additivity_ok = false;
            }
        }
    }

    EmbeddingReport rep;
    rep.domain_order =
        product_overflow ? 0 : static_cast<unsigned>(std::min<unsigned long>(product, 0xffffffffUL));
    rep.codomain_degree = slots.size();
    rep.homomorphism_ok = additivity_ok && gen_orders_ok;
    rep.injective_ok = kernel_ok;
    json images = json::array();
    for (std::size_t i = 0; i < dec.orders.size(); ++i) {
        json coords = json::array();
        for (const auto& c : out.generator_images[i]) coords.push_back(c.to_json());
        images.push_back(json{{"order", dec.orders[i]}, {"image", coords}});
    }
    rep.images = std::move(images);
    json extra{{"exhaustive", exhaustive},
               {"elementOrdersPreserved", order_ok},
               {"generatorImageOrdersOk", gen_orders_ok}};
    if (kernel_witness) extra["kernelWitnessTuple"] = *kernel_witness;
    rep.extra = std::move(extra);
    out.report = std::move(rep);
    return out;
}

std::vector<unsigned long> orders_from_abelian_cayley(const FiniteGroup& g) {
    if (g.order() > 256)
        throw precondition_error("abelian converter: supported up to order 256");
    if (!g.is_abelian())
        throw precondition_error("abelian converter: group is not abelian");
    if (g.order() == 1) return {};

    unsigned best = 1;
    unsigned best_order = 1;
    for (unsigned e = 1; e < g.order(); ++e) {
        unsigned o = g.element_order(e);
        if (o > best_order) {
            best_order = o;
            best = e;
        }
    }

    // cosets of the cyclic subgroup generated by the maximal-order element
    std::vector<unsigned> cyclic{FiniteGroup::id};
    for (unsigned cur = best; cur != FiniteGroup::id; cur = g.op(cur, best))
        cyclic.push_back(cur);

    unsigned order = g.order();
    std::vector<unsigned> proj(order, order);
    std::vector<unsigned> reps;
    for (unsigned x = 0; x < order; ++x) {
        if (proj[x] != order) continue;
        unsigned idx = static_cast<unsigned>(reps.size());
        for (unsigned h : cyclic) proj[g.op(x, h)] = idx;
        reps.push_back(x);
    }
    unsigned q = static_cast<unsigned>(reps.size());
    std::vector<std::vector<unsigned>> mul(q, std::vector<unsigned>(q));
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) mul[a][b] = proj[g.op(reps[a], reps[b])];

    std::vector<unsigned long> orders{best_order};
    auto rest = orders_from_abelian_cayley(FiniteGroup::from_mul_table(std::move(mul)));
    orders.insert(orders.end(), rest.begin(), rest.end());
    return orders;
}

EmbeddingReport quotient_product_embedding(const FiniteGroup& g, const std::vector<Mask>& base) {
    if (!g.is_abelian())
        throw precondition_error("quotient product embedding: group must be abelian");
    if (base.empty())
        throw precondition_error("quotient product embedding: base must be nonempty");
    for (Mask b : base)
        if (!g.is_subgroup(b))
            throw precondition_error("quotient product embedding: base must consist of subgroups");

    std::vector<FiniteGroup::Quotient> quotients;
    for (Mask b : base) quotients.push_back(g.quotient(b)); // abelian: all normal

    auto image_of = [&](unsigned e) {
        std::vector<unsigned> tuple;
        tuple.reserve(quotients.size());
        for (const auto& q : quotients) tuple.push_back(q.projection[e]);
        return tuple;
    };

    bool hom_ok = true;
    for (unsigned a = 0; a < g.order() && hom_ok; ++a)
        for (unsigned b = 0; b < g.order(); ++b) {
            auto lhs = image_of(g.op(a, b));
            auto ia = image_of(a), ib = image_of(b);
            for (std::size_t t = 0; t < quotients.size(); ++t)
                if (lhs[t] != quotients[t].group.op(ia[t], ib[t])) {
                    hom_ok = false;
                    break;
                }
            if (!hom_ok) break;
        }

    std::optional<unsigned> kernel_witness;
    for (unsigned e = 1; e < g.order(); ++e) {
        auto img = image_of(e);
        if (std::all_of(img.begin(), img.end(), [](unsigned c) { return c == 0; })) {
            kernel_witness = e;
            break;
        }
    }

    EmbeddingReport rep;
    rep.domain_order = g.order();
    std::size_t degree = 1;
    for (const auto& q : quotients) degree *= q.group.order();
    rep.codomain_degree = degree;
    rep.homomorphism_ok = hom_ok;
    rep.injective_ok = !kernel_witness.has_value();
    rep.kernel_witness = kernel_witness;
    json images = json::array();
    for (unsigned e = 0; e < g.order(); ++e) images.push_back(image_of(e));
    rep.images = std::move(images);
    json quotient_orders = json::array();
    for (const auto& q : quotients) quotient_orders.push_back(q.group.order());
    rep.extra = json{{"quotientOrders", quotient_orders}};
    return rep;
}

} // namespace abelian
} // namespace topolab
