#include "topolab/finite_group.hpp"
#include "topolab/rng.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace topolab {
namespace finite {

std::vector<unsigned> mask_elements(Mask m) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < 64; ++i)
        if (m & (Mask(1) << i)) out.push_back(i);
    return out;
}

Mask mask_from_elements(const std::vector<unsigned>& elems, unsigned order) {
    Mask m = 0;
    for (unsigned e : elems) {
        if (e >= order)
            throw precondition_error("element index " + std::to_string(e) + " out of range");
        m |= Mask(1) << e;
    }
    return m;
}

void FiniteGroup::finish_tables_and_validate() {
    order_ = static_cast<unsigned>(mul_.size());
    if (order_ == 0) throw precondition_error("group: empty table");
    for (const auto& row : mul_) {
        if (row.size() != order_) throw precondition_error("group: table is not square");
        for (unsigned v : row)
            if (v >= order_) throw precondition_error("group: table entry out of range");
    }
    for (unsigned a = 0; a < order_; ++a)
        if (mul_[id][a] != a || mul_[a][id] != a)
            throw precondition_error("group: element 0 is not the identity");

    inv_.assign(order_, order_);
    for (unsigned a = 0; a < order_; ++a) {
        for (unsigned b = 0; b < order_; ++b)
            if (mul_[a][b] == id && mul_[b][a] == id) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] == order_) throw precondition_error("group: missing inverse");
    }

    auto check_assoc = [this](unsigned a, unsigned b, unsigned c) {
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
            throw precondition_error("group: associativity fails");
    };
    if (order_ <= 64) {
        for (unsigned a = 0; a < order_; ++a)
            for (unsigned b = 0; b < order_; ++b)
                for (unsigned c = 0; c < order_; ++c) check_assoc(a, b, c);
    } else {
        SplitMix64 rng(0x5eedf00dULL);
        for (int t = 0; t < 10000; ++t)
            check_assoc(static_cast<unsigned>(rng.below(order_)),
                        static_cast<unsigned>(rng.below(order_)),
                        static_cast<unsigned>(rng.below(order_)));
    }
}

FiniteGroup FiniteGroup::from_mul_table(std::vector<std::vector<unsigned>> mul) {
    FiniteGroup g;
    g.mul_ = std::move(mul);
    g.finish_tables_and_validate();
    return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(unsigned n) {
    if (n == 0) throw precondition_error("cyclic: order must be positive");
    std::vector<std::vector<unsigned>> mul(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
    return from_mul_table(std::move(mul));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    unsigned n = a.order() * b.order();
    auto index = [&](unsigned x, unsigned y) { return x * b.order() + y; };
    std::vector<std::vector<unsigned>> mul(n, std::vector<unsigned>(n));
    for (unsigned x1 = 0; x1 < a.order(); ++x1)
        for (unsigned y1 = 0; y1 < b.order(); ++y1)
            for (unsigned x2 = 0; x2 < a.order(); ++x2)
                for (unsigned y2 = 0; y2 < b.order(); ++y2)
                    mul[index(x1, y1)][index(x2, y2)] = index(a.op(x1, x2), b.op(y1, y2));
    return from_mul_table(std::move(mul));
}

FiniteGroup FiniteGroup::dihedral(unsigned n) {
    if (n == 0) throw precondition_error("dihedral: n must be positive");
    unsigned N = 2 * n;
    auto index = [&](unsigned rot, unsigned flip) { return rot + n * flip; };
    std::vector<std::vector<unsigned>> mul(N, std::vector<unsigned>(N));
    for (unsigned r1 = 0; r1 < n; ++r1)
        for (unsigned f1 = 0; f1 < 2; ++f1)
            for (unsigned r2 = 0; r2 < n; ++r2)
                for (unsigned f2 = 0; f2 < 2; ++f2) {
                    unsigned rot = f1 == 0 ? (r1 + r2) % n : (r1 + n - r2) % n;
                    mul[index(r1, f1)][index(r2, f2)] = index(rot, (f1 + f2) % 2);
                }
    return from_mul_table(std::move(mul));
}

FiniteGroup FiniteGroup::quaternion8() {
    // indices: 1, -1, i, -i, j, -j, k, -k
    std::vector<std::vector<unsigned>> mul(8, std::vector<unsigned>(8));
    // axis 0 = scalar, 1 = i, 2 = j, 3 = k; element = 2*axis + sign
    auto enc = [](unsigned axis, unsigned neg) { return 2 * axis + neg; };
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b) {
            unsigned ax1 = a / 2, ng1 = a % 2, ax2 = b / 2, ng2 = b % 2;
            unsigned axis, neg;
            if (ax1 == 0) { axis = ax2; neg = 0; }
            else if (ax2 == 0) { axis = ax1; neg = 0; }
            else if (ax1 == ax2) { axis = 0; neg = 1; } // i*i = -1
            else {
                axis = 6 - ax1 - ax2; // the remaining axis
                // i*j=k, j*k=i, k*i=j are positive; reversed order is negative
                neg = ((ax1 == 1 && ax2 == 2) || (ax1 == 2 && ax2 == 3) || (ax1 == 3 && ax2 == 1))
                          ? 0u : 1u;
            }
            unsigned result = enc(axis, (neg + ng1 + ng2) % 2);
            mul[a][b] = result;
        }
    return from_mul_table(std::move(mul));
}

namespace {

std::vector<std::vector<unsigned>> permutations_of(unsigned n) {
    std::vector<unsigned> base(n);
    for (unsigned i = 0; i < n; ++i) base[i] = i;
    std::vector<std::vector<unsigned>> all;
    do {
        all.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return all;
}

bool perm_is_even(const std::vector<unsigned>& p) {
    unsigned inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}

FiniteGroup group_from_permutations(std::vector<std::vector<unsigned>> elems) {
    // identity must sit at index 0; the rest keep their given order
    std::map<std::vector<unsigned>, unsigned> index;
    for (unsigned i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    unsigned n = static_cast<unsigned>(elems.size());
    std::vector<std::vector<unsigned>> mul(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            std::vector<unsigned> comp(elems[a].size());
            for (std::size_t x = 0; x < comp.size(); ++x) comp[x] = elems[a][elems[b][x]];
            auto it = index.find(comp);
            if (it == index.end())
                throw precondition_error("permutation set is not closed under composition");
            mul[a][b] = it->second;
        }
    return FiniteGroup::from_mul_table(std::move(mul));
}

} // namespace

FiniteGroup FiniteGroup::symmetric(unsigned n) {
    if (n == 0 || n > 5) throw precondition_error("symmetric: supported degrees are 1..5");
    return group_from_permutations(permutations_of(n));
}

FiniteGroup FiniteGroup::alternating(unsigned n) {
    if (n == 0 || n > 5) throw precondition_error("alternating: supported degrees are 1..5");
    std::vector<std::vector<unsigned>> evens;
    for (auto& p : permutations_of(n))
        if (perm_is_even(p)) evens.push_back(p);
    return group_from_permutations(std::move(evens));
}

FiniteGroup FiniteGroup::from_permutation_generators(
    unsigned degree, const std::vector<std::vector<unsigned>>& gens) {
    std::vector<unsigned> identity(degree);
    for (unsigned i = 0; i < degree; ++i) identity[i] = i;
    for (const auto& g : gens) {
        if (g.size() != degree) throw precondition_error("generator degree mismatch");
        std::vector<bool> seen(degree, false);
        for (unsigned v : g) {
            if (v >= degree || seen[v]) throw precondition_error("generator is not a permutation");
            seen[v] = true;
        }
    }
    std::vector<std::vector<unsigned>> elems{identity};
    std::set<std::vector<unsigned>> known{identity};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            std::vector<unsigned> next(degree);
            for (unsigned x = 0; x < degree; ++x) next[x] = g[elems[head][x]];
            if (known.insert(next).second) {
                elems.push_back(next);
                if (elems.size() > 4096)
                    throw precondition_error("generated permutation group too large");
            }
        }
    }
    return group_from_permutations(std::move(elems));
}

json FiniteGroup::to_json() const {
    return json{{"order", order_}, {"mul", mul_}};
}

FiniteGroup FiniteGroup::from_json(const json& j) {
    if (j.contains("mul")) {
        auto mul = j.at("mul").get<std::vector<std::vector<unsigned>>>();
        if (j.contains("order") && j.at("order").get<std::size_t>() != mul.size())
            throw precondition_error("group json: order does not match table size");
        return from_mul_table(std::move(mul));
    }
    if (j.contains("generators"))
        return from_permutation_generators(
            j.at("degree").get<unsigned>(),
            j.at("generators").get<std::vector<std::vector<unsigned>>>());
    throw precondition_error("group json: expected a mul table or permutation generators");
}

unsigned FiniteGroup::element_order(unsigned a) const {
    unsigned k = 1, cur = a;
    while (cur != id) {
        cur = op(cur, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (unsigned a = 0; a < order_; ++a)
        for (unsigned b = a + 1; b < order_; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

void FiniteGroup::require_mask_ops() const {
    if (order_ > 64)
        throw precondition_error("subset operations require group order <= 64");
}

Mask FiniteGroup::full_mask() const {
    require_mask_ops();
    return order_ == 64 ? ~Mask(0) : (Mask(1) << order_) - 1;
}

Mask FiniteGroup::mul_set(Mask a, Mask b) const {
    require_mask_ops();
    Mask out = 0;
    for (unsigned x : mask_elements(a))
        for (unsigned y : mask_elements(b)) out |= Mask(1) << op(x, y);
    return out;
}

Mask FiniteGroup::inv_set(Mask a) const {
    require_mask_ops();
    Mask out = 0;
    for (unsigned x : mask_elements(a)) out |= Mask(1) << inverse(x);
    return out;
}

Mask FiniteGroup::conjugate_set(unsigned g, Mask s) const {
    require_mask_ops();
    Mask out = 0;
    for (unsigned x : mask_elements(s)) out |= Mask(1) << op(op(g, x), inverse(g));
    return out;
}

bool FiniteGroup::is_symmetric_set(Mask s) const { return inv_set(s) == s; }

Mask FiniteGroup::subgroup_closure(Mask s) const {
    require_mask_ops();
    Mask h = s | (Mask(1) << id);
    h |= inv_set(h);
    while (true) {
        Mask grown = h | mul_set(h, h);
        grown |= inv_set(grown);
        if (grown == h) return h;
        h = grown;
    }
}

bool FiniteGroup::is_subgroup(Mask s) const {
    if (!(s & (Mask(1) << id))) return false;
    return mul_set(s, s) == s && inv_set(s) == s;
}

bool FiniteGroup::is_normal(Mask s) const {
    if (!is_subgroup(s)) return false;
    for (unsigned g = 0; g < order_; ++g)
        if (conjugate_set(g, s) != s) return false;
    return true;
}

const std::vector<Mask>& FiniteGroup::all_subgroups() const {
    require_mask_ops();
    if (!subgroups_cache_.empty()) return subgroups_cache_;
    std::set<Mask> found{Mask(1) << id};
    std::vector<Mask> work{Mask(1) << id};
    while (!work.empty()) {
        Mask h = work.back();
        work.pop_back();
        for (unsigned g = 0; g < order_; ++g) {
            if (h & (Mask(1) << g)) continue;
            Mask grown = subgroup_closure(h | (Mask(1) << g));
            if (found.insert(grown).second) work.push_back(grown);
        }
    }
    subgroups_cache_.assign(found.begin(), found.end());
    std::sort(subgroups_cache_.begin(), subgroups_cache_.end(), [](Mask a, Mask b) {
        auto ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    return subgroups_cache_;
}

std::vector<Mask> FiniteGroup::maximal_subgroups_of(Mask h) const {
    std::vector<Mask> inside;
    for (Mask s : all_subgroups())
        if (s != h && (s & ~h) == 0) inside.push_back(s);
    std::vector<Mask> maximal;
    for (Mask s : inside) {
        bool dominated = false;
        for (Mask t : inside)
            if (t != s && (s & ~t) == 0) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(s);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

std::vector<std::vector<Mask>> FiniteGroup::maximal_chains() const {
    std::vector<std::vector<Mask>> chains;
    std::vector<Mask> current{full_mask()};
    Mask bottom = Mask(1) << id;

    auto descend = [&](auto&& self, Mask h) -> void {
        if (h == bottom) {
            chains.push_back(current);
            return;
        }
        for (Mask m : maximal_subgroups_of(h)) {
            current.push_back(m);
            self(self, m);
            current.pop_back();
        }
    };
    descend(descend, full_mask());
    return chains;
}

FiniteGroup::Quotient FiniteGroup::quotient(Mask normal_subgroup) const {
    if (!is_normal(normal_subgroup))
        throw precondition_error("quotient: subgroup is not normal");
    std::vector<unsigned> proj(order_, order_);
    std::vector<Mask> cosets;
    std::vector<unsigned> reps;
    for (unsigned g = 0; g < order_; ++g) {
        if (proj[g] != order_) continue;
        Mask coset = mul_set(Mask(1) << g, normal_subgroup);
        unsigned idx = static_cast<unsigned>(cosets.size());
        for (unsigned e : mask_elements(coset)) proj[e] = idx;
        cosets.push_back(coset);
        reps.push_back(g);
    }
    unsigned q = static_cast<unsigned>(cosets.size());
    std::vector<std::vector<unsigned>> mul(q, std::vector<unsigned>(q));
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) mul[a][b] = proj[op(reps[a], reps[b])];
    Quotient out{from_mul_table(std::move(mul)), std::move(proj), std::move(cosets)};
    return out;
}

std::vector<Mask> symmetric_subsets_desc(const FiniteGroup& g, Mask universe) {
    Mask idbit = Mask(1) << FiniteGroup::id;
    if (!(universe & idbit))
        throw precondition_error("symmetric subsets: universe must contain the identity");

    std::vector<Mask> items; // orbit under inversion: {e} or {e, e^-1}
    for (unsigned e : mask_elements(universe)) {
        if (e == FiniteGroup::id) continue;
        unsigned ei = g.inverse(e);
        if (ei == e) items.push_back(Mask(1) << e);
        else if (e < ei && (universe & (Mask(1) << ei))) items.push_back((Mask(1) << e) | (Mask(1) << ei));
    }
    if (items.size() > 17)
        throw precondition_error("symmetric subset search capped at 17 inversion orbits");

    std::vector<Mask> subsets;
    subsets.reserve(std::size_t(1) << items.size());
    for (Mask choice = 0; choice < (Mask(1) << items.size()); ++choice) {
        Mask s = idbit;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (choice & (Mask(1) << i)) s |= items[i];
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
        auto ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca > cb : a < b;
    });
    return subsets;
}

} // namespace finite
} // namespace topolab
