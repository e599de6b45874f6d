#include "topolab/spaces.hpp"

#include <algorithm>

namespace topolab {

std::string to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::RLattice: return "R";
        case LatticeKind::SLattice: return "S";
        case LatticeKind::OplusZ: return "OPLUS_Z";
    }
    return "?";
}

std::string to_string(SpaceKind s) {
    switch (s) {
        case SpaceKind::Gamma0: return "GAMMA0";
        case SpaceKind::Gamma1: return "GAMMA1";
        case SpaceKind::CCapR: return "C_CAP_R";
    }
    return "?";
}

LatticeKind lattice_from_string(const std::string& s) {
    if (s == "R") return LatticeKind::RLattice;
    if (s == "S") return LatticeKind::SLattice;
    if (s == "OPLUS_Z") return LatticeKind::OplusZ;
    throw precondition_error("unknown lattice kind '" + s + "'");
}

SpaceKind space_from_string(const std::string& s) {
    if (s == "GAMMA0") return SpaceKind::Gamma0;
    if (s == "GAMMA1") return SpaceKind::Gamma1;
    if (s == "C_CAP_R") return SpaceKind::CCapR;
    throw precondition_error("unknown space kind '" + s + "'");
}

NormKind metric_norm(SpaceKind s) {
    return s == SpaceKind::Gamma1 ? NormKind::L1 : NormKind::Sup;
}

bool lattice_member(const FinSeq& a, LatticeKind k) {
    switch (k) {
        case LatticeKind::RLattice:
            for (const auto& [n, v] : a.support())
                if (!divides_factorial(v.den(), n + 1)) return false;
            return true;
        case LatticeKind::OplusZ:
            for (const auto& [n, v] : a.support())
                if (!v.is_integer()) return false;
            return true;
        case LatticeKind::SLattice:
            for (const auto& [n, v] : a.support())
                if (!v.is_integer()) return false;
            return a.coordinate_sum().is_zero();
    }
    return false;
}

bool lattice_member(const TailSeq& a, LatticeKind k) {
    if (k != LatticeKind::RLattice)
        throw precondition_error("lattice_member: eventually-constant sequences only fit the R lattice");
    for (std::size_t n = 0; n < a.prefix_length(); ++n)
        if (!divides_factorial(a.get(n).den(), n + 1)) return false;
    // Tail value must lie in (1/(n+1)!)Z for every n >= prefix length; the
    // binding case is the first tail coordinate, since divisibility of
    // (n+1)! only improves with n.
    if (!a.tail().is_zero() &&
        !divides_factorial(a.tail().den(), a.prefix_length() + 1))
        return false;
    return true;
}

bool lattice_equiv(const FinSeq& a, const FinSeq& b, LatticeKind k) {
    if (k == LatticeKind::RLattice)
        throw precondition_error("lattice_equiv: quotient lattice must be S or OPLUS_Z");
    return lattice_member(a - b, k);
}

bool space_member(const FinSeq& a, SpaceKind s) {
    switch (s) {
        case SpaceKind::Gamma0:
        case SpaceKind::Gamma1:
            // Finitely supported elements lie in c0 and l1 automatically.
            return lattice_member(a, LatticeKind::RLattice);
        case SpaceKind::CCapR:
            throw precondition_error("space_member: C_CAP_R expects an eventually-constant sequence");
    }
    return false;
}

bool space_member(const TailSeq& a, SpaceKind s) {
    if (s != SpaceKind::CCapR)
        throw precondition_error("space_member: eventually-constant sequences only fit C_CAP_R");
    return lattice_member(a, LatticeKind::RLattice);
}

Rational metric_dist(const FinSeq& a, const FinSeq& b, SpaceKind s) {
    if (s == SpaceKind::CCapR)
        throw precondition_error("metric_dist: C_CAP_R expects eventually-constant sequences");
    if (!space_member(a, s) || !space_member(b, s))
        throw precondition_error("metric_dist: points must belong to the space");
    FinSeq d = a - b;
    return metric_norm(s) == NormKind::L1 ? d.l1_norm() : d.sup_norm();
}

Rational metric_dist(const TailSeq& a, const TailSeq& b, SpaceKind s) {
    if (s != SpaceKind::CCapR)
        throw precondition_error("metric_dist: only C_CAP_R carries eventually-constant sequences");
    if (!space_member(a, s) || !space_member(b, s))
        throw precondition_error("metric_dist: points must belong to the space");
    return (a - b).sup_norm();
}

// ----------------------------------------------------- SubgroupDescriptor

SubgroupDescriptor SubgroupDescriptor::coord_zero(std::size_t n) {
    SubgroupDescriptor d;
    d.tag = Tag::CoordZero;
    d.coord = n;
    return d;
}

SubgroupDescriptor SubgroupDescriptor::coord_int(std::size_t n) {
    SubgroupDescriptor d;
    d.tag = Tag::CoordInt;
    d.coord = n;
    return d;
}

SubgroupDescriptor SubgroupDescriptor::ball_generated(SpaceKind s, Rational r) {
    if (r <= Rational(0))
        throw precondition_error("ball_generated: radius must be positive");
    SubgroupDescriptor d;
    d.tag = Tag::BallGenerated;
    d.space = s;
    d.radius = std::move(r);
    return d;
}

json SubgroupDescriptor::to_json() const {
    switch (tag) {
        case Tag::CoordZero:
            return json{{"tag", "COORD_ZERO"}, {"n", coord}};
        case Tag::CoordInt:
            return json{{"tag", "COORD_INT"}, {"n", coord}};
        case Tag::BallGenerated:
            return json{{"tag", "BALL_GENERATED"},
                        {"space", topolab::to_string(space)},
                        {"radius", radius.to_string()}};
    }
    return json();
}

SubgroupDescriptor SubgroupDescriptor::from_json(const json& j) {
    if (!j.is_object() || !j.contains("tag"))
        throw precondition_error("subgroup descriptor json: missing tag");
    std::string t = j["tag"].get<std::string>();
    if (t == "COORD_ZERO") return coord_zero(j.at("n").get<std::size_t>());
    if (t == "COORD_INT") return coord_int(j.at("n").get<std::size_t>());
    if (t == "BALL_GENERATED")
        return ball_generated(space_from_string(j.at("space").get<std::string>()),
                              Rational::parse(j.at("radius").get<std::string>()));
    throw precondition_error("subgroup descriptor json: unknown tag '" + t + "'");
}

namespace {

// Coordinates whose lattice step 1/(n+1)! is >= r. Finite: (n+1)! grows past
// 1/r. The generated-by-ball subgroup is exactly the set of lattice elements
// supported on the complementary (free) coordinates.
std::vector<std::size_t> ball_constrained_coords(const Rational& r, std::size_t up_to) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0;; ++n) {
        Rational step(mpz_class(1), factorial(n + 1));
        if (step < r) break; // steps only shrink from here on
        out.push_back(n);
        if (n > up_to + 64) break; // unreachable guard
    }
    return out;
}

} // namespace

bool subgroup_member(const FinSeq& a, const SubgroupDescriptor& g,
                     std::optional<LatticeKind> modulo) {
    if (modulo && *modulo == LatticeKind::RLattice)
        throw precondition_error("subgroup_member: modulus must be S or OPLUS_Z");
    switch (g.tag) {
        case SubgroupDescriptor::Tag::CoordZero:
            if (modulo)
                throw precondition_error(
                    "subgroup_member: {b(n)=0} does not contain the modulus lattice; "
                    "the quotient descriptor is ill-posed");
            return a.get(g.coord).is_zero();
        case SubgroupDescriptor::Tag::CoordInt:
            // Adding a lattice element shifts coordinate n by an integer, so
            // the coset test coincides with the direct test.
            return a.get(g.coord).is_integer();
        case SubgroupDescriptor::Tag::BallGenerated: {
            auto constrained = ball_constrained_coords(g.radius, a.max_support().value_or(0));
            for (std::size_t n : constrained) {
                const Rational& v = a.get(n);
                if (modulo ? !v.is_integer() : !v.is_zero()) return false;
            }
            return true;
        }
    }
    return false;
}

// ----------------------------------------------------- coset ball search

namespace {

// Integer candidates t(n) with |a(n) - t(n)| < r (or <= r when closed),
// ascending.
std::vector<mpz_class> coordinate_candidates(const Rational& value, const Rational& r,
                                             bool closed) {
    std::vector<mpz_class> out;
    Rational lo = value - r, hi = value + r;
    mpz_class z = lo.ceil();
    if (!closed && Rational(z) == lo) ++z; // strict lower end
    for (; Rational(z) < hi || (closed && Rational(z) == hi); ++z) out.push_back(z);
    return out;
}

CosetBallDecision coset_ball_search(const FinSeq& a, const Rational& r, SpaceKind s,
                                    bool closed) {
    if (r <= Rational(0))
        throw precondition_error("coset_ball_member: radius must be positive");
    if (s == SpaceKind::CCapR)
        throw precondition_error("coset_ball_member: quotient by S lives on Gamma0/Gamma1");
    if (!space_member(a, s))
        throw precondition_error("coset_ball_member: element must belong to the space");

    // Fresh coordinates (outside the support) can carry any integer z with
    // |z| < r; cap is the largest such |z|.
    mpz_class cap = r.ceil() - 1;
    if (closed && Rational(r.ceil()) == r) cap = r.ceil();

    std::vector<std::size_t> coords;
    std::vector<std::vector<mpz_class>> cands;
    for (const auto& [n, v] : a.support()) {
        coords.push_back(n);
        cands.push_back(coordinate_candidates(v, r, closed));
        if (cands.back().empty())
            return CosetBallDecision{false, std::nullopt, 0};
    }

    CosetBallDecision result;
    std::vector<std::size_t> pick(coords.size(), 0);
    std::vector<mpz_class> partial(coords.size() + 1, 0);
    std::size_t level = 0;
    constexpr std::uint64_t kCombinationCap = 10'000'000;
    while (true) {
        if (level == coords.size()) {
            if (++result.combinations_tried > kCombinationCap)
                throw search_exhausted("coset_ball_member: combination cap exceeded");
            mpz_class residue = -partial[level];
            bool absorbable = residue == 0 || cap > 0;
            if (absorbable) {
                FinSeq t;
                for (std::size_t i = 0; i < coords.size(); ++i)
                    t.set(coords[i], Rational(cands[i][pick[i]]));
                std::size_t fresh = coords.empty() ? 0 : coords.back() + 1;
                while (residue != 0) {
                    mpz_class neg_cap = -cap;
                    mpz_class chunk = residue > 0 ? std::min(residue, cap)
                                                  : std::max(residue, neg_cap);
                    t.set(fresh++, Rational(chunk));
                    residue -= chunk;
                }
                result.member = true;
                result.witness = std::move(t);
                return result;
            }
            // fall through to backtrack
        } else {
            if (pick[level] < cands[level].size()) {
                partial[level + 1] = partial[level] + cands[level][pick[level]];
                ++level;
                continue;
            }
            pick[level] = 0;
            // exhausted this level; backtrack
        }
        if (level == 0) break;
        --level;
        ++pick[level];
        if (level + 1 <= coords.size()) {
            // restart deeper levels
            for (std::size_t i = level + 1; i < coords.size(); ++i) pick[i] = 0;
        }
    }
    return result;
}

} // namespace

json CosetBallDecision::to_json() const {
    json j{{"member", member}, {"combinationsTried", combinations_tried}};
    j["witness"] = witness ? witness->to_json() : json(nullptr);
    return j;
}

CosetBallDecision coset_ball_member(const FinSeq& a, const Rational& r, SpaceKind s) {
    return coset_ball_search(a, r, s, /*closed=*/false);
}

CosetBallDecision coset_closed_ball_member(const FinSeq& a, const Rational& r, SpaceKind s) {
    return coset_ball_search(a, r, s, /*closed=*/true);
}

} // namespace topolab
