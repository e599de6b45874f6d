#include "topolab/witnesses.hpp"

#include <algorithm>

namespace topolab {

bool WitnessRecord::ok() const {
    for (const auto& [name, passed] : checks)
        if (!passed) return false;
    return true;
}

void WitnessRecord::require_ok() const {
    for (const auto& [name, passed] : checks)
        if (!passed)
            throw verification_error("witness check failed: " + name);
}

json WitnessRecord::to_json() const {
    json c = json::array();
    for (const auto& [name, passed] : checks) c.push_back(json::array({name, passed}));
    return json{{"claim", claim}, {"inputs", inputs}, {"witness", witness}, {"checks", c}};
}

WitnessRecord WitnessRecord::from_json(const json& j) {
    WitnessRecord r;
    r.claim = j.at("claim").get<std::string>();
    r.inputs = j.at("inputs");
    r.witness = j.at("witness");
    for (const auto& c : j.at("checks"))
        r.checks.emplace_back(c.at(0).get<std::string>(), c.at(1).get<bool>());
    return r;
}

namespace {

Rational lattice_step(std::size_t n) {
    return Rational(mpz_class(1), factorial(n + 1));
}

FinSeq finseq_arg(const json& inputs, const char* key) {
    return FinSeq::from_json(inputs.at(key));
}

} // namespace

SeparatorResult smog_separator(const FinSeq& a, SpaceKind s) {
    if (s == SpaceKind::CCapR)
        throw precondition_error("smog_separator: expects a finitely supported space");
    if (a.is_zero())
        throw precondition_error("smog_separator: element must be nonzero");
    if (!space_member(a, s))
        throw precondition_error("smog_separator: element must belong to the space");

    std::size_t n = *a.min_support();
    Rational value = a.get(n);
    Rational step = lattice_step(n);
    Rational radius = std::min(value.abs(), step);
    auto desc = SubgroupDescriptor::coord_zero(n);

    WitnessRecord rec;
    rec.claim = "smog-separator";
    rec.inputs = json{{"a", a.to_json()}, {"space", to_string(s)}};
    rec.witness = json{{"descriptor", desc.to_json()},
                       {"coordinate", n},
                       {"value", value.to_string()},
                       {"opennessRadius", radius.to_string()}};
    rec.checks = {
        {"excludes_element", !subgroup_member(a, desc, std::nullopt)},
        {"contains_zero", subgroup_member(FinSeq::zero(), desc, std::nullopt)},
        // Any b in the space with norm < radius has |b(n)| < 1/(n+1)! while
        // b(n) is a multiple of 1/(n+1)!, forcing b(n) = 0.
        {"ball_within_subgroup", radius <= step},
    };
    return SeparatorResult{desc, std::move(rec)};
}

UnboundedMultipleResult unbounded_multiple(const FinSeq& a, SpaceKind s, const Rational& bound) {
    if (s == SpaceKind::CCapR)
        throw precondition_error("unbounded_multiple: expects a finitely supported space");
    if (a.is_zero())
        throw precondition_error("unbounded_multiple: element must be nonzero");
    if (bound <= Rational(0))
        throw precondition_error("unbounded_multiple: bound must be positive");
    if (!space_member(a, s))
        throw precondition_error("unbounded_multiple: element must belong to the space");

    Rational norm = a.sup_norm();
    // least m with m*norm > bound
    mpz_class m = (bound / norm).floor() + 1;
    Rational scaled = Rational(m) * norm;
    Rational prev = Rational(m - 1) * norm;

    WitnessRecord rec;
    rec.claim = "unbounded-multiple";
    rec.inputs = json{{"a", a.to_json()}, {"space", to_string(s)}, {"bound", bound.to_string()}};
    rec.witness = json{{"m", m.get_str()},
                       {"norm", norm.to_string()},
                       {"scaledNorm", scaled.to_string()}};
    rec.checks = {
        {"escapes_bound", scaled > bound},
        {"minimal", prev <= bound},
    };
    return UnboundedMultipleResult{m, std::move(rec)};
}

NoSmogChainResult quotient_no_smog_chain(const Rational& r) {
    if (r <= Rational(0))
        throw precondition_error("quotient_no_smog_chain: radius must be positive");
    // least n with 1/(n+1) < r, i.e. n = floor(1/r)
    mpz_class nz = (Rational(1) / r).floor();
    if (!nz.fits_ulong_p() || nz.get_ui() > 2'000'000)
        throw precondition_error("quotient_no_smog_chain: radius too small for supported index range");
    std::size_t n = nz.get_ui();

    FinSeq small = FinSeq::unit(n, Rational(1, static_cast<long>(n) + 1));
    FinSeq e0 = FinSeq::unit(0);
    FinSeq en = FinSeq::unit(n);
    FinSeq relation = e0 - en;
    FinSeq multiple = small.scaled(Rational(static_cast<long>(n) + 1));

    WitnessRecord rec;
    rec.claim = "no-smog-chain";
    rec.inputs = json{{"radius", r.to_string()}};
    rec.witness = json{{"n", n},
                       {"smallElement", small.to_json()},
                       {"relation", relation.to_json()},
                       {"multiplier", n + 1}};
    rec.checks = {
        {"small_norm_below_radius", small.sup_norm() < r},
        {"minimal", n == 0 || Rational(1, static_cast<long>(n)) >= r},
        {"small_in_gamma0", space_member(small, SpaceKind::Gamma0)},
        {"relation_in_S", lattice_member(relation, LatticeKind::SLattice)},
        {"multiple_recovers_e0_mod_S", lattice_equiv(multiple, e0, LatticeKind::SLattice)},
        {"e0_nonzero_mod_S", !lattice_member(e0, LatticeKind::SLattice)},
    };
    return NoSmogChainResult{n, std::move(rec)};
}

NotTaResult not_ta_subgroup(SpaceKind s) {
    if (s == SpaceKind::CCapR)
        throw precondition_error("not_ta_subgroup: expects GAMMA0 or GAMMA1");
    auto desc = SubgroupDescriptor::coord_int(1);
    FinSeq excluded = FinSeq::unit(1, Rational(1, 2));
    Rational openness(1, 4);

    // Sample of S used for the containment check; membership of the whole
    // lattice is coordinatewise-integer, which these exercise.
    bool contains_s = true;
    for (std::size_t i = 0; i < 5 && contains_s; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j) continue;
            FinSeq sElt = FinSeq::unit(i) - FinSeq::unit(j);
            if (!subgroup_member(sElt, desc, LatticeKind::SLattice)) {
                contains_s = false;
                break;
            }
        }

    WitnessRecord rec;
    rec.claim = "not-ta";
    rec.inputs = json{{"space", to_string(s)}};
    rec.witness = json{{"descriptor", desc.to_json()},
                       {"excluded", excluded.to_json()},
                       {"opennessRadius", openness.to_string()}};
    rec.checks = {
        {"contains_S_on_samples", contains_s},
        // Coordinate 1 of a lattice element is a multiple of 1/2!; below
        // 1/4 in norm it must be 0, hence an integer.
        {"ball_within_subgroup", openness <= lattice_step(1)},
        {"proper_excludes", !subgroup_member(excluded, desc, LatticeKind::SLattice)},
        {"excluded_in_space", space_member(excluded, s)},
        {"excluded_outside_ball", excluded.sup_norm() >= openness},
    };
    return NotTaResult{desc, std::move(rec)};
}

TdSeparatorResult td_separator(const FinSeq& a) {
    if (!space_member(a, SpaceKind::Gamma1))
        throw precondition_error("td_separator: element must belong to GAMMA1");
    if (lattice_member(a, LatticeKind::SLattice))
        throw precondition_error("td_separator: element must be nonzero mod S");

    Rational r(1);
    unsigned halvings = 0;
    while (coset_closed_ball_member(a, r, SpaceKind::Gamma1).member) {
        r /= Rational(2);
        ++halvings;
        if (halvings > 4096)
            throw search_exhausted("td_separator: no separating radius found");
    }
    auto open_decision = coset_ball_member(a, r, SpaceKind::Gamma1);

    WitnessRecord rec;
    rec.claim = "td-separator";
    rec.inputs = json{{"a", a.to_json()}};
    rec.witness = json{{"r", r.to_string()}, {"halvings", halvings}};
    rec.checks = {
        {"coset_ball_excludes", !open_decision.member},
        {"closed_ball_excludes", !coset_closed_ball_member(a, r, SpaceKind::Gamma1).member},
    };
    return TdSeparatorResult{r, std::move(rec)};
}

QTaWitnessResult q_ta_witness(const Rational& q, const Rational& eps) {
    if (eps <= Rational(0))
        throw precondition_error("q_ta_witness: eps must be positive");

    std::vector<Rational> parts;
    mpz_class k = 0;
    Rational part;
    if (!q.is_zero()) {
        k = (q.abs() / eps).floor() + 1; // least k with |q|/k < eps
        if (!k.fits_ulong_p() || k.get_ui() > 10'000'000)
            throw precondition_error("q_ta_witness: eps too small to materialize the witness");
        part = q / Rational(k);
        parts.assign(k.get_ui(), part);
    }

    Rational sum;
    for (const auto& p : parts) sum += p;

    WitnessRecord rec;
    rec.claim = "q-ta";
    rec.inputs = json{{"q", q.to_string()}, {"eps", eps.to_string()}};
    rec.witness = json{{"k", k.get_str()}, {"part", part.to_string()}, {"sum", sum.to_string()}};
    if (k <= 128) {
        json arr = json::array();
        for (const auto& p : parts) arr.push_back(p.to_string());
        rec.witness["parts"] = arr;
    }
    bool minimal = q.is_zero() || k == 1 || q.abs() / Rational(k - 1) >= eps;
    rec.checks = {
        {"sum_equals_q", sum == q},
        {"parts_below_eps", q.is_zero() || part.abs() < eps},
        {"k_minimal", minimal},
    };
    return QTaWitnessResult{std::move(parts), std::move(rec)};
}

WitnessRecord replay_witness(const std::string& claim, const json& inputs) {
    if (claim == "smog-separator")
        return smog_separator(finseq_arg(inputs, "a"),
                              space_from_string(inputs.at("space").get<std::string>()))
            .record;
    if (claim == "unbounded-multiple")
        return unbounded_multiple(finseq_arg(inputs, "a"),
                                  space_from_string(inputs.at("space").get<std::string>()),
                                  Rational::parse(inputs.at("bound").get<std::string>()))
            .record;
    if (claim == "no-smog-chain")
        return quotient_no_smog_chain(Rational::parse(inputs.at("radius").get<std::string>())).record;
    if (claim == "not-ta")
        return not_ta_subgroup(space_from_string(inputs.at("space").get<std::string>())).record;
    if (claim == "td-separator")
        return td_separator(finseq_arg(inputs, "a")).record;
    if (claim == "q-ta")
        return q_ta_witness(Rational::parse(inputs.at("q").get<std::string>()),
                            Rational::parse(inputs.at("eps").get<std::string>()))
            .record;
    throw precondition_error("replay_witness: unknown claim '" + claim + "'");
}

} // namespace topolab
