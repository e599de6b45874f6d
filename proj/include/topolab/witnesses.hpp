#pragma once

#include "topolab/spaces.hpp"

#include <utility>
#include <vector>

namespace topolab {

// Certificate envelope for a single claim: the inputs, the produced witness
// data, and the list of named boolean checks that were evaluated. A record
// is only acceptable when every check passed; `replay_witness` recomputes
// the whole record from the inputs alone.
struct WitnessRecord {
    std::string claim;
    json inputs;
    json witness;
    std::vector<std::pair<std::string, bool>> checks;

    bool ok() const;
    void require_ok() const; // throws verification_error naming the first failure

    json to_json() const;
    static WitnessRecord from_json(const json& j);
};

struct SeparatorResult {
    SubgroupDescriptor descriptor;
    WitnessRecord record;
};

/// Open subgroup {b : b(n)=0} through the first nonzero coordinate of a;
/// excludes a, contains 0, and contains the ball of radius
/// min(|a(n)|, 1/(n+1)!) around 0.
SeparatorResult smog_separator(const FinSeq& a, SpaceKind s);

struct UnboundedMultipleResult {
    mpz_class m;
    WitnessRecord record;
};

/// Least m with sup_norm(m*a) > bound: the cyclic subgroup of a escapes
/// every bounded set.
UnboundedMultipleResult unbounded_multiple(const FinSeq& a, SpaceKind s, const Rational& bound);

struct NoSmogChainResult {
    std::size_t n;
    WitnessRecord record;
};

/// Least n with ||e_n/(n+1)|| = 1/(n+1) < r, together with the relation
/// (n+1)(e_n/(n+1)) = e_0 (mod S): e_0 mod S lies in every ball-generated
/// subgroup of the quotient.
NoSmogChainResult quotient_no_smog_chain(const Rational& r);

struct NotTaResult {
    SubgroupDescriptor descriptor;
    WitnessRecord record;
};

/// The open proper subgroup {b : b(1) in Z} mod S of the quotient of s.
NotTaResult not_ta_subgroup(SpaceKind s);

struct TdSeparatorResult {
    Rational r;
    WitnessRecord record;
};

/// A radius r > 0 whose coset ball misses a mod S, found by halving from 1.
/// The halving loop tests the closed ball, so the returned radius separates
/// with margin.
TdSeparatorResult td_separator(const FinSeq& a);

struct QTaWitnessResult {
    std::vector<Rational> parts;
    WitnessRecord record;
};

/// q written as k copies of q/k with every part below eps in absolute value
/// and k minimal: every ball around 0 generates the rationals.
QTaWitnessResult q_ta_witness(const Rational& q, const Rational& eps);

/// Recomputes the record for the given claim from its inputs.
WitnessRecord replay_witness(const std::string& claim, const json& inputs);

} // namespace topolab
