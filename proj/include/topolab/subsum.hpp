#pragma once

#include "topolab/spaces.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace topolab {
namespace subsum {

/// Valuation applied to finite subsums.
enum class NuKind { L1, Sup };

std::string to_string(NuKind k);
NuKind nu_from_string(const std::string& s);

// A subsum space: a null sequence of terms in a metric group together with
// a valuation nu and a ball radius. Two built-in instances:
//   gamma1:  a_n = e_n/(n+1) in Gamma1, nu = l1 (= the metric norm);
//   c_cap_r: a_n = (0,...,0,1,1,...)/(n+1) in c cap R, nu = sup (= the
//            metric norm).
// For both, nu(x) = d(0,x) identically and term norms are antitone, which
// the engine exploits for monotone index searches.
struct SubsumInstance {
    std::string name;
    SpaceKind space = SpaceKind::Gamma1;
    NuKind nu = NuKind::L1;
    Rational radius;
    bool tail_terms = false;         // terms are TailSeq instead of FinSeq
    bool nu_equals_metric = true;
    bool term_norms_antitone = true;

    static SubsumInstance gamma1(Rational radius);
    static SubsumInstance c_cap_r(Rational radius);
    static SubsumInstance by_name(const std::string& name, Rational radius);

    FinSeq term_fin(std::size_t n) const;
    TailSeq term_tail(std::size_t n) const;
    Rational term_nu(std::size_t n) const; // 1/(n+1) for both built-ins

    json to_json() const;
    static SubsumInstance from_json(const json& j);
};

constexpr unsigned long kDefaultIndexCap = 1'000'000;

struct PremiseParams {
    std::size_t divergence_terms = 50;   // partial sum length for the divergence check
    Rational divergence_bound = Rational(2);
    std::size_t trials = 100;            // random finite index sets for additivity
    std::size_t max_index = 50;
    std::uint64_t seed = 1;
};

/// Checks the four premises at desk scale and reports pass/fail per premise
/// with the violating sample if any. For the built-ins, the convergence and
/// boundedness premises hold as the exact identity nu(x) = d(0,x) on every
/// generated subsum, and are checked as such.
json check_premises(const SubsumInstance& inst, const PremiseParams& params);

// Transcript of the inductive first-exit construction:
//   c_m      = sum over k <= m of the blocks a_{n'_k} + ... + a_{n_k},
//   escort_m = c_m + a_{n_m + 1}  (outside the ball),
// with n_0 = -1 implicit. Lists hold steps 1..M; points hold c_0..c_M.
template <class Seq>
struct Trace {
    std::vector<std::size_t> nprime;
    std::vector<std::size_t> nindex;
    std::vector<Seq> points;
    std::vector<Seq> escorts;
    std::vector<Rational> nu_values;
};

struct SubsumCertificate {
    SubsumInstance instance;
    std::size_t requested_depth = 0;
    std::size_t achieved_depth = 0;
    bool cap_hit = false;
    unsigned long index_cap = kDefaultIndexCap;
    std::variant<Trace<FinSeq>, Trace<TailSeq>> trace;
    json premises; // report of check_premises, or null

    json to_json() const;
    static SubsumCertificate from_json(const json& j);
};

/// Runs the greedy construction: n'_{m+1} is the least index past n_m whose
/// term keeps c_m inside the ball, n_{m+1} the last index before the running
/// block sum first leaves it. Deterministic. Throws search_exhausted when the
/// index cap is hit before the requested depth unless allow_partial is set,
/// in which case the certificate reports the achieved depth.
SubsumCertificate construct(const SubsumInstance& inst, std::size_t depth,
                            unsigned long index_cap = kDefaultIndexCap,
                            bool allow_partial = false,
                            json premises = json(nullptr));

struct VerifyOutcome {
    bool ok = true;
    std::string first_failure;
};

/// Recomputes every point from the index lists and re-asserts all ball
/// membership/exit conditions, value monotonicity and the stored data. Does
/// not rerun the construction search. When cauchy_tol is given, the final
/// nu gap nu(c_M) - nu(c_{M-1}) must be below it.
VerifyOutcome verify_certificate(const SubsumCertificate& cert,
                                 const std::optional<Rational>& cauchy_tol = std::nullopt);

} // namespace subsum
} // namespace topolab
