#pragma once

#include "topolab/sequences.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace topolab {

// Coordinate lattices of the sequence groups:
//   RLattice: a(n) is an integer multiple of 1/(n+1)! at every n.
//   SLattice: integer entries, finite support, coordinate sum zero.
//   OplusZ:   integer entries, finite support.
enum class LatticeKind { RLattice, SLattice, OplusZ };

// The groups themselves. Gamma0 and CCapR carry the sup metric, Gamma1 the
// l1 metric. Gamma0/Gamma1 elements are finitely supported; CCapR elements
// are eventually constant.
enum class SpaceKind { Gamma0, Gamma1, CCapR };

std::string to_string(LatticeKind k);
std::string to_string(SpaceKind s);
LatticeKind lattice_from_string(const std::string& s);
SpaceKind space_from_string(const std::string& s);

/// Metric norm attached to a space (sup for Gamma0/CCapR, l1 for Gamma1).
enum class NormKind { Sup, L1 };
NormKind metric_norm(SpaceKind s);

bool lattice_member(const FinSeq& a, LatticeKind k);
bool lattice_member(const TailSeq& a, LatticeKind k); // RLattice only

/// Coset-equality test of the quotient by k: a - b in k. k must be SLattice
/// or OplusZ.
bool lattice_equiv(const FinSeq& a, const FinSeq& b, LatticeKind k);

bool space_member(const FinSeq& a, SpaceKind s);
bool space_member(const TailSeq& a, SpaceKind s);

/// Exact invariant distance in s; both points must belong to s.
Rational metric_dist(const FinSeq& a, const FinSeq& b, SpaceKind s);
Rational metric_dist(const TailSeq& a, const TailSeq& b, SpaceKind s);

// Symbolic open subgroup of a sequence group:
//   CoordZero(n):  { b : b(n) = 0 }
//   CoordInt(n):   { b : b(n) in Z }
//   BallGenerated: subgroup generated by the open metric ball of the given
//                  radius around 0 in the given space.
struct SubgroupDescriptor {
    enum class Tag { CoordZero, CoordInt, BallGenerated };

    Tag tag = Tag::CoordZero;
    std::size_t coord = 0;       // CoordZero / CoordInt
    SpaceKind space = SpaceKind::Gamma0; // BallGenerated
    Rational radius;             // BallGenerated

    static SubgroupDescriptor coord_zero(std::size_t n);
    static SubgroupDescriptor coord_int(std::size_t n);
    static SubgroupDescriptor ball_generated(SpaceKind s, Rational r);

    json to_json() const;
    static SubgroupDescriptor from_json(const json& j);
};

/// Membership of a (or of its coset when modulo is given) in the described
/// subgroup. Throws precondition_error for ill-posed quotient descriptors:
/// CoordZero does not contain the modulus lattice.
bool subgroup_member(const FinSeq& a, const SubgroupDescriptor& g,
                     std::optional<LatticeKind> modulo);

struct CosetBallDecision {
    bool member = false;
    std::optional<FinSeq> witness;       // t in S with sup_norm(a - t) < r
    std::uint64_t combinations_tried = 0;

    json to_json() const;
};

/// Decides a mod S in (B0(0,r) cap s) mod S, where B0 is the sup-norm ball.
/// Exact and complete: per-coordinate integer candidates are enumerated and
/// the zero-sum residue is absorbed on fresh coordinates when |values| < r
/// allows it.
CosetBallDecision coset_ball_member(const FinSeq& a, const Rational& r, SpaceKind s);

/// Same search against the closed condition sup_norm(a - t) <= r. Used to
/// pick separating radii with margin.
CosetBallDecision coset_closed_ball_member(const FinSeq& a, const Rational& r, SpaceKind s);

} // namespace topolab
