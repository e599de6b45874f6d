#pragma once

#include "topolab/rational.hpp"

#include <json.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace topolab {

using json = nlohmann::json;

// Finitely supported rational sequence: only nonzero coordinates are stored,
// keyed by index. Structural equality is semantic equality.
class FinSeq {
public:
    FinSeq() = default;

    static FinSeq zero() { return FinSeq(); }
    /// value * e_n
    static FinSeq unit(std::size_t n, const Rational& value = Rational(1));

    const Rational& get(std::size_t n) const;
    void set(std::size_t n, const Rational& value);

    const std::map<std::size_t, Rational>& support() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    std::optional<std::size_t> min_support() const;
    std::optional<std::size_t> max_support() const;

    FinSeq operator-() const;
    FinSeq& operator+=(const FinSeq& o);
    friend FinSeq operator+(FinSeq a, const FinSeq& b) { a += b; return a; }
    friend FinSeq operator-(FinSeq a, const FinSeq& b) { a += -b; return a; }

    FinSeq scaled(const Rational& c) const;

    Rational sup_norm() const;
    Rational l1_norm() const;
    Rational coordinate_sum() const;

    friend bool operator==(const FinSeq& a, const FinSeq& b) { return a.entries_ == b.entries_; }

    json to_json() const;                 // {"support": {"n": "p/q", ...}}
    static FinSeq from_json(const json& j);

private:
    std::map<std::size_t, Rational> entries_;
};

// Eventually constant rational sequence: explicit prefix, then a constant
// tail value from coordinate prefix.size() on. Canonical form keeps the
// prefix minimal (its last entry differs from the tail).
class TailSeq {
public:
    TailSeq() = default;
    TailSeq(std::vector<Rational> prefix, Rational tail);

    static TailSeq zero() { return TailSeq(); }
    /// (0,...,0, v, v, ...) with n leading zeros.
    static TailSeq step(std::size_t n, const Rational& v);

    const Rational& get(std::size_t n) const;
    const std::vector<Rational>& prefix() const { return prefix_; }
    const Rational& tail() const { return tail_; }
    std::size_t prefix_length() const { return prefix_.size(); }
    bool is_zero() const { return prefix_.empty() && tail_.is_zero(); }

    TailSeq operator-() const;
    TailSeq& operator+=(const TailSeq& o);
    friend TailSeq operator+(TailSeq a, const TailSeq& b) { a += b; return a; }
    friend TailSeq operator-(TailSeq a, const TailSeq& b) { a += -b; return a; }

    TailSeq scaled(const Rational& c) const;

    Rational sup_norm() const;

    friend bool operator==(const TailSeq& a, const TailSeq& b) {
        return a.tail_ == b.tail_ && a.prefix_ == b.prefix_;
    }

    json to_json() const;                 // {"prefix": ["p/q",...], "tail": "p/q"}
    static TailSeq from_json(const json& j);

private:
    void canonicalize();

    std::vector<Rational> prefix_;
    Rational tail_;
};

/// Dispatches on the JSON shape: "support" key -> FinSeq, "prefix"/"tail" -> TailSeq.
bool json_is_finseq(const json& j);

} // namespace topolab
