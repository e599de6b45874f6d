#include "topolab/sequences.hpp"

#include <algorithm>

namespace topolab {

namespace {
const Rational kZero;

Rational parse_rat(const json& j) {
    if (!j.is_string())
        throw precondition_error("sequence json: rationals must be strings");
    return Rational::parse(j.get<std::string>());
}
} // namespace

// ---------------------------------------------------------------- FinSeq

FinSeq FinSeq::unit(std::size_t n, const Rational& value) {
    FinSeq s;
    s.set(n, value);
    return s;
}

const Rational& FinSeq::get(std::size_t n) const {
    auto it = entries_.find(n);
    return it == entries_.end() ? kZero : it->second;
}

void FinSeq::set(std::size_t n, const Rational& value) {
    if (value.is_zero())
        entries_.erase(n);
    else
        entries_[n] = value;
}

std::optional<std::size_t> FinSeq::min_support() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.begin()->first;
}

std::optional<std::size_t> FinSeq::max_support() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.rbegin()->first;
}

FinSeq FinSeq::operator-() const {
    FinSeq r;
    for (const auto& [n, v] : entries_) r.entries_.emplace(n, -v);
    return r;
}

FinSeq& FinSeq::operator+=(const FinSeq& o) {
    for (const auto& [n, v] : o.entries_) set(n, get(n) + v);
    return *this;
}

FinSeq FinSeq::scaled(const Rational& c) const {
    FinSeq r;
    if (c.is_zero()) return r;
    for (const auto& [n, v] : entries_) r.entries_.emplace(n, v * c);
    return r;
}

Rational FinSeq::sup_norm() const {
    Rational best;
    for (const auto& [n, v] : entries_) best = std::max(best, v.abs());
    return best;
}

Rational FinSeq::l1_norm() const {
    Rational total;
    for (const auto& [n, v] : entries_) total += v.abs();
    return total;
}

Rational FinSeq::coordinate_sum() const {
    Rational total;
    for (const auto& [n, v] : entries_) total += v;
    return total;
}

json FinSeq::to_json() const {
    json sup = json::object();
    for (const auto& [n, v] : entries_) sup[std::to_string(n)] = v.to_string();
    return json{{"support", sup}};
}

FinSeq FinSeq::from_json(const json& j) {
    if (!j.is_object() || !j.contains("support") || !j["support"].is_object())
        throw precondition_error("FinSeq json: expected {\"support\": {...}}");
    FinSeq s;
    for (const auto& [key, val] : j["support"].items()) {
        std::size_t pos = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(key, &pos);
        } catch (const std::exception&) {
            throw precondition_error("FinSeq json: bad index '" + key + "'");
        }
        if (pos != key.size())
            throw precondition_error("FinSeq json: bad index '" + key + "'");
        Rational v = parse_rat(val);
        if (v.is_zero())
            throw precondition_error("FinSeq json: stored zero at index " + key);
        if (!s.get(n).is_zero())
            throw precondition_error("FinSeq json: duplicate index " + key);
        s.set(static_cast<std::size_t>(n), v);
    }
    return s;
}

// ---------------------------------------------------------------- TailSeq

TailSeq::TailSeq(std::vector<Rational> prefix, Rational tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    canonicalize();
}

TailSeq TailSeq::step(std::size_t n, const Rational& v) {
    return TailSeq(std::vector<Rational>(n, Rational(0)), v);
}

void TailSeq::canonicalize() {
    while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
}

const Rational& TailSeq::get(std::size_t n) const {
    return n < prefix_.size() ? prefix_[n] : tail_;
}

TailSeq TailSeq::operator-() const {
    TailSeq r;
    r.prefix_.reserve(prefix_.size());
    for (const auto& v : prefix_) r.prefix_.push_back(-v);
    r.tail_ = -tail_;
    return r;
}

TailSeq& TailSeq::operator+=(const TailSeq& o) {
    std::size_t len = std::max(prefix_.size(), o.prefix_.size());
    std::vector<Rational> p;
    p.reserve(len);
    for (std::size_t i = 0; i < len; ++i) p.push_back(get(i) + o.get(i));
    prefix_ = std::move(p);
    tail_ += o.tail_;
    canonicalize();
    return *this;
}

TailSeq TailSeq::scaled(const Rational& c) const {
    TailSeq r;
    for (const auto& v : prefix_) r.prefix_.push_back(v * c);
    r.tail_ = tail_ * c;
    r.canonicalize();
    return r;
}

Rational TailSeq::sup_norm() const {
    Rational best = tail_.abs();
    for (const auto& v : prefix_) best = std::max(best, v.abs());
    return best;
}

json TailSeq::to_json() const {
    json p = json::array();
    for (const auto& v : prefix_) p.push_back(v.to_string());
    return json{{"prefix", p}, {"tail", tail_.to_string()}};
}

TailSeq TailSeq::from_json(const json& j) {
    if (!j.is_object() || !j.contains("prefix") || !j.contains("tail") || !j["prefix"].is_array())
        throw precondition_error("TailSeq json: expected {\"prefix\": [...], \"tail\": \"p/q\"}");
    std::vector<Rational> p;
    for (const auto& v : j["prefix"]) p.push_back(parse_rat(v));
    return TailSeq(std::move(p), parse_rat(j["tail"]));
}

bool json_is_finseq(const json& j) {
    if (j.is_object() && j.contains("support")) return true;
    if (j.is_object() && j.contains("prefix") && j.contains("tail")) return false;
    throw precondition_error("sequence json: expected a support or prefix/tail object");
}

} // namespace topolab
