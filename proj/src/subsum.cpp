#include "topolab/subsum.hpp"
#include "topolab/rng.hpp"

#include <algorithm>
#include <set>

namespace topolab {
namespace subsum {

std::string to_string(NuKind k) { return k == NuKind::L1 ? "L1" : "SUP"; }

NuKind nu_from_string(const std::string& s) {
    if (s == "L1") return NuKind::L1;
    if (s == "SUP") return NuKind::Sup;
    throw precondition_error("unknown valuation kind '" + s + "'");
}

SubsumInstance SubsumInstance::gamma1(Rational radius) {
    SubsumInstance i;
    i.name = "gamma1";
    i.space = SpaceKind::Gamma1;
    i.nu = NuKind::L1;
    i.radius = std::move(radius);
    i.tail_terms = false;
    return i;
}

SubsumInstance SubsumInstance::c_cap_r(Rational radius) {
    SubsumInstance i;
    i.name = "c_cap_r";
    i.space = SpaceKind::CCapR;
    i.nu = NuKind::Sup;
    i.radius = std::move(radius);
    i.tail_terms = true;
    return i;
}

SubsumInstance SubsumInstance::by_name(const std::string& name, Rational radius) {
    if (radius <= Rational(0))
        throw precondition_error("subsum instance: radius must be positive");
    if (name == "gamma1") return gamma1(std::move(radius));
    if (name == "c_cap_r") return c_cap_r(std::move(radius));
    throw precondition_error("unknown subsum instance '" + name + "'");
}

FinSeq SubsumInstance::term_fin(std::size_t n) const {
    if (tail_terms) throw precondition_error("instance terms are eventually-constant");
    return FinSeq::unit(n, term_nu(n));
}

TailSeq SubsumInstance::term_tail(std::size_t n) const {
    if (!tail_terms) throw precondition_error("instance terms are finitely supported");
    return TailSeq::step(n, term_nu(n));
}

Rational SubsumInstance::term_nu(std::size_t n) const {
    return Rational(mpz_class(1), mpz_class(n) + 1);
}

json SubsumInstance::to_json() const {
    return json{{"name", name},
                {"space", topolab::to_string(space)},
                {"nu", to_string(nu)},
                {"radius", radius.to_string()},
                {"rhoUnbounded", true}};
}

SubsumInstance SubsumInstance::from_json(const json& j) {
    auto inst = by_name(j.at("name").get<std::string>(),
                        Rational::parse(j.at("radius").get<std::string>()));
    if (j.at("space").get<std::string>() != topolab::to_string(inst.space) ||
        j.at("nu").get<std::string>() != to_string(inst.nu) ||
        j.at("rhoUnbounded").get<bool>() != true)
        throw verification_error("subsum instance: stored fields do not match the named instance");
    return inst;
}

// ------------------------------------------------------------- norms

namespace {

Rational nu_of(const SubsumInstance& inst, const FinSeq& x) {
    return inst.nu == NuKind::L1 ? x.l1_norm() : x.sup_norm();
}

Rational nu_of(const SubsumInstance& inst, const TailSeq& x) {
    if (inst.nu == NuKind::L1)
        throw precondition_error("l1 valuation undefined for eventually-constant sequences");
    return x.sup_norm();
}

Rational dist0(const SubsumInstance& inst, const FinSeq& x) {
    return metric_norm(inst.space) == NormKind::L1 ? x.l1_norm() : x.sup_norm();
}

Rational dist0(const SubsumInstance&, const TailSeq& x) {
    return x.sup_norm();
}

template <class Seq>
Seq term(const SubsumInstance& inst, std::size_t n);

template <>
FinSeq term<FinSeq>(const SubsumInstance& inst, std::size_t n) { return inst.term_fin(n); }

template <>
TailSeq term<TailSeq>(const SubsumInstance& inst, std::size_t n) { return inst.term_tail(n); }

Rational probe_dist(const SubsumInstance& inst, const FinSeq& c, std::size_t n) {
    return dist0(inst, c + inst.term_fin(n));
}

// d(0, c + a_n) for a tail-vector term, evaluated coordinatewise without
// materializing the n-long term.
Rational probe_dist(const SubsumInstance& inst, const TailSeq& c, std::size_t n) {
    Rational v = inst.term_nu(n);
    Rational best;
    std::size_t len = c.prefix_length();
    for (std::size_t i = 0; i < len; ++i) {
        Rational x = c.get(i);
        if (i >= n) x += v;
        best = std::max(best, x.abs());
    }
    if (n > len) best = std::max(best, c.tail().abs());      // coords len..n-1
    best = std::max(best, (c.tail() + v).abs());             // coords >= max(len, n)
    return best;
}

// Least index in [lo, cap] satisfying pred. When the underlying distance is
// antitone in the index the predicate is monotone, so a gallop plus binary
// search finds the same index the linear scan would.
template <class Pred>
std::optional<std::size_t> find_least(Pred pred, std::size_t lo, std::size_t cap, bool monotone) {
    if (lo > cap) return std::nullopt;
    if (!monotone) {
        for (std::size_t n = lo; n <= cap; ++n)
            if (pred(n)) return n;
        return std::nullopt;
    }
    if (pred(lo)) return lo;
    std::size_t last_false = lo, span = 1;
    while (true) {
        if (last_false >= cap) return std::nullopt;
        std::size_t probe = (cap - last_false > span) ? last_false + span : cap;
        if (pred(probe)) {
            std::size_t a = last_false + 1, b = probe;
            while (a < b) {
                std::size_t mid = a + (b - a) / 2;
                if (pred(mid)) b = mid; else a = mid + 1;
            }
            return a;
        }
        last_false = probe;
        if (span <= cap) span *= 2;
    }
}

bool in_space(const SubsumInstance& inst, const FinSeq& x) { return space_member(x, inst.space); }
bool in_space(const SubsumInstance& inst, const TailSeq& x) { return space_member(x, inst.space); }

template <class Seq>
json premises_report(const SubsumInstance& inst, const PremiseParams& p) {
    json rep;
    rep["instance"] = inst.to_json();

    Rational partial;
    bool terms_ok = true, antitone_ok = true;
    for (std::size_t n = 0; n <= p.divergence_terms; ++n) {
        partial += inst.term_nu(n);
        Seq a = term<Seq>(inst, n);
        if (!in_space(inst, a) || !(inst.term_nu(n) == nu_of(inst, a))) terms_ok = false;
        if (n > 0 && inst.term_nu(n) > inst.term_nu(n - 1)) antitone_ok = false;
    }
    bool div_ok = partial > p.divergence_bound;
    rep["div"] = json{{"terms", p.divergence_terms},
                      {"bound", p.divergence_bound.to_string()},
                      {"partialSum", partial.to_string()},
                      {"pass", div_ok}};
    rep["termsInSpace"] = json{{"checked", p.divergence_terms + 1}, {"pass", terms_ok}};
    rep["termNormsAntitone"] = json{{"checked", p.divergence_terms + 1}, {"pass", antitone_ok}};

    SplitMix64 rng(p.seed);
    bool change_ok = true, ident_ok = true;
    json change_violation = nullptr, ident_violation = nullptr;
    std::size_t samples = 0;
    for (std::size_t t = 0; t < p.trials; ++t) {
        std::size_t count = 1 + rng.below(6);
        std::set<std::size_t> x_set;
        while (x_set.size() < count) x_set.insert(rng.below(p.max_index + 1));

        Seq total{};
        Rational nu_sum;
        json x_json = json::array();
        for (std::size_t n : x_set) {
            total += term<Seq>(inst, n);
            nu_sum += inst.term_nu(n);
            x_json.push_back(n);
        }
        Rational nu_total = nu_of(inst, total);
        ++samples;
        if (change_ok && nu_total != nu_sum) {
            change_ok = false;
            change_violation = json{{"X", x_json},
                                    {"nuOfSum", nu_total.to_string()},
                                    {"sumOfNu", nu_sum.to_string()}};
        }
        Rational d0 = dist0(inst, total);
        if (ident_ok && nu_total != d0) {
            ident_ok = false;
            ident_violation = json{{"X", x_json},
                                   {"nu", nu_total.to_string()},
                                   {"dist", d0.to_string()}};
        }
    }
    rep["change"] = json{{"trials", p.trials},
                         {"maxIndex", p.max_index},
                         {"seed", p.seed},
                         {"pass", change_ok},
                         {"violation", change_violation}};
    rep["convBound"] = json{{"mode", "exact identity nu(x) = d(0,x) on sampled subsums"},
                            {"samples", samples},
                            {"pass", ident_ok},
                            {"violation", ident_violation}};
    rep["allPass"] = div_ok && terms_ok && antitone_ok && change_ok && ident_ok;
    return rep;
}

template <class Seq>
Trace<Seq> run_construct(const SubsumInstance& inst, std::size_t depth, std::size_t cap,
                         bool& cap_hit, std::size_t& achieved) {
    Trace<Seq> tr;
    tr.points.push_back(Seq{});
    std::int64_t last_n = -1;
    const Rational& r = inst.radius;

    for (std::size_t m = 0; m < depth; ++m) {
        const Seq& cm = tr.points.back();
        auto inside_with = [&](std::size_t n) { return probe_dist(inst, cm, n) < r; };
        auto nprime = find_least(inside_with, static_cast<std::size_t>(last_n + 1), cap,
                                 inst.term_norms_antitone);
        if (!nprime) {
            cap_hit = true;
            break;
        }

        Seq running = cm + term<Seq>(inst, *nprime);
        if (!(dist0(inst, running) < r))
            throw verification_error("construct: entry term left the ball");

        std::size_t i = *nprime;
        std::optional<Seq> escort;
        while (true) {
            if (i + 1 > cap) {
                cap_hit = true;
                break;
            }
            Seq candidate = running + term<Seq>(inst, i + 1);
            if (dist0(inst, candidate) >= r) {
                escort = std::move(candidate);
                break;
            }
            running = std::move(candidate);
            ++i;
        }
        if (!escort) break;

        Rational nu_c = nu_of(inst, running);
        Rational prev = tr.nu_values.empty() ? Rational(0) : tr.nu_values.back();
        if (!(nu_c > prev))
            throw verification_error("construct: nu failed to increase");
        if (inst.nu_equals_metric && !(nu_c < r))
            throw verification_error("construct: nu reached the radius bound");

        tr.nprime.push_back(*nprime);
        tr.nindex.push_back(i);
        tr.escorts.push_back(std::move(*escort));
        tr.nu_values.push_back(std::move(nu_c));
        tr.points.push_back(std::move(running));
        last_n = static_cast<std::int64_t>(i);
        achieved = m + 1;
    }
    return tr;
}

template <class Seq>
VerifyOutcome verify_trace(const SubsumInstance& inst, const Trace<Seq>& tr,
                           const std::optional<Rational>& cauchy_tol) {
    auto fail = [](std::string msg) { return VerifyOutcome{false, std::move(msg)}; };
    auto step_tag = [](std::size_t m) { return " (step " + std::to_string(m) + ")"; };
    const Rational& r = inst.radius;
    std::size_t M = tr.nprime.size();

    if (tr.nindex.size() != M || tr.escorts.size() != M || tr.nu_values.size() != M ||
        tr.points.size() != M + 1)
        return fail("structure: list lengths inconsistent");
    if (!(r > Rational(0))) return fail("structure: radius not positive");
    if (!(tr.points[0] == Seq{})) return fail("structure: c_0 is not the zero sequence");

    Seq rec{};
    std::int64_t last_n = -1;
    Rational prev_nu(0);
    Rational prev_term_norm;
    for (std::size_t m = 1; m <= M; ++m) {
        std::size_t np = tr.nprime[m - 1], ni = tr.nindex[m - 1];
        if (!(static_cast<std::int64_t>(np) > last_n))
            return fail("interleaving: n' must exceed the previous n" + step_tag(m));
        if (!(ni >= np))
            return fail("interleaving: n must be at least n'" + step_tag(m));

        Seq entry = rec + term<Seq>(inst, np);
        if (!(dist0(inst, entry) < r))
            return fail("membership at n'" + step_tag(m));

        Seq point = std::move(entry);
        for (std::size_t n = np + 1; n <= ni; ++n) point += term<Seq>(inst, n);
        if (!(dist0(inst, point) < r))
            return fail("ball membership at c_m" + step_tag(m));
        if (!in_space(inst, point))
            return fail("point outside the space" + step_tag(m));

        Seq escort = point + term<Seq>(inst, ni + 1);
        if (!(dist0(inst, escort) >= r))
            return fail("exit at escort" + step_tag(m));
        if (!in_space(inst, escort))
            return fail("escort outside the space" + step_tag(m));

        if (!(tr.points[m] == point))
            return fail("c_m recomputation" + step_tag(m));
        if (!(tr.escorts[m - 1] == escort))
            return fail("escort recomputation" + step_tag(m));

        Rational nu_rec = nu_of(inst, point);
        if (!(tr.nu_values[m - 1] == nu_rec))
            return fail("nu recomputation" + step_tag(m));
        if (!(nu_rec > prev_nu))
            return fail("nu strictly increasing" + step_tag(m));
        if (inst.nu_equals_metric && !(nu_rec < r))
            return fail("nu below radius" + step_tag(m));

        Rational esc_dist = dist0(inst, escort - point);
        Rational term_norm = dist0(inst, term<Seq>(inst, ni + 1));
        if (!(esc_dist == term_norm))
            return fail("escort distance equals term norm" + step_tag(m));
        if (inst.term_norms_antitone && m >= 2 && !(term_norm <= prev_term_norm))
            return fail("term norms antitone across steps" + step_tag(m));

        prev_term_norm = std::move(term_norm);
        prev_nu = std::move(nu_rec);
        last_n = static_cast<std::int64_t>(ni);
        rec = std::move(point);
    }

    if (cauchy_tol && M >= 1) {
        Rational gap = tr.nu_values[M - 1] - (M >= 2 ? tr.nu_values[M - 2] : Rational(0));
        if (!(gap < *cauchy_tol))
            return fail("nu cauchy gap below tolerance");
    }
    return VerifyOutcome{};
}

template <class Seq>
json trace_to_json(const Trace<Seq>& tr) {
    json j;
    j["nprime"] = tr.nprime;
    j["n"] = tr.nindex;
    json c = json::array(), e = json::array(), nu = json::array();
    for (const auto& p : tr.points) c.push_back(p.to_json());
    for (const auto& p : tr.escorts) e.push_back(p.to_json());
    for (const auto& v : tr.nu_values) nu.push_back(v.to_string());
    j["c"] = c;
    j["escort"] = e;
    j["nu"] = nu;
    return j;
}

template <class Seq>
Trace<Seq> trace_from_json(const json& j) {
    Trace<Seq> tr;
    tr.nprime = j.at("nprime").get<std::vector<std::size_t>>();
    tr.nindex = j.at("n").get<std::vector<std::size_t>>();
    for (const auto& s : j.at("c")) tr.points.push_back(Seq::from_json(s));
    for (const auto& s : j.at("escort")) tr.escorts.push_back(Seq::from_json(s));
    for (const auto& s : j.at("nu")) tr.nu_values.push_back(Rational::parse(s.get<std::string>()));
    return tr;
}

} // namespace

json check_premises(const SubsumInstance& inst, const PremiseParams& params) {
    return inst.tail_terms ? premises_report<TailSeq>(inst, params)
                           : premises_report<FinSeq>(inst, params);
}

SubsumCertificate construct(const SubsumInstance& inst, std::size_t depth,
                            unsigned long index_cap, bool allow_partial, json premises) {
    if (inst.radius <= Rational(0))
        throw precondition_error("construct: radius must be positive");
    if (index_cap == 0)
        throw precondition_error("construct: index cap must be positive");
    if (!premises.is_null() && premises.contains("allPass") && !premises["allPass"].get<bool>())
        throw precondition_error("construct: premise checks failed");

    SubsumCertificate cert;
    cert.instance = inst;
    cert.requested_depth = depth;
    cert.index_cap = index_cap;
    cert.premises = std::move(premises);

    if (inst.tail_terms)
        cert.trace = run_construct<TailSeq>(inst, depth, index_cap, cert.cap_hit, cert.achieved_depth);
    else
        cert.trace = run_construct<FinSeq>(inst, depth, index_cap, cert.cap_hit, cert.achieved_depth);

    if (cert.cap_hit && !allow_partial)
        throw search_exhausted("construct: index cap " + std::to_string(index_cap) +
                               " hit after depth " + std::to_string(cert.achieved_depth));
    return cert;
}

json SubsumCertificate::to_json() const {
    json j;
    j["instance"] = instance.to_json();
    j["requestedDepth"] = requested_depth;
    j["depth"] = achieved_depth;
    j["capHit"] = cap_hit;
    j["indexCap"] = index_cap;
    j["premises"] = premises;
    json t = std::visit([](const auto& tr) { return trace_to_json(tr); }, trace);
    j.update(t);
    return j;
}

SubsumCertificate SubsumCertificate::from_json(const json& j) {
    SubsumCertificate cert;
    cert.instance = SubsumInstance::from_json(j.at("instance"));
    cert.requested_depth = j.at("requestedDepth").get<std::size_t>();
    cert.achieved_depth = j.at("depth").get<std::size_t>();
    cert.cap_hit = j.at("capHit").get<bool>();
    cert.index_cap = j.at("indexCap").get<unsigned long>();
    cert.premises = j.value("premises", json(nullptr));
    if (cert.instance.tail_terms)
        cert.trace = trace_from_json<TailSeq>(j);
    else
        cert.trace = trace_from_json<FinSeq>(j);
    return cert;
}

VerifyOutcome verify_certificate(const SubsumCertificate& cert,
                                 const std::optional<Rational>& cauchy_tol) {
    auto outcome = std::visit(
        [&](const auto& tr) { return verify_trace(cert.instance, tr, cauchy_tol); }, cert.trace);
    if (!outcome.ok) return outcome;
    std::size_t M = std::visit([](const auto& tr) { return tr.nprime.size(); }, cert.trace);
    if (M != cert.achieved_depth)
        return VerifyOutcome{false, "structure: depth does not match list length"};
    return outcome;
}

} // namespace subsum
} // namespace topolab
