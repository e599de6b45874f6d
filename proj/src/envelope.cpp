#include "topolab/envelope.hpp"

#include "topolab/abelian.hpp"
#include "topolab/finite_ops.hpp"
#include "topolab/sequences.hpp"
#include "topolab/spaces.hpp"
#include "topolab/subsum.hpp"
#include "topolab/witnesses.hpp"

namespace topolab {
namespace cert {

json CertificateEnvelope::to_json() const {
    return json{{"schemaVersion", schema_version},
                {"command", command},
                {"inputs", inputs},
                {"payload", payload},
                {"verified", verified}};
}

CertificateEnvelope CertificateEnvelope::from_json(const json& j) {
    if (!j.is_object())
        throw schema_error("envelope: expected a JSON object");
    for (const char* key : {"schemaVersion", "command", "inputs", "payload", "verified"})
        if (!j.contains(key))
            throw schema_error(std::string("envelope: missing field '") + key + "'");
    if (!j["schemaVersion"].is_string() || j["schemaVersion"].get<std::string>() != kSchemaVersion)
        throw schema_error("envelope: unsupported schema version");
    CertificateEnvelope env;
    env.schema_version = j["schemaVersion"].get<std::string>();
    env.command = j["command"].get<std::string>();
    env.inputs = j["inputs"];
    env.payload = j["payload"];
    if (!j["verified"].is_boolean()) throw schema_error("envelope: verified must be boolean");
    env.verified = j["verified"].get<bool>();
    return env;
}

namespace {

Rational rat(const json& inputs, const char* key) {
    return Rational::parse(inputs.at(key).get<std::string>());
}

std::optional<LatticeKind> optional_lattice(const json& inputs, const char* key) {
    if (!inputs.contains(key) || inputs.at(key).is_null()) return std::nullopt;
    return lattice_from_string(inputs.at(key).get<std::string>());
}

json seq_add(const json& inputs) {
    const json& a = inputs.at("a");
    const json& b = inputs.at("b");
    if (json_is_finseq(a) != json_is_finseq(b))
        throw precondition_error("seq add: operands must share a representation kind");
    if (json_is_finseq(a))
        return json{{"result", (FinSeq::from_json(a) + FinSeq::from_json(b)).to_json()}};
    return json{{"result", (TailSeq::from_json(a) + TailSeq::from_json(b)).to_json()}};
}

json seq_sup_norm(const json& inputs) {
    const json& a = inputs.at("a");
    Rational v = json_is_finseq(a) ? FinSeq::from_json(a).sup_norm() : TailSeq::from_json(a).sup_norm();
    return json{{"value", v.to_string()}};
}

json seq_l1_norm(const json& inputs) {
    return json{{"value", FinSeq::from_json(inputs.at("a")).l1_norm().to_string()}};
}

json seq_lattice_member(const json& inputs) {
    LatticeKind k = lattice_from_string(inputs.at("lattice").get<std::string>());
    const json& a = inputs.at("a");
    bool member = json_is_finseq(a) ? lattice_member(FinSeq::from_json(a), k)
                                    : lattice_member(TailSeq::from_json(a), k);
    return json{{"member", member}};
}

json seq_equiv(const json& inputs) {
    LatticeKind k = lattice_from_string(inputs.at("lattice").get<std::string>());
    return json{{"equivalent", lattice_equiv(FinSeq::from_json(inputs.at("a")),
                                             FinSeq::from_json(inputs.at("b")), k)}};
}

json seq_member(const json& inputs) {
    SpaceKind s = space_from_string(inputs.at("space").get<std::string>());
    const json& a = inputs.at("a");
    bool member = json_is_finseq(a) ? space_member(FinSeq::from_json(a), s)
                                    : space_member(TailSeq::from_json(a), s);
    return json{{"member", member}};
}

json seq_dist(const json& inputs) {
    SpaceKind s = space_from_string(inputs.at("space").get<std::string>());
    const json& a = inputs.at("a");
    const json& b = inputs.at("b");
    if (json_is_finseq(a) != json_is_finseq(b))
        throw precondition_error("seq dist: operands must share a representation kind");
    Rational d = json_is_finseq(a)
                     ? metric_dist(FinSeq::from_json(a), FinSeq::from_json(b), s)
                     : metric_dist(TailSeq::from_json(a), TailSeq::from_json(b), s);
    return json{{"distance", d.to_string()}};
}

json seq_subgroup_member(const json& inputs) {
    auto desc = SubgroupDescriptor::from_json(inputs.at("subgroup"));
    return json{{"member", subgroup_member(FinSeq::from_json(inputs.at("a")), desc,
                                           optional_lattice(inputs, "modulo"))}};
}

json seq_coset_ball(const json& inputs) {
    SpaceKind s = space_from_string(inputs.at("space").get<std::string>());
    auto decision = coset_ball_member(FinSeq::from_json(inputs.at("a")), rat(inputs, "radius"), s);
    return decision.to_json();
}

json witness_payload(const std::string& claim, const json& inputs) {
    for (const char* known : {"smog-separator", "unbounded-multiple", "no-smog-chain", "not-ta",
                              "td-separator", "q-ta"})
        if (claim == known) return replay_witness(claim, inputs).to_json();
    throw schema_error("unknown command 'witness." + claim + "'");
}

json non0_premises(const json& inputs) {
    auto inst = subsum::SubsumInstance::by_name(inputs.at("instance").get<std::string>(),
                                                rat(inputs, "radius"));
    subsum::PremiseParams p;
    p.divergence_terms = inputs.at("divTerms").get<std::size_t>();
    p.divergence_bound = rat(inputs, "divBound");
    p.trials = inputs.at("trials").get<std::size_t>();
    p.max_index = inputs.at("maxIndex").get<std::size_t>();
    p.seed = inputs.at("seed").get<std::uint64_t>();
    return subsum::check_premises(inst, p);
}

json non0_construct(const json& inputs) {
    auto inst = subsum::SubsumInstance::by_name(inputs.at("instance").get<std::string>(),
                                                rat(inputs, "radius"));
    subsum::PremiseParams p; // defaults; embedded into the certificate
    json premises = subsum::check_premises(inst, p);
    auto cert = subsum::construct(inst, inputs.at("depth").get<std::size_t>(),
                                  inputs.at("indexCap").get<unsigned long>(),
                                  inputs.at("allowPartial").get<bool>(), premises);
    return cert.to_json();
}

json group_from_input(const json& inputs, const char* key = "group") {
    return inputs.at(key);
}

std::vector<finite::Mask> base_from_json(const json& sets, unsigned order) {
    std::vector<finite::Mask> base;
    for (const auto& s : sets)
        base.push_back(finite::mask_from_elements(s.get<std::vector<unsigned>>(), order));
    return base;
}

json finite_report(const json& inputs) {
    auto g = finite::FiniteGroup::from_json(group_from_input(inputs));
    finite::FilteredGroup fg(g, base_from_json(inputs.at("base"), g.order()));
    return finite::property_report(fg).to_json();
}

json finite_embed(const json& inputs) {
    auto g = finite::FiniteGroup::from_json(group_from_input(inputs));
    finite::FilteredGroup fg(g, base_from_json(inputs.at("base"), g.order()));
    return finite::sym_embedding(fg).to_json();
}

json finite_metric(const json& inputs) {
    auto g = finite::FiniteGroup::from_json(group_from_input(inputs));
    finite::SubgroupChain chain(g, base_from_json(inputs.at("chain"), g.order()));

    unsigned n = g.order();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    json table = json::array();
    for (unsigned x = 0; x < n; ++x) {
        json row = json::array();
        for (unsigned y = 0; y < n; ++y) {
            d[x][y] = finite::na_metric_from_chain(g, chain, x, y);
            row.push_back(d[x][y].to_string());
        }
        table.push_back(row);
    }

    bool strong_triangle = true, right_invariance = true, identity_iff_zero = true;
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            if ((d[x][y] == Rational(0)) != (x == y)) identity_iff_zero = false;
            for (unsigned z = 0; z < n; ++z) {
                if (d[x][y] > std::max(d[x][z], d[z][y])) strong_triangle = false;
                if (d[g.op(x, z)][g.op(y, z)] != d[x][y]) right_invariance = false;
            }
        }

    return json{{"table", table},
                {"strongTriangle", strong_triangle},
                {"rightInvariance", right_invariance},
                {"identityOfIndiscernibles", identity_iff_zero}};
}

json finite_extend(const json& inputs) {
    auto g = finite::FiniteGroup::from_json(group_from_input(inputs));
    auto n = finite::mask_from_elements(inputs.at("normal").get<std::vector<unsigned>>(), g.order());
    auto u = finite::mask_from_elements(inputs.at("u").get<std::vector<unsigned>>(), g.order());
    return finite::extension_open_subgroup(g, n, u).to_json();
}

json finite_factorize(const json& inputs) {
    std::vector<finite::FiniteGroup> factors;
    if (inputs.contains("orders"))
        for (unsigned n : inputs.at("orders").get<std::vector<unsigned>>())
            factors.push_back(finite::FiniteGroup::cyclic(n));
    else
        for (const auto& gj : inputs.at("factors"))
            factors.push_back(finite::FiniteGroup::from_json(gj));
    auto result = finite::product_ta_factorization(
        factors, inputs.at("j").get<std::vector<std::size_t>>(),
        inputs.at("u").get<std::vector<std::vector<unsigned>>>(),
        inputs.at("g").get<std::vector<unsigned>>());
    return result.to_json();
}

json abelian_prufer(const json& inputs) {
    abelian::CyclicDecomposition dec{inputs.at("orders").get<std::vector<unsigned long>>()};
    auto emb = abelian::prufer_embedding(dec);
    return emb.report.to_json();
}

json abelian_quotient_embed(const json& inputs) {
    finite::FiniteGroup g =
        inputs.contains("orders")
            ? [&] {
                  auto orders = inputs.at("orders").get<std::vector<unsigned>>();
                  auto acc = finite::FiniteGroup::cyclic(orders.at(0));
                  for (std::size_t i = 1; i < orders.size(); ++i)
                      acc = finite::FiniteGroup::direct_product(acc, finite::FiniteGroup::cyclic(orders[i]));
                  return acc;
              }()
            : finite::FiniteGroup::from_json(group_from_input(inputs));
    return abelian::quotient_product_embedding(g, base_from_json(inputs.at("base"), g.order()))
        .to_json();
}

json abelian_orders(const json& inputs) {
    auto g = finite::FiniteGroup::from_json(group_from_input(inputs));
    return json{{"orders", abelian::orders_from_abelian_cayley(g)}};
}

bool checks_all_true(const json& payload) {
    for (const auto& c : payload.at("checks"))
        if (!c.at(1).get<bool>()) return false;
    return true;
}

} // namespace

json compute_payload(const std::string& command, const json& inputs) {
    if (command == "seq.add") return seq_add(inputs);
    if (command == "seq.sup-norm") return seq_sup_norm(inputs);
    if (command == "seq.l1-norm") return seq_l1_norm(inputs);
    if (command == "seq.lattice-member") return seq_lattice_member(inputs);
    if (command == "seq.equiv") return seq_equiv(inputs);
    if (command == "seq.member") return seq_member(inputs);
    if (command == "seq.dist") return seq_dist(inputs);
    if (command == "seq.subgroup-member") return seq_subgroup_member(inputs);
    if (command == "seq.coset-ball") return seq_coset_ball(inputs);
    if (command.rfind("witness.", 0) == 0) return witness_payload(command.substr(8), inputs);
    if (command == "non0.premises") return non0_premises(inputs);
    if (command == "non0.construct") return non0_construct(inputs);
    if (command == "finite.report") return finite_report(inputs);
    if (command == "finite.embed") return finite_embed(inputs);
    if (command == "finite.metric") return finite_metric(inputs);
    if (command == "finite.extend") return finite_extend(inputs);
    if (command == "finite.factorize") return finite_factorize(inputs);
    if (command == "abelian.prufer") return abelian_prufer(inputs);
    if (command == "abelian.quotient-embed") return abelian_quotient_embed(inputs);
    if (command == "abelian.orders") return abelian_orders(inputs);
    throw schema_error("unknown command '" + command + "'");
}

bool payload_verified(const std::string& command, const json& payload) {
    if (command.rfind("witness.", 0) == 0) return checks_all_true(payload);
    if (command == "non0.premises") return payload.at("allPass").get<bool>();
    if (command == "non0.construct") {
        auto cert = subsum::SubsumCertificate::from_json(payload);
        return subsum::verify_certificate(cert).ok;
    }
    if (command == "finite.embed" || command == "abelian.prufer" ||
        command == "abelian.quotient-embed")
        return payload.at("homomorphismOk").get<bool>() && payload.at("injectiveOk").get<bool>();
    if (command == "finite.metric")
        return payload.at("strongTriangle").get<bool>() &&
               payload.at("rightInvariance").get<bool>();
    if (command == "finite.extend")
        return payload.at("wSquaredInWM").get<bool>() && payload.at("hInsideU").get<bool>();
    if (command == "finite.factorize")
        return payload.at("recompositionOk").get<bool>() &&
               payload.at("lettersInNeighborhoodOk").get<bool>();
    return true; // pure computations
}

CertificateEnvelope emit(const std::string& command, const json& inputs) {
    CertificateEnvelope env;
    env.command = command;
    env.inputs = inputs;
    env.payload = compute_payload(command, inputs);
    env.verified = payload_verified(command, env.payload);
    return env;
}

std::string first_difference(const json& a, const json& b, const std::string& path) {
    if (a == b) return "";
    if (a.type() != b.type()) return path;
    if (a.is_object()) {
        for (const auto& [key, value] : a.items()) {
            if (!b.contains(key)) return path + "." + key;
            auto d = first_difference(value, b.at(key), path + "." + key);
            if (!d.empty()) return d;
        }
        for (const auto& [key, value] : b.items())
            if (!a.contains(key)) return path + "." + key;
        return path;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) return path + ".length";
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto d = first_difference(a[i], b[i], path + "[" + std::to_string(i) + "]");
            if (!d.empty()) return d;
        }
        return path;
    }
    return path;
}

namespace {

VerifyReport verify_construct_envelope(const CertificateEnvelope& env) {
    auto cert = subsum::SubsumCertificate::from_json(env.payload);

    if (cert.instance.name != env.inputs.at("instance").get<std::string>())
        return {false, "instance name differs from inputs"};
    if (cert.instance.radius != Rational::parse(env.inputs.at("radius").get<std::string>()))
        return {false, "instance radius differs from inputs"};
    if (cert.requested_depth != env.inputs.at("depth").get<std::size_t>())
        return {false, "requested depth differs from inputs"};
    if (cert.index_cap != env.inputs.at("indexCap").get<unsigned long>())
        return {false, "index cap differs from inputs"};
    // the construction only stops early at the cap, and a cap-limited run
    // can only have been emitted in allow-partial mode
    if (cert.cap_hit != (cert.achieved_depth < cert.requested_depth))
        return {false, "cap flag inconsistent with the achieved depth"};
    if (cert.cap_hit && !env.inputs.at("allowPartial").get<bool>())
        return {false, "cap-limited certificate without an allow-partial run"};

    // emission embeds the premise report computed at default parameters
    json fresh = subsum::check_premises(cert.instance, subsum::PremiseParams{});
    auto diff = first_difference(fresh, cert.premises);
    if (!diff.empty()) return {false, "premise report mismatch at " + diff};

    auto outcome = subsum::verify_certificate(cert);
    if (!outcome.ok) return {false, outcome.first_failure};
    if (!env.verified) return {false, "stored verified flag contradicts replay"};
    return {true, ""};
}

} // namespace

VerifyReport verify_envelope(const json& envelope_json) {
    CertificateEnvelope env = CertificateEnvelope::from_json(envelope_json);

    if (env.command == "non0.construct") return verify_construct_envelope(env);

    json payload = compute_payload(env.command, env.inputs);
    bool verified = payload_verified(env.command, payload);
    auto diff = first_difference(payload, env.payload);
    if (!diff.empty()) return {false, "payload mismatch at " + diff};
    if (verified != env.verified) return {false, "stored verified flag contradicts replay"};
    if (!verified) return {false, "payload reports failed checks"};
    return {true, ""};
}

} // namespace cert
} // namespace topolab
