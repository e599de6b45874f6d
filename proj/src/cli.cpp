#include "topolab/cli.hpp"

#include "topolab/envelope.hpp"
#include "topolab/subsum.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace topolab {
namespace cli {

using cert::json;

namespace {

json load_json_arg(const std::string& s) {
    try {
        if (!s.empty() && s[0] == '@') {
            std::ifstream f(s.substr(1));
            if (!f) throw precondition_error("cannot open file '" + s.substr(1) + "'");
            return json::parse(f);
        }
        return json::parse(s);
    } catch (const json::parse_error& e) {
        throw precondition_error(std::string("bad JSON argument: ") + e.what());
    }
}

std::vector<unsigned> parse_uint_list(const std::string& csv) {
    std::vector<unsigned> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            unsigned long v = std::stoul(item, &pos);
            if (pos != item.size() || v > 0xffffffffUL)
                throw precondition_error("bad element index '" + item + "'");
            out.push_back(static_cast<unsigned>(v));
        } catch (const std::logic_error&) {
            throw precondition_error("bad element index '" + item + "'");
        }
    }
    return out;
}

std::vector<std::vector<unsigned>> parse_sets(const std::string& s) {
    std::vector<std::vector<unsigned>> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(parse_uint_list(part));
    return out;
}

unsigned long default_index_cap() {
    if (const char* env = std::getenv("TOPOLAB_INDEX_CAP")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw precondition_error("TOPOLAB_INDEX_CAP must be a positive integer");
    }
    return subsum::kDefaultIndexCap;
}

struct Pending {
    std::function<int()> action;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"topolab: exact witnesses and machine-checkable certificates for "
                 "sequence-space and finite topological-group phenomena"};
    app.require_subcommand(1);

    Pending pending;

    auto emit_action = [&](const std::string& command, std::function<json()> build_inputs,
                           std::shared_ptr<std::string> out_path = nullptr) {
        return [&pending, &out, &err, command, build_inputs, out_path]() {
            pending.action = [&out, &err, command, build_inputs, out_path]() -> int {
                auto env = cert::emit(command, build_inputs());
                std::string text = env.to_json().dump(2);
                if (out_path && !out_path->empty()) {
                    std::ofstream f(*out_path);
                    if (!f) throw precondition_error("cannot write '" + *out_path + "'");
                    f << text << "\n";
                }
                out << text << "\n";
                if (!env.verified) {
                    err << "topolab: payload checks failed\n";
                    return 2;
                }
                return 0;
            };
        };
    };

    // ------------------------------------------------------------- seq
    auto* seq = app.add_subcommand("seq", "exact sequence arithmetic and membership");
    seq->require_subcommand(1);
    {
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("add", "coordinatewise exact sum");
        c->add_option("--a", *a, "sequence JSON or @file")->required();
        c->add_option("--b", *b, "sequence JSON or @file")->required();
        c->callback(emit_action("seq.add", [a, b] {
            return json{{"a", load_json_arg(*a)}, {"b", load_json_arg(*b)}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("sup-norm", "sup norm of a sequence");
        c->add_option("--a", *a)->required();
        c->callback(emit_action("seq.sup-norm", [a] { return json{{"a", load_json_arg(*a)}}; }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("l1-norm", "l1 norm of a finitely supported sequence");
        c->add_option("--a", *a)->required();
        c->callback(emit_action("seq.l1-norm", [a] { return json{{"a", load_json_arg(*a)}}; }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto k = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("lattice-member", "membership in R, S or OPLUS_Z");
        c->add_option("--a", *a)->required();
        c->add_option("--lattice", *k, "R | S | OPLUS_Z")->required();
        c->callback(emit_action("seq.lattice-member", [a, k] {
            return json{{"a", load_json_arg(*a)}, {"lattice", *k}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto k = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("equiv", "coset equality modulo S or OPLUS_Z");
        c->add_option("--a", *a)->required();
        c->add_option("--b", *b)->required();
        c->add_option("--lattice", *k)->required();
        c->callback(emit_action("seq.equiv", [a, b, k] {
            return json{{"a", load_json_arg(*a)}, {"b", load_json_arg(*b)}, {"lattice", *k}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("member", "membership in GAMMA0, GAMMA1 or C_CAP_R");
        c->add_option("--a", *a)->required();
        c->add_option("--space", *s)->required();
        c->callback(emit_action("seq.member", [a, s] {
            return json{{"a", load_json_arg(*a)}, {"space", *s}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("dist", "invariant metric distance");
        c->add_option("--a", *a)->required();
        c->add_option("--b", *b)->required();
        c->add_option("--space", *s)->required();
        c->callback(emit_action("seq.dist", [a, b, s] {
            return json{{"a", load_json_arg(*a)}, {"b", load_json_arg(*b)}, {"space", *s}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>();
        auto mod = std::make_shared<std::string>();
        auto* c = seq->add_subcommand("subgroup-member", "membership in a described subgroup");
        c->add_option("--a", *a)->required();
        c->add_option("--subgroup", *d, "descriptor JSON")->required();
        c->add_option("--modulo", *mod, "S | OPLUS_Z (coset membership)");
        c->callback(emit_action("seq.subgroup-member", [a, d, mod] {
            json inputs{{"a", load_json_arg(*a)}, {"subgroup", load_json_arg(*d)}};
            inputs["modulo"] = mod->empty() ? json(nullptr) : json(*mod);
            return inputs;
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto r = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>("GAMMA0");
        auto* c = seq->add_subcommand("coset-ball",
                                      "does the coset of a meet the sup ball of radius r mod S");
        c->add_option("--a", *a)->required();
        c->add_option("--radius", *r, "rational, e.g. 3/4")->required();
        c->add_option("--space", *s, "GAMMA0 | GAMMA1");
        c->callback(emit_action("seq.coset-ball", [a, r, s] {
            return json{{"a", load_json_arg(*a)}, {"radius", *r}, {"space", *s}};
        }));
    }

    // ------------------------------------------------------------- witness
    auto* wit = app.add_subcommand("witness", "witness generators for the sequence-space claims");
    wit->require_subcommand(1);
    {
        auto a = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>("GAMMA0");
        auto* c = wit->add_subcommand("smog-separator", "open subgroup excluding a nonzero element");
        c->add_option("--a", *a)->required();
        c->add_option("--space", *s);
        c->callback(emit_action("witness.smog-separator", [a, s] {
            return json{{"a", load_json_arg(*a)}, {"space", *s}};
        }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>("GAMMA0");
        auto bound = std::make_shared<std::string>();
        auto* c = wit->add_subcommand("unbounded-multiple",
                                      "least multiple escaping a norm bound");
        c->add_option("--a", *a)->required();
        c->add_option("--space", *s);
        c->add_option("--bound", *bound)->required();
        c->callback(emit_action("witness.unbounded-multiple", [a, s, bound] {
            return json{{"a", load_json_arg(*a)}, {"space", *s}, {"bound", *bound}};
        }));
    }
    {
        auto r = std::make_shared<std::string>();
        auto* c = wit->add_subcommand("no-smog-chain",
                                      "e_0 mod S reached from inside any ball of the quotient");
        c->add_option("--radius", *r)->required();
        c->callback(emit_action("witness.no-smog-chain", [r] { return json{{"radius", *r}}; }));
    }
    {
        auto s = std::make_shared<std::string>("GAMMA0");
        auto* c = wit->add_subcommand("not-ta", "open proper subgroup of the quotient");
        c->add_option("--space", *s);
        c->callback(emit_action("witness.not-ta", [s] { return json{{"space", *s}}; }));
    }
    {
        auto a = std::make_shared<std::string>();
        auto* c = wit->add_subcommand("td-separator",
                                      "ball radius whose coset trace misses a mod S");
        c->add_option("--a", *a)->required();
        c->callback(emit_action("witness.td-separator", [a] {
            return json{{"a", load_json_arg(*a)}};
        }));
    }
    {
        auto q = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        auto* c = wit->add_subcommand("q-ta", "a rational as a minimal sum of equal small parts");
        c->add_option("--q", *q)->required();
        c->add_option("--eps", *eps)->required();
        c->callback(emit_action("witness.q-ta", [q, eps] {
            return json{{"q", *q}, {"eps", *eps}};
        }));
    }

    // ------------------------------------------------------------- non0
    auto* non0 = app.add_subcommand("non0", "first-exit construction on subsum spaces");
    non0->require_subcommand(1);
    {
        auto inst = std::make_shared<std::string>("gamma1");
        auto r = std::make_shared<std::string>("1");
        auto div_terms = std::make_shared<std::size_t>(50);
        auto div_bound = std::make_shared<std::string>("2");
        auto trials = std::make_shared<std::size_t>(100);
        auto max_index = std::make_shared<std::size_t>(50);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto* c = non0->add_subcommand("premises", "desk-scale checks of the four premises");
        c->add_option("--instance", *inst, "gamma1 | c_cap_r");
        c->add_option("--radius", *r);
        c->add_option("--div-terms", *div_terms);
        c->add_option("--div-bound", *div_bound);
        c->add_option("--trials", *trials);
        c->add_option("--max-index", *max_index);
        c->add_option("--seed", *seed);
        c->callback(emit_action("non0.premises", [=] {
            return json{{"instance", *inst}, {"radius", *r},
                        {"divTerms", *div_terms}, {"divBound", *div_bound},
                        {"trials", *trials}, {"maxIndex", *max_index}, {"seed", *seed}};
        }));
    }
    {
        auto inst = std::make_shared<std::string>("gamma1");
        auto r = std::make_shared<std::string>("1");
        auto depth = std::make_shared<std::size_t>(2);
        auto cap = std::make_shared<unsigned long>(0);
        auto partial = std::make_shared<bool>(false);
        auto out_path = std::make_shared<std::string>();
        auto* c = non0->add_subcommand("construct", "run the greedy first-exit construction");
        c->add_option("--instance", *inst, "gamma1 | c_cap_r");
        c->add_option("--radius", *r);
        c->add_option("--depth", *depth)->required();
        c->add_option("--index-cap", *cap, "defaults to TOPOLAB_INDEX_CAP or 1000000");
        c->add_flag("--allow-partial", *partial, "stop at the cap instead of failing");
        c->add_option("--out,-o", *out_path, "also write the envelope to a file");
        c->callback(emit_action("non0.construct", [=] {
            return json{{"instance", *inst}, {"radius", *r}, {"depth", *depth},
                        {"indexCap", *cap != 0 ? *cap : default_index_cap()},
                        {"allowPartial", *partial}};
        }, out_path));
    }
    {
        auto file = std::make_shared<std::string>();
        auto tol = std::make_shared<std::string>();
        auto* c = non0->add_subcommand("verify", "replay a construction certificate");
        c->add_option("file", *file, "envelope JSON file")->required();
        c->add_option("--cauchy-tol", *tol, "additionally require the last nu gap below this");
        c->callback([&pending, &out, &err, file, tol] {
            pending.action = [&out, &err, file, tol]() -> int {
                std::ifstream f(*file);
                if (!f) throw precondition_error("cannot open '" + *file + "'");
                json doc = json::parse(f, nullptr, true, true);
                auto report = cert::verify_envelope(doc);
                if (report.ok && !tol->empty()) {
                    auto cert_payload = subsum::SubsumCertificate::from_json(doc.at("payload"));
                    auto outcome = subsum::verify_certificate(cert_payload, Rational::parse(*tol));
                    if (!outcome.ok) report = {false, outcome.first_failure};
                }
                out << json{{"ok", report.ok}, {"diagnostic", report.diagnostic}}.dump(2) << "\n";
                if (!report.ok) {
                    err << "topolab: verification failed: " << report.diagnostic << "\n";
                    return 3;
                }
                return 0;
            };
        });
    }

    // ------------------------------------------------------------- finite
    auto* fin = app.add_subcommand("finite", "finite filtered groups");
    fin->require_subcommand(1);
    {
        auto group = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto* c = fin->add_subcommand("report", "Hausdorff/TNA/SMOG/TA decision report");
        c->add_option("--group", *group, "group JSON or @file")->required();
        c->add_option("--base", *base, "neighborhood base, e.g. \"0,2;0\"")->required();
        c->callback(emit_action("finite.report", [group, base] {
            return json{{"group", load_json_arg(*group)}, {"base", parse_sets(*base)}};
        }));
    }
    {
        auto group = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto* c = fin->add_subcommand("embed", "coset action embedding into Sym(Omega)");
        c->add_option("--group", *group)->required();
        c->add_option("--base", *base, "subgroup base")->required();
        c->callback(emit_action("finite.embed", [group, base] {
            return json{{"group", load_json_arg(*group)}, {"base", parse_sets(*base)}};
        }));
    }
    {
        auto group = std::make_shared<std::string>();
        auto chain = std::make_shared<std::string>();
        auto* c = fin->add_subcommand("metric", "non-Archimedean metric from a subgroup chain");
        c->add_option("--group", *group)->required();
        c->add_option("--chain", *chain, "decreasing subgroups, whole group first")->required();
        c->callback(emit_action("finite.metric", [group, chain] {
            return json{{"group", load_json_arg(*group)}, {"chain", parse_sets(*chain)}};
        }));
    }
    {
        auto group = std::make_shared<std::string>();
        auto normal = std::make_shared<std::string>();
        auto u = std::make_shared<std::string>();
        auto* c = fin->add_subcommand("extend", "open subgroup inside U from N and G/N data");
        c->add_option("--group", *group)->required();
        c->add_option("--normal", *normal, "normal subgroup elements")->required();
        c->add_option("--u", *u, "symmetric neighborhood elements")->required();
        c->callback(emit_action("finite.extend", [group, normal, u] {
            return json{{"group", load_json_arg(*group)},
                        {"normal", parse_uint_list(*normal)},
                        {"u", parse_uint_list(*u)}};
        }));
    }
    {
        auto orders = std::make_shared<std::string>();
        auto factors = std::make_shared<std::vector<std::string>>();
        auto jset = std::make_shared<std::string>();
        auto u = std::make_shared<std::string>();
        auto g = std::make_shared<std::string>();
        auto* c = fin->add_subcommand("factorize",
                                      "neighborhood word factorization in a finite product");
        c->add_option("--orders", *orders, "cyclic factor orders, e.g. 5,7");
        c->add_option("--factor", *factors, "factor group JSON or @file, repeatable");
        c->add_option("--j", *jset, "finite support of the neighborhood")->required();
        c->add_option("--u", *u, "one symmetric generating set per J index, ';' separated")
            ->required();
        c->add_option("--g", *g, "element coordinates")->required();
        c->callback(emit_action("finite.factorize", [orders, factors, jset, u, g] {
            json inputs{{"j", parse_uint_list(*jset)},
                        {"u", parse_sets(*u)},
                        {"g", parse_uint_list(*g)}};
            if (!orders->empty()) {
                inputs["orders"] = parse_uint_list(*orders);
            } else if (!factors->empty()) {
                json fs = json::array();
                for (const auto& f : *factors) fs.push_back(load_json_arg(f));
                inputs["factors"] = fs;
            } else {
                throw precondition_error("factorize: provide --orders or --factor");
            }
            return inputs;
        }));
    }

    // ------------------------------------------------------------- abelian
    auto* ab = app.add_subcommand("abelian", "universal embeddings of finite abelian groups");
    ab->require_subcommand(1);
    {
        auto orders = std::make_shared<std::string>();
        auto* c = ab->add_subcommand("prufer", "embed into a finite sum of quasicyclic groups");
        c->add_option("--orders", *orders, "cyclic orders, e.g. 6,4,9")->required();
        c->callback(emit_action("abelian.prufer", [orders] {
            return json{{"orders", parse_uint_list(*orders)}};
        }));
    }
    {
        auto orders = std::make_shared<std::string>();
        auto group = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto* c = ab->add_subcommand("quotient-embed",
                                     "diagonal embedding into the product of base quotients");
        c->add_option("--orders", *orders, "cyclic orders of a product group");
        c->add_option("--group", *group, "or an explicit group JSON/@file");
        c->add_option("--base", *base, "subgroup base")->required();
        c->callback(emit_action("abelian.quotient-embed", [orders, group, base] {
            json inputs{{"base", parse_sets(*base)}};
            if (!orders->empty()) inputs["orders"] = parse_uint_list(*orders);
            else if (!group->empty()) inputs["group"] = load_json_arg(*group);
            else throw precondition_error("quotient-embed: provide --orders or --group");
            return inputs;
        }));
    }
    {
        auto group = std::make_shared<std::string>();
        auto* c = ab->add_subcommand("orders", "invariant factors of an abelian Cayley table");
        c->add_option("--group", *group)->required();
        c->callback(emit_action("abelian.orders", [group] {
            return json{{"group", load_json_arg(*group)}};
        }));
    }

    // ------------------------------------------------------------- verify
    {
        auto file = std::make_shared<std::string>();
        auto* c = app.add_subcommand("verify", "replay any emitted envelope from its inputs");
        c->add_option("file", *file, "envelope JSON file")->required();
        c->callback([&pending, &out, &err, file] {
            pending.action = [&out, &err, file]() -> int {
                std::ifstream f(*file);
                if (!f) throw precondition_error("cannot open '" + *file + "'");
                json doc = json::parse(f, nullptr, true, true);
                auto report = cert::verify_envelope(doc);
                out << json{{"ok", report.ok}, {"diagnostic", report.diagnostic}}.dump(2) << "\n";
                if (!report.ok) {
                    err << "topolab: verification failed: " << report.diagnostic << "\n";
                    return 3;
                }
                return 0;
            };
        });
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("topolab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return 1;
    }

    if (!pending.action) {
        err << app.help();
        return 1;
    }

    try {
        return pending.action();
    } catch (const cert::schema_error& e) {
        err << "topolab: schema error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "topolab: schema error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        err << "topolab: precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const search_exhausted& e) {
        err << "topolab: search exhausted: " << e.what() << "\n";
        return 2;
    } catch (const verification_error& e) {
        err << "topolab: verification failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "topolab: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cli
} // namespace topolab
