#include "test_helpers.hpp"

#include <doctest.h>

using namespace topolab;
using namespace topolab::subsum;

TEST_CASE("premise report for the gamma1 instance") {
    auto inst = SubsumInstance::gamma1(Rational(1));
    PremiseParams p;
    p.divergence_terms = 10;
    p.divergence_bound = Rational(2);
    p.trials = 50;
    json rep = check_premises(inst, p);
    CHECK(rep["allPass"].get<bool>());
    // H_11 = 1 + 1/2 + ... + 1/11 exceeds 2
    Rational partial = Rational::parse(rep["div"]["partialSum"].get<std::string>());
    CHECK(partial > Rational(2));
    CHECK(partial < Rational(4));

    // additivity on a disjoint block by hand
    FinSeq a1 = inst.term_fin(1), a2 = inst.term_fin(2);
    CHECK((a1 + a2).l1_norm() == Rational(5, 6));
    CHECK((a1 + a2).l1_norm() == a1.l1_norm() + a2.l1_norm());
}

TEST_CASE("premise report for the c cap R instance") {
    auto inst = SubsumInstance::c_cap_r(Rational(1));
    PremiseParams p;
    p.trials = 200;
    p.max_index = 50;
    json rep = check_premises(inst, p);
    CHECK(rep["allPass"].get<bool>());

    // the tail coordinates accumulate both terms: nu(a_0 + a_2) = 1 + 1/3
    TailSeq sum = inst.term_tail(0) + inst.term_tail(2);
    CHECK(sum.sup_norm() == Rational(4, 3));
    CHECK(sum.sup_norm() == inst.term_nu(0) + inst.term_nu(2));
}

TEST_CASE("gamma1 construction depth 2 exact trace") {
    auto inst = SubsumInstance::gamma1(Rational(1));
    auto cert = construct(inst, 2);
    CHECK(cert.achieved_depth == 2);
    CHECK(!cert.cap_hit);
    const auto& tr = std::get<Trace<FinSeq>>(cert.trace);
    CHECK(tr.nprime == std::vector<std::size_t>{1, 6});
    CHECK(tr.nindex == std::vector<std::size_t>{2, 6});
    CHECK(tr.nu_values == std::vector<Rational>{Rational(5, 6), Rational(41, 42)});
    CHECK(tr.points[1] == FinSeq::unit(1, Rational(1, 2)) + FinSeq::unit(2, Rational(1, 3)));
    CHECK(tr.points[2] == tr.points[1] + FinSeq::unit(6, Rational(1, 7)));
    // escort of m=1 is c_1 + a_3 with nu = 13/12
    CHECK(tr.escorts[0] == tr.points[1] + inst.term_fin(3));
    CHECK(tr.escorts[0].l1_norm() == Rational(13, 12));
    CHECK(tr.escorts[1].l1_norm() == Rational(41, 42) + Rational(1, 8));

    CHECK(verify_certificate(cert).ok);
}

TEST_CASE("depth 0 gives the empty certificate") {
    auto cert = construct(SubsumInstance::gamma1(Rational(1)), 0);
    CHECK(cert.achieved_depth == 0);
    const auto& tr = std::get<Trace<FinSeq>>(cert.trace);
    CHECK(tr.points.size() == 1);
    CHECK(tr.points[0].is_zero());
    CHECK(verify_certificate(cert).ok);
}

TEST_CASE("construction is deterministic bit for bit") {
    auto inst = SubsumInstance::c_cap_r(Rational(1));
    auto c1 = construct(inst, 3);
    auto c2 = construct(inst, 3);
    CHECK(c1.to_json() == c2.to_json());
}

TEST_CASE("index lists interleave and nu stays below the radius") {
    for (auto inst : {SubsumInstance::gamma1(Rational(1)), SubsumInstance::c_cap_r(Rational(1)),
                      SubsumInstance::gamma1(Rational(1, 2))}) {
        auto cert = construct(inst, 4, kDefaultIndexCap, /*allow_partial=*/true);
        std::visit(
            [&](const auto& tr) {
                std::int64_t last = -1;
                for (std::size_t m = 0; m < tr.nprime.size(); ++m) {
                    CHECK(static_cast<std::int64_t>(tr.nprime[m]) > last);
                    CHECK(tr.nindex[m] >= tr.nprime[m]);
                    last = static_cast<std::int64_t>(tr.nindex[m]);
                    CHECK(tr.nu_values[m] < inst.radius);
                    if (m > 0) CHECK(tr.nu_values[m] > tr.nu_values[m - 1]);
                }
            },
            cert.trace);
        CHECK(verify_certificate(cert).ok);
    }
}

TEST_CASE("the cap truncates the gamma1 run at depth 4") {
    auto inst = SubsumInstance::gamma1(Rational(1));
    CHECK_THROWS_AS(construct(inst, 20), search_exhausted);
    auto cert = construct(inst, 20, kDefaultIndexCap, /*allow_partial=*/true);
    CHECK(cert.cap_hit);
    CHECK(cert.achieved_depth == 4);
    const auto& tr = std::get<Trace<FinSeq>>(cert.trace);
    CHECK(tr.nprime == std::vector<std::size_t>{1, 6, 42, 1806});
    CHECK(verify_certificate(cert).ok);
    // a larger cap admits exactly one more step
    auto deeper = construct(inst, 20, 4'000'000, /*allow_partial=*/true);
    CHECK(deeper.achieved_depth == 5);
    CHECK(std::get<Trace<FinSeq>>(deeper.trace).nprime.back() == 3'263'442);
}

TEST_CASE("c cap R construction verifies at its achieved depth") {
    auto inst = SubsumInstance::c_cap_r(Rational(1));
    auto cert = construct(inst, 20, kDefaultIndexCap, /*allow_partial=*/true);
    CHECK(cert.cap_hit);
    CHECK(cert.achieved_depth >= 3);
    CHECK(verify_certificate(cert).ok);
    // points live in the space and escorts exit the ball, exactly
    const auto& tr = std::get<Trace<TailSeq>>(cert.trace);
    for (std::size_t m = 1; m <= cert.achieved_depth; ++m) {
        CHECK(space_member(tr.points[m], SpaceKind::CCapR));
        CHECK(tr.points[m].sup_norm() < Rational(1));
        CHECK(tr.escorts[m - 1].sup_norm() >= Rational(1));
    }
}

TEST_CASE("tiny-scale exhaustive subsum oracle confirms the greedy pair") {
    // terms a_1..a_4 of the gamma1 instance, r = 1: every subsum of a
    // subset of {1,2,3,4}, classified by the ball
    auto inst = SubsumInstance::gamma1(Rational(1));
    std::vector<FinSeq> inside, outside;
    for (unsigned mask = 0; mask < 16; ++mask) {
        FinSeq sum;
        for (unsigned bit = 0; bit < 4; ++bit)
            if (mask & (1u << bit)) sum += inst.term_fin(bit + 1);
        (sum.l1_norm() < Rational(1) ? inside : outside).push_back(sum);
    }
    auto cert = construct(inst, 1);
    const auto& tr = std::get<Trace<FinSeq>>(cert.trace);
    bool c1_found = false, escort_found = false;
    for (const auto& s : inside) c1_found |= s == tr.points[1];
    for (const auto& s : outside) escort_found |= s == tr.escorts[0];
    CHECK(c1_found);
    CHECK(escort_found);
}

TEST_CASE("certificate json round trip") {
    for (auto inst : {SubsumInstance::gamma1(Rational(1)), SubsumInstance::c_cap_r(Rational(1))}) {
        auto cert = construct(inst, 2);
        auto parsed = SubsumCertificate::from_json(cert.to_json());
        CHECK(parsed.to_json() == cert.to_json());
        CHECK(verify_certificate(parsed).ok);
    }
}

TEST_CASE("verify rejects a tampered point naming the recomputation") {
    auto cert = construct(SubsumInstance::gamma1(Rational(1)), 2);
    json doc = cert.to_json();
    // corrupt c_2 by adding e_0
    doc["c"][2]["support"]["0"] = "1";
    auto outcome = verify_certificate(SubsumCertificate::from_json(doc));
    CHECK(!outcome.ok);
    CHECK(outcome.first_failure.find("c_m recomputation") != std::string::npos);
}

TEST_CASE("verify rejects a swapped entry index at the membership check") {
    auto cert = construct(SubsumInstance::gamma1(Rational(1)), 2);
    json doc = cert.to_json();
    doc["nprime"][1] = 5; // 5/6 + 1/6 = 1 is not inside the open ball
    auto outcome = verify_certificate(SubsumCertificate::from_json(doc));
    CHECK(!outcome.ok);
    CHECK(outcome.first_failure.find("membership at n'") != std::string::npos);
}

TEST_CASE("verify rejects a tampered nu value") {
    auto cert = construct(SubsumInstance::gamma1(Rational(1)), 2);
    json doc = cert.to_json();
    doc["nu"][0] = "1/3";
    auto outcome = verify_certificate(SubsumCertificate::from_json(doc));
    CHECK(!outcome.ok);
    CHECK(outcome.first_failure.find("nu recomputation") != std::string::npos);
}

TEST_CASE("cauchy gap tolerance") {
    auto cert = construct(SubsumInstance::gamma1(Rational(1)), 2);
    // nu gap is 41/42 - 5/6 = 1/7
    CHECK(verify_certificate(cert, Rational(1, 6)).ok);
    auto outcome = verify_certificate(cert, Rational(1, 8));
    CHECK(!outcome.ok);
    CHECK(outcome.first_failure.find("cauchy") != std::string::npos);
}

TEST_CASE("construct rejects bad inputs") {
    CHECK_THROWS_AS(SubsumInstance::by_name("stevens", Rational(1)), precondition_error);
    CHECK_THROWS_AS(SubsumInstance::by_name("gamma1", Rational(0)), precondition_error);
    CHECK_THROWS_AS(construct(SubsumInstance::gamma1(Rational(1)), 2, 0), precondition_error);
    json failing_premises{{"allPass", false}};
    CHECK_THROWS_AS(construct(SubsumInstance::gamma1(Rational(1)), 1, kDefaultIndexCap, false,
                              failing_premises),
                    precondition_error);
}
