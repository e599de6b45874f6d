#pragma once

#include <string>
#include <vector>

namespace tt {

// One invocation per emitting subcommand, used by both the CLI test suite
// and the acceptance round-trip criterion.
inline const std::vector<std::vector<std::string>>& emitting_commands() {
    static const std::vector<std::vector<std::string>> cases = {
        {"seq", "add", "--a", R"({"support":{"0":"1/2"}})", "--b",
         R"({"support":{"0":"1/2","3":"-2"}})"},
        {"seq", "sup-norm", "--a", R"({"prefix":["1/2"],"tail":"1/3"})"},
        {"seq", "l1-norm", "--a", R"({"support":{"1":"1/2","2":"1/3"}})"},
        {"seq", "lattice-member", "--a", R"({"support":{"1":"1/2"}})", "--lattice", "R"},
        {"seq", "equiv", "--a", R"({"support":{"0":"1"}})", "--b", R"({"support":{"1":"1"}})",
         "--lattice", "S"},
        {"seq", "member", "--a", R"({"support":{"2":"1/6"}})", "--space", "GAMMA0"},
        {"seq", "dist", "--a", R"({"support":{"1":"1/2"}})", "--b", R"({"support":{"2":"1/3"}})",
         "--space", "GAMMA1"},
        {"seq", "subgroup-member", "--a", R"({"support":{"1":"1/2"}})", "--subgroup",
         R"({"tag":"COORD_INT","n":1})", "--modulo", "S"},
        {"seq", "coset-ball", "--a", R"({"support":{"1":"1/2"}})", "--radius", "3/4", "--space",
         "GAMMA0"},
        {"witness", "smog-separator", "--a", R"({"support":{"3":"1/24"}})"},
        {"witness", "unbounded-multiple", "--a", R"({"support":{"2":"1/6"}})", "--bound", "100"},
        {"witness", "no-smog-chain", "--radius", "1/10"},
        {"witness", "not-ta", "--space", "GAMMA1"},
        {"witness", "td-separator", "--a", R"({"support":{"1":"1/2"}})"},
        {"witness", "q-ta", "--q", "5/3", "--eps", "1/10"},
        {"non0", "premises", "--instance", "gamma1", "--radius", "1", "--trials", "20"},
        {"non0", "construct", "--instance", "gamma1", "--radius", "1", "--depth", "2"},
        {"non0", "construct", "--instance", "c_cap_r", "--radius", "1", "--depth", "2"},
        {"finite", "report", "--group",
         R"({"order":4,"mul":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]})", "--base", "0,2;0"},
        {"finite", "embed", "--group",
         R"({"order":4,"mul":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]})", "--base", "0,2;0"},
        {"finite", "metric", "--group",
         R"({"order":4,"mul":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]})", "--chain",
         "0,1,2,3;0,2;0"},
        {"finite", "extend", "--group",
         R"({"order":4,"mul":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})", "--normal", "0,1",
         "--u", "0,1"},
        {"finite", "factorize", "--orders", "5,7", "--j", "0,1", "--u", "4,0,1;6,0,1", "--g",
         "3,2"},
        {"abelian", "prufer", "--orders", "6,4,9"},
        {"abelian", "quotient-embed", "--orders", "4", "--base", "0,2;0"},
        {"abelian", "orders", "--group",
         R"({"order":4,"mul":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})"},
    };
    return cases;
}

} // namespace tt
