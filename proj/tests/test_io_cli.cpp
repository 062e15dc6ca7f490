#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "godel/cli.hpp"
#include "godel/dot.hpp"
#include "godel/enumerate.hpp"
#include "godel/error.hpp"
#include "godel/json_io.hpp"
#include "godel/translate.hpp"

using namespace godel;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "godel_test_tmp_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    return {rc, out.str() + err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("io-cli");

TEST_CASE("JSON round trips") {
    SUBCASE("poset and forest") {
        Poset p = make_poset({"a", "b", "c"}, {{0, 1}, {0, 2}});
        Poset p2 = poset_from_json(poset_to_json(p));
        CHECK(p2.labels == p.labels);
        CHECK(p2.covers == p.covers);

        Forest f = make_forest({"r", "x", "y"}, {-1, 0, 0});
        Forest f2 = forest_from_json(forest_to_json(f));
        CHECK(f2.poset.labels == f.poset.labels);
        CHECK(f2.parent == f.parent);
    }
    SUBCASE("algebras in all three forms") {
        GodelAlgebra c4 = make_chain(4);
        GodelAlgebra c4b = algebra_from_json(algebra_to_json(c4));
        CHECK(c4b.impl == c4.impl);
        CHECK(algebra_from_json(json{{"type", "chain"}, {"n", 4}}).size() == 4);
        json forest_form{{"type", "forest"},
                         {"nodes", {"r", "x"}},
                         {"parent", {{"r", nullptr}, {"x", "r"}}}};
        CHECK(algebra_from_json(forest_form).size() == 3);
    }
    SUBCASE("homomorphisms") {
        AlgebraPtr c3 = share(make_chain(3)), c4 = share(make_chain(4));
        Homomorphism h{c3, c4, {0, 1, 3}};
        auto map = hom_map_from_json(hom_to_json(h), *c3, *c4);
        CHECK(map == h.map);
    }
    SUBCASE("dual structures at several sizes") {
        for (const char* s : {"ggh3", "gh1", "h1"}) {
            SigmaSignature sigma = parse_sigma(s);
            int n = sigma.n;
            AlgebraPtr a = share(make_chain(std::min(n, 4)));
            DualStructure x = dual_space(a, sigma).structure;
            DualStructure x2 = structure_from_json(structure_to_json(x));
            CHECK(x2.labels == x.labels);
            CHECK(x2.partial == x.partial);
            CHECK(x2.endo == x.endo);
            CHECK(x2.sigma == x.sigma);
        }
        // n = 2: no endomorphism in the signature
        DualStructure stone = dual_space(share(make_chain(2)), parse_sigma("", 2)).structure;
        DualStructure stone2 = structure_from_json(structure_to_json(stone));
        CHECK(stone2.endo == stone.endo);
    }
    SUBCASE("V-formations and certificates") {
        AlgebraPtr a = share(make_chain(3)), b = share(make_chain(4));
        VFormation v = make_vformation(a, b, b, Homomorphism{a, b, {0, 1, 3}},
                                       Homomorphism{a, b, {0, 2, 3}});
        VFormation v2 = vformation_from_json(vformation_to_json(v));
        CHECK(v2.fb.map == v.fb.map);
        CHECK(v2.fc.map == v.fc.map);
        AmalgamCertificate cert = admits_amalgamation(v2, 4);
        json cj = certificate_to_json(cert);
        CHECK(cj.at("verdict") == "fails");
        CHECK(cj.at("witness").contains("point"));
    }
    SUBCASE("malformed inputs are input errors") {
        CHECK_THROWS_AS(forest_from_json(json{{"nodes", {"a"}}, {"parent", {{"a", "b"}}}}),
                        godel_error);
        CHECK_THROWS_AS(algebra_from_json(json{{"type", "sphere"}}), godel_error);
        CHECK_THROWS_AS(poset_from_json(json{{"nodes", {"a", "b"}},
                                             {"covers", {{"a", "b"}, {"b", "a"}}}}),
                        godel_error);
    }
}

TEST_CASE("DOT output") {
    Forest f = hu_dual(make_chain(4));
    std::string forest_dot = dot_forest(f);
    CHECK(dot_is_valid(forest_dot));
    CHECK(forest_dot.find("->") != std::string::npos);

    DualSpace d = dual_space(share(make_chain(5)), parse_sigma("ggh3"));
    std::string sdot = dot_structure(d.structure);
    CHECK(dot_is_valid(sdot));
    // Fig-style arrows: eight points, loops included, three styles
    CHECK(sdot.find("style=dashed") != std::string::npos);
    CHECK(sdot.find("style=dotted") != std::string::npos);
    CHECK(sdot.find("style=solid") != std::string::npos);
    int nodes = 0, loops = 0;
    std::istringstream lines(sdot);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find("[label=") != std::string::npos && line.find("->") == std::string::npos)
            ++nodes;
        for (int p = 0; p < d.structure.size(); ++p) {
            std::string self = "p" + std::to_string(p) + " -> p" + std::to_string(p) + " ";
            if (line.find(self) != std::string::npos) ++loops;
        }
    }
    CHECK(nodes == 8);
    CHECK(loops > 0);  // operations fixing a point draw as loops

    // a four-chain forest: four nodes, three edges
    std::string chain_dot = dot_forest(hu_dual(make_chain(5)));
    int edges = 0;
    std::istringstream lines2(chain_dot);
    while (std::getline(lines2, line))
        if (line.find("->") != std::string::npos) ++edges;
    CHECK(edges == 3);

    std::string tdot = dot_translation(d.structure, F_sigma_quotient(d.structure));
    CHECK(dot_is_valid(tdot));
    CHECK(tdot.find("cluster") != std::string::npos);

    CHECK_FALSE(dot_is_valid("graph {"));
    CHECK_FALSE(dot_is_valid("nonsense"));
    CHECK_FALSE(dot_is_valid("digraph g { a -> b [label=\"x]; }"));
}

TEST_CASE("CLI plumbing") {
    SUBCASE("dual of a chain file") {
        TempFile alg(R"({"type":"chain","n":5})");
        auto [rc, text] = run_cli({"dual", alg.path});
        CHECK(rc == 0);
        json j = json::parse(text);
        CHECK(j.at("nodes").size() == 4);
        Forest f = forest_from_json(j);
        CHECK(depth(f.poset) == 3);
    }
    SUBCASE("every emitted JSON reparses to an equal object") {
        TempFile alg(R"({"type":"chain","n":4})");
        auto [rc1, forest_text] = run_cli({"dual", alg.path});
        REQUIRE(rc1 == 0);
        TempFile forest_file(forest_text);
        auto [rc2, table_text] = run_cli({"esakia", forest_file.path});
        REQUIRE(rc2 == 0);
        GodelAlgebra back = algebra_from_json(json::parse(table_text));
        CHECK(algebras_isomorphic(back, make_chain(4)));
    }
    SUBCASE("translate in both directions") {
        TempFile alg(R"({"type":"chain","n":5})");
        auto [rc1, stext] = run_cli({"dual", "--sigma", "ggh3", alg.path});
        REQUIRE(rc1 == 0);
        TempFile sfile(stext);
        auto [rc2, ftext] = run_cli({"translate", "--dir", "natural-to-esakia", sfile.path});
        REQUIRE(rc2 == 0);
        Forest f = forest_from_json(json::parse(ftext));
        CHECK(iso_check(f, hu_dual(make_chain(5))));

        TempFile ffile(ftext);
        auto [rc3, stext2] =
            run_cli({"translate", "--dir", "esakia-to-natural", "--sigma", "ggh3", ffile.path});
        REQUIRE(rc3 == 0);
        DualStructure x = structure_from_json(json::parse(stext2));
        CHECK(structures_isomorphic(x, dual_space(share(make_chain(5)), parse_sigma("ggh3"))
                                           .structure));
    }
    SUBCASE("exit code 1 with error JSON on domain errors") {
        // a three-chain forest is too deep for G_3
        TempFile deep(R"({"nodes":["a","b","c"],"parent":{"a":null,"b":"a","c":"b"}})");
        auto [rc, text] =
            run_cli({"translate", "--dir", "esakia-to-natural", "--sigma", "h1", deep.path});
        CHECK(rc == 1);
        json j = json::parse(text);
        CHECK(j.at("error") == "variety");
    }
    SUBCASE("exit code 2 on usage errors") {
        CHECK(run_cli({"dual", "/does/not/exist.json"}).first == 2);
        TempFile bad("{ not json");
        CHECK(run_cli({"dual", bad.path}).first == 2);
        TempFile badtype(R"({"type":"chain","n":"five"})");
        CHECK(run_cli({"dual", badtype.path}).first == 2);
        CHECK(run_cli({"frobnicate"}).first == 2);
        TempFile alg(R"({"type":"chain","n":3})");
        CHECK(run_cli({"coproduct", alg.path}).first == 2);  // neither --variety nor --auto
    }
    SUBCASE("free and check-duality") {
        auto [rc, text] = run_cli({"free", "--n", "3", "--gens", "1"});
        CHECK(rc == 0);
        json j = json::parse(text);
        CHECK(j.at("elements").size() == 6);
        CHECK(j.at("generators").size() == 1);

        TempFile alg(R"({"type":"chain","n":5})");
        auto [rc2, text2] = run_cli({"check-duality", "--n", "5", "--sigma", "ggh3", alg.path});
        CHECK(rc2 == 0);
        CHECK(text2.find("ok") != std::string::npos);
    }
    SUBCASE("dot on stdout") {
        TempFile alg(R"({"type":"chain","n":4})");
        auto [rc, text] = run_cli({"dual", "--format", "dot", alg.path});
        CHECK(rc == 0);
        CHECK(dot_is_valid(text));
        auto [rc2, text2] = run_cli({"free", "--n", "3", "--gens", "1", "--format", "dot"});
        CHECK(rc2 == 0);
        CHECK(dot_is_valid(text2));
        CHECK(run_cli({"dual", "--format", "yaml", alg.path}).first == 2);
    }
    SUBCASE("a tightened cap surfaces as a resource error") {
        auto [rc, text] = run_cli({"free", "--n", "5", "--gens", "6", "--cap", "100"});
        CHECK(rc == 1);
        CHECK(json::parse(text).at("error") == "resource");
        set_enumeration_cap(1'000'000);  // restore for the rest of the run
    }
    SUBCASE("coproduct count through the dual forest") {
        TempFile c3(R"({"type":"chain","n":3})");
        TempFile c4(R"({"type":"chain","n":4})");
        auto [rc, text] = run_cli({"coproduct", "--variety", "5", "--count", c3.path, c4.path});
        CHECK(rc == 0);
        CHECK(text.substr(0, 3) == "229");
        auto [rc2, text2] = run_cli({"coproduct", "--auto", "--count", c3.path, c4.path});
        CHECK(rc2 == 0);
        CHECK(text2.substr(0, 3) == "229");
    }
    SUBCASE("fullness output reparses and diagrams land on disk") {
        auto [rc, text] = run_cli({"fullness", "--sigma", "fgh2", "--dot", "godel_test_dotdir"});
        CHECK(rc == 0);
        DualStructure witness = structure_from_json(json::parse(text));
        CHECK(witness.sigma == parse_sigma("fgh2"));
        std::ifstream dot("godel_test_dotdir/witness.dot");
        REQUIRE(dot.good());
        std::stringstream buf;
        buf << dot.rdbuf();
        CHECK(dot_is_valid(buf.str()));
        std::filesystem::remove_all("godel_test_dotdir");
    }
    SUBCASE("amalgamate a V-formation file") {
        AlgebraPtr a = share(make_chain(3)), b = share(make_chain(4));
        VFormation v = make_vformation(a, b, b, Homomorphism{a, b, {0, 1, 3}},
                                       Homomorphism{a, b, {0, 2, 3}});
        TempFile vfile(vformation_to_json(v).dump());
        auto [rc, text] = run_cli({"amalgamate", "--n", "4", vfile.path});
        CHECK(rc == 0);
        CHECK(json::parse(text).at("verdict") == "fails");
        auto [rc2, text2] = run_cli({"amalgamate", "--n", "5", vfile.path});
        CHECK(rc2 == 0);
        CHECK(json::parse(text2).at("verdict") == "admits");
    }
}

TEST_SUITE_END();
