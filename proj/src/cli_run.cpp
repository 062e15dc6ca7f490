#include "godel/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "godel/constructions.hpp"
#include "godel/dot.hpp"
#include "godel/enumerate.hpp"
#include "godel/error.hpp"
#include "godel/json_io.hpp"

namespace godel::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_dot(const std::string& dir, const std::string& name, const std::string& text) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << text;
}

SigmaSignature sigma_from_flags(const std::string& sigma_str, int n_flag) {
    std::optional<int> n;
    if (n_flag > 0) n = n_flag;
    if (sigma_str.empty() && n_flag > 0) return coproduct_default_sigma(n_flag);
    return parse_sigma(sigma_str, n);
}

// ---- the `examples` registry --------------------------------------------

int example_hom_counts(std::ostream& out) {
    for (int n = 2; n <= 8; ++n) {
        auto ends = hom_set(share(make_chain(n)), n);
        out << "|End C_" << n << "| = " << ends.size() << " (expected " << (1 << (n - 2))
            << ")\n";
        if (ends.size() != static_cast<std::size_t>(1) << (n - 2)) return 1;
    }
    auto homs = hom_set(share(make_chain(3)), 5);
    out << "|hom(C_3, C_5)| = " << homs.size() << " (expected 4)\n";
    return homs.size() == 4 ? 0 : 1;
}

int example_duality(std::ostream& out) {
    check_duality(share(make_chain(5)), parse_sigma("ggh3"));
    out << "duality check (C_5, ggh3): ok\n";
    check_duality(share(make_chain(4)), parse_sigma("fh2"));
    out << "duality check (C_4, fh2): ok\n";
    return 0;
}

int example_translation(std::ostream& out) {
    DualSpace d = dual_space(share(make_chain(5)), parse_sigma("ggh3"));
    QuotientForest q = F_sigma_quotient(d.structure);
    out << "natural dual of C_5 under ggh3: " << d.structure.size() << " points, "
        << q.sim.num_classes() << " classes\n";
    out << forest_to_json(q.forest).dump(2) << "\n";
    bool ok = d.structure.size() == 8 && q.sim.num_classes() == 4 &&
              iso_check(q.forest, hu_dual(make_chain(5)));
    out << "quotient isomorphic to the Esakia dual: " << (ok ? "yes" : "NO") << "\n";
    return ok ? 0 : 1;
}

int example_roundtrip(std::ostream& out) {
    int checked = 0;
    for (int n : {4, 5})
        for (const auto& f : enumerate_forests(4, n - 2)) {
            AlgebraPtr a = share(vk_algebra(f));
            for (const auto& sigma : all_sigmas(n)) {
                if (!roundtrip_check(a, sigma)) {
                    out << "round trip FAILED\n";
                    return 1;
                }
                ++checked;
            }
        }
    out << checked << " round trips between the natural and Esakia duals: all isomorphic\n";
    return 0;
}

int example_fullness(std::ostream& out) {
    for (int n : {4, 5}) {
        int witnesses = 0, full = 0;
        for (const auto& sigma : all_sigmas(n)) {
            FullnessReport rep = fullness_witness(n, sigma, 25, 1);
            rep.full ? ++full : ++witnesses;
        }
        int expected = (1 << (n - 3)) * (n - 2) - 1;
        out << "n = " << n << ": " << witnesses << " non-full signatures (expected " << expected
            << "), " << full << " full\n";
        if (witnesses != expected || full != 1) return 1;
    }
    return 0;
}

int example_amalgamation(std::ostream& out) {
    auto v = find_failing_vformation(4, 3);
    if (!v) {
        out << "no amalgamation failure found\n";
        return 1;
    }
    AmalgamCertificate cert = admits_amalgamation(*v, 4);
    out << "V-formation refused by G_4:\n" << vformation_to_json(*v).dump(2) << "\n";
    out << certificate_to_json(cert).dump(2) << "\n";
    bool ok = !cert.admits && verify_certificate(*v, 4, cert);
    out << "certificate re-verified: " << (ok ? "yes" : "NO") << "\n";
    return ok ? 0 : 1;
}

int example_coproduct_g4(std::ostream& out) {
    std::vector<AlgebraPtr> k{share(make_chain(3)), share(make_chain(4))};
    GodelAlgebra cop = coproduct_in_Gn(k, 4);
    out << cop.size() << "\n";
    out << forest_to_json(hu_dual(cop)).dump(2) << "\n";
    return cop.size() == 82 ? 0 : 1;
}

int example_coproduct_g5(std::ostream& out) {
    std::vector<AlgebraPtr> k{share(make_chain(3)), share(make_chain(4))};
    GodelAlgebra cop = coproduct_in_Gn(k, 5);
    GodelAlgebra c3 = make_chain(3), c4 = make_chain(4), c2 = make_chain(2);
    GodelAlgebra inner = adjoin_bottom(product_algebra(product_algebra(c3, c3), c2));
    GodelAlgebra reference =
        adjoin_bottom(product_algebra(product_algebra(inner, c4), c3));
    out << cop.size() << "\n";
    bool ok = cop.size() == 229 && reference.size() == 229 && algebras_isomorphic(cop, reference);
    out << "matches the linear-sum lattice: " << (ok ? "yes" : "NO") << "\n";
    return ok ? 0 : 1;
}

int example_free(std::ostream& out) {
    for (int n : {3, 4, 5}) {
        FreeAlgebra f = free_algebra(n, 1);
        out << "free 1-generated algebra in G_" << n << ": " << f.algebra.size()
            << " elements\n";
        if (f.algebra.size() != 6) return 1;
    }
    return 0;
}

int run_examples(const std::string& which, std::ostream& out) {
    struct Entry {
        const char* id;
        int (*fn)(std::ostream&);
    };
    const Entry table[] = {
        {"2.2", example_hom_counts},   {"3.3", example_duality},
        {"fig2", example_translation}, {"4.3", example_roundtrip},
        {"5.1", example_fullness},     {"6.4", example_amalgamation},
        {"6.5", example_coproduct_g5}, {"6.6", example_coproduct_g4},
        {"free", example_free},
    };
    int rc = 0;
    bool matched = false;
    for (const auto& e : table) {
        if (!which.empty() && which != e.id) continue;
        matched = true;
        if (which.empty()) out << "--- " << e.id << " ---\n";
        rc |= e.fn(out);
    }
    if (!matched) throw UsageError("unknown example '" + which + "'");
    return rc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computation with finite Gödel algebras"};
    app.require_subcommand(1);

    std::string dot_dir, sigma_str, dir_str, input, example_id;
    std::string format = "json";
    std::vector<std::string> inputs;
    int n_flag = 0, gens = 0, samples = 100;
    std::uint64_t seed = 1, cap = 0;
    bool auto_variety = false, count_only = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--dot", dot_dir, "directory for DOT diagrams");
        cmd->add_option("--format", format, "stdout format: json or dot");
        cmd->add_option("--cap", cap, "override the enumeration cap");
        cmd->add_option("--seed", seed, "seed for search-based fixtures");
    };

    CLI::App* dual = app.add_subcommand("dual", "Esakia forest dual of an algebra");
    dual->add_option("input", input, "algebra JSON file")->required();
    dual->add_option("--sigma", sigma_str, "emit the natural dual for this signature instead");
    add_common(dual);

    CLI::App* esakia = app.add_subcommand("esakia", "up-set algebra of a forest");
    esakia->add_option("input", input, "forest JSON file")->required();
    add_common(esakia);

    CLI::App* translate = app.add_subcommand("translate", "two-way duality translation");
    translate->add_option("--dir", dir_str, "natural-to-esakia | esakia-to-natural")->required();
    translate->add_option("--sigma", sigma_str, "signature, e.g. ggh3");
    translate->add_option("--n", n_flag, "chain size (when not implied by --sigma)");
    translate->add_option("input", input, "input JSON file")->required();
    add_common(translate);

    CLI::App* coproduct = app.add_subcommand("coproduct", "coproduct of algebras");
    coproduct->add_option("--variety", n_flag, "compute inside G_n");
    coproduct->add_flag("--auto", auto_variety, "choose the variety from the components");
    coproduct->add_option("--sigma", sigma_str, "internal signature override");
    coproduct->add_flag("--count", count_only, "print only the element count");
    coproduct->add_option("inputs", inputs, "algebra JSON files")->required();
    add_common(coproduct);

    CLI::App* amalgamate = app.add_subcommand("amalgamate", "decide amalgamation of a V-formation");
    amalgamate->add_option("--n", n_flag, "variety index")->required();
    amalgamate->add_option("input", input, "V-formation JSON file")->required();
    add_common(amalgamate);

    CLI::App* free_cmd = app.add_subcommand("free", "finitely generated free algebra");
    free_cmd->add_option("--n", n_flag, "variety index")->required();
    free_cmd->add_option("--gens", gens, "number of generators")->required();
    add_common(free_cmd);

    CLI::App* check = app.add_subcommand("check-duality", "verify the evaluation isomorphism");
    check->add_option("--n", n_flag, "chain size");
    check->add_option("--sigma", sigma_str, "signature")->required();
    check->add_option("input", input, "algebra JSON file")->required();
    add_common(check);

    CLI::App* fullness = app.add_subcommand("fullness", "fullness witness for a signature");
    fullness->add_option("--n", n_flag, "chain size");
    fullness->add_option("--sigma", sigma_str, "signature")->required();
    fullness->add_option("--samples", samples, "substructure samples of the square");
    add_common(fullness);

    CLI::App* examples = app.add_subcommand("examples", "reproduce the worked examples");
    examples->add_option("id", example_id, "which example (default: all)");
    add_common(examples);

    std::vector<std::string> argv(args);
    try {
        std::vector<const char*> cargs;
        cargs.push_back("godel");
        for (auto& a : argv) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (format != "json" && format != "dot") {
        err << "usage error: --format must be json or dot\n";
        return 2;
    }
    const bool as_dot = format == "dot";

    try {
        if (cap > 0) set_enumeration_cap(cap);

        if (*dual) {
            GodelAlgebra a = algebra_from_json(read_json_file(input));
            if (!sigma_str.empty()) {
                SigmaSignature sigma = sigma_from_flags(sigma_str, n_flag);
                DualSpace d = dual_space(share(std::move(a)), sigma);
                out << (as_dot ? dot_structure(d.structure)
                               : structure_to_json(d.structure).dump(2) + "\n");
                write_dot(dot_dir, "structure.dot", dot_structure(d.structure));
            } else {
                Forest f = hu_dual(a);
                out << (as_dot ? dot_forest(f) : forest_to_json(f).dump(2) + "\n");
                write_dot(dot_dir, "esakia.dot", dot_forest(f));
            }
            return 0;
        }
        if (*esakia) {
            Forest f = forest_from_json(read_json_file(input));
            GodelAlgebra a = vk_algebra(f);
            out << (as_dot ? dot_poset(order_poset(a), "lattice")
                           : algebra_to_json(a).dump(2) + "\n");
            write_dot(dot_dir, "forest.dot", dot_forest(f));
            return 0;
        }
        if (*translate) {
            if (dir_str == "natural-to-esakia") {
                DualStructure x = structure_from_json(read_json_file(input));
                QuotientForest q = F_sigma_quotient(x);
                out << (as_dot ? dot_translation(x, q) : forest_to_json(q.forest).dump(2) + "\n");
                write_dot(dot_dir, "structure.dot", dot_structure(x));
                write_dot(dot_dir, "forest.dot", dot_forest(q.forest));
                write_dot(dot_dir, "translation.dot", dot_translation(x, q));
            } else if (dir_str == "esakia-to-natural") {
                Forest y = forest_from_json(read_json_file(input));
                SigmaSignature sigma = sigma_from_flags(sigma_str, n_flag);
                DualStructure x = G_sigma(y, sigma);
                out << (as_dot ? dot_translation(x, F_sigma_quotient(x))
                               : structure_to_json(x).dump(2) + "\n");
                write_dot(dot_dir, "forest.dot", dot_forest(y));
                write_dot(dot_dir, "structure.dot", dot_structure(x));
                write_dot(dot_dir, "translation.dot", dot_translation(x, F_sigma_quotient(x)));
            } else {
                throw UsageError("--dir must be natural-to-esakia or esakia-to-natural");
            }
            return 0;
        }
        if (*coproduct) {
            std::vector<AlgebraPtr> k;
            for (auto& path : inputs) k.push_back(share(algebra_from_json(read_json_file(path))));
            if (auto_variety == (n_flag > 0))
                throw UsageError("pass exactly one of --variety and --auto");
            int n = n_flag;
            if (auto_variety) {
                n = 2;
                for (auto& a : k) n += variety_index(*a) - 2;
                n = std::max(n, 2);
            }
            std::optional<SigmaSignature> sigma;
            if (!sigma_str.empty()) sigma = parse_sigma(sigma_str, n);
            if (count_only) {
                // counting through the dual forest handles coproducts far too
                // large to carry operation tables
                out << count_upsets(coproduct_dual_forest(k, n, sigma)) << "\n";
            } else if (as_dot) {
                out << dot_forest(coproduct_dual_forest(k, n, sigma), "coproduct_dual");
            } else {
                out << algebra_to_json(coproduct_in_Gn(k, n, sigma)).dump(2) << "\n";
            }
            if (!dot_dir.empty()) {
                SigmaSignature sig =
                    sigma.value_or(coproduct_default_sigma(n));
                std::optional<DualStructure> prod;
                for (std::size_t i = 0; i < k.size(); ++i) {
                    Forest f = hu_dual(*k[i]);
                    write_dot(dot_dir, "step1_dual_" + std::to_string(i) + ".dot", dot_forest(f));
                    DualStructure d = G_sigma(f, sig);
                    write_dot(dot_dir, "step2_natural_" + std::to_string(i) + ".dot",
                              dot_structure(d));
                    prod = prod ? product_structure(*prod, d) : d;
                }
                if (prod) {
                    write_dot(dot_dir, "step3_product.dot", dot_structure(*prod));
                    QuotientForest q = F_sigma_quotient(*prod);
                    write_dot(dot_dir, "step4_quotient.dot", dot_translation(*prod, q));
                    write_dot(dot_dir, "step4_forest.dot", dot_forest(q.forest));
                }
            }
            return 0;
        }
        if (*amalgamate) {
            VFormation v = vformation_from_json(read_json_file(input));
            AmalgamCertificate cert = admits_amalgamation(v, n_flag);
            if (!verify_certificate(v, n_flag, cert))
                throw_internal("certificate failed its own re-verification");
            out << certificate_to_json(cert).dump(2) << "\n";
            if (!dot_dir.empty()) {
                SigmaSignature sigma = full_sigma(n_flag);
                write_dot(dot_dir, "dual_B.dot",
                          dot_structure(dual_space(v.b, sigma).structure));
                write_dot(dot_dir, "dual_C.dot",
                          dot_structure(dual_space(v.c, sigma).structure));
                if (cert.amalgam)
                    write_dot(dot_dir, "amalgam_dual.dot",
                              dot_forest(hu_dual(cert.amalgam->algebra)));
            }
            return 0;
        }
        if (*free_cmd) {
            FreeAlgebra f = free_algebra(n_flag, gens);
            if (as_dot) {
                out << dot_poset(order_poset(f.algebra), "free_algebra");
            } else {
                json j = algebra_to_json(f.algebra);
                json gens_json = json::array();
                for (int g : f.generators) gens_json.push_back(f.algebra.labels[g]);
                j["generators"] = gens_json;
                out << j.dump(2) << "\n";
            }
            write_dot(dot_dir, "free_dual.dot", dot_forest(hu_dual(f.algebra)));
            return 0;
        }
        if (*check) {
            AlgebraPtr a = share(algebra_from_json(read_json_file(input)));
            SigmaSignature sigma = parse_sigma(sigma_str, n_flag > 0 ? std::optional<int>(n_flag)
                                                                     : std::nullopt);
            check_duality(a, sigma);
            out << "ok\n";
            if (!dot_dir.empty())
                write_dot(dot_dir, "structure.dot", dot_structure(dual_space(a, sigma).structure));
            return 0;
        }
        if (*fullness) {
            SigmaSignature sigma = parse_sigma(sigma_str, n_flag > 0 ? std::optional<int>(n_flag)
                                                                     : std::nullopt);
            FullnessReport rep = fullness_witness(sigma.n, sigma, samples, seed);
            if (rep.full) {
                out << "full\n";
            } else {
                out << (as_dot ? dot_structure(*rep.witness, "witness")
                               : structure_to_json(*rep.witness).dump(2) + "\n");
                write_dot(dot_dir, "witness.dot", dot_structure(*rep.witness));
            }
            return 0;
        }
        if (*examples) {
            return run_examples(example_id, out);
        }
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "usage error: malformed JSON value: " << e.what() << "\n";
        return 2;
    } catch (const godel_error& e) {
        out << error_to_json(e).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        out << error_to_json(godel_error(errc::internal, e.what())).dump(2) << "\n";
        return 1;
    }
}

}  // namespace godel::cli
