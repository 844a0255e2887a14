#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cspcat/cospan.hpp"
#include "cspcat/cospan_cats.hpp"
#include "cspcat/deciders.hpp"
#include "cspcat/error.hpp"
#include "cspcat/fincat.hpp"
#include "cspcat/finset.hpp"
#include "cspcat/fixtures.hpp"
#include "cspcat/homology.hpp"
#include "cspcat/simplicial.hpp"
#include "cspcat/textio.hpp"
#include "cspcat/verify.hpp"

namespace {

using namespace cspcat;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool machine = false;

void emit(const std::string& key, const std::string& value) {
    if (machine)
        std::cout << key << "=" << value << "\n";
    else
        std::cout << value << "\n";
}

void emit_labeled(const std::string& key, const std::string& label, const std::string& value) {
    if (machine)
        std::cout << key << "=" << value << "\n";
    else
        std::cout << label << value << "\n";
}

/// Builds the one- or two-step generated fixture over Delta^n.
TruncatedFixture cli_fixture(int n, int closed_bound, int cap) {
    if (n == 1) return interval_fixture(closed_bound, cap);
    if (n == 2) return closed_point_fixture(closed_bound, cap);
    throw input_error("fixtures are generated for n = 1 or 2");
}

void truncation_note(const SimplicialSet& x) {
    if (x.truncated_marker && !machine)
        std::cout << "note: cap-truncated data; verdicts are relative to cap " << x.cap << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"cospan categories, nerves, and fibration deciders"};
    app.require_subcommand(1);
    app.add_flag_callback(
        "--machine", [] { machine = true; }, "line-oriented key=value output");
    std::string fmt = "text";
    app.add_option("--format", fmt, "output format: text|machine")
        ->check(CLI::IsMember({"text", "machine"}));

    // ---- cospan level ----------------------------------------------------
    std::string lit_f, lit_g;
    auto* c_compose = app.add_subcommand("compose", "compose two cospan literals (second after first)");
    c_compose->add_option("first", lit_f, "cospan literal A -> W <- B")->required();
    c_compose->add_option("second", lit_g, "cospan literal B -> V <- C")->required();

    auto* c_canon = app.add_subcommand("canon", "canonical class of a cospan");
    c_canon->add_option("cospan", lit_f)->required();

    auto* c_reduce = app.add_subcommand("reduce", "drop the closed part of a cospan");
    c_reduce->add_option("cospan", lit_f)->required();

    auto* c_auto = app.add_subcommand("auto-order", "order of the automorphism group");
    c_auto->add_option("cospan", lit_f)->required();

    int opt_a = 0, opt_b = 0, opt_closed = 3;
    auto* c_enum = app.add_subcommand("enum-hom", "enumerate morphism classes a -> b");
    c_enum->add_option("--a", opt_a, "source size")->required();
    c_enum->add_option("--b", opt_b, "target size")->required();
    c_enum->add_option("--closed-bound", opt_closed, "largest closed count (default 3)");

    auto* c_fiber = app.add_subcommand("fiber-R", "classes over the reduced part of a cospan");
    c_fiber->add_option("cospan", lit_f)->required();
    c_fiber->add_option("--closed-bound", opt_closed, "largest closed count (default 3)");

    auto* c_lcart = app.add_subcommand("check-lcart",
                                       "locally Cartesian over the reduced quotient?");
    c_lcart->add_option("cospan", lit_f)->required();
    c_lcart->add_option("--closed-bound", opt_closed, "truncation bound (default 3)");

    // ---- finite-category level -------------------------------------------
    int opt_m = 1;
    bool opt_inj = false;
    auto* c_build = app.add_subcommand("build-cat",
                                       "materialize the reduced-cospan category on 0..m");
    c_build->add_option("--m", opt_m, "largest object")->required();
    c_build->add_flag("--inj", opt_inj, "injective-legs subcategory");

    std::string path_dom, path_cod, path_map;
    bool opt_cocart = false;
    auto* c_fibr = app.add_subcommand("check-fibration",
                                      "is a functor a locally (co)Cartesian fibration?");
    c_fibr->add_option("--dom", path_dom, "domain category file ('-' for stdin)")->required();
    c_fibr->add_option("--cod", path_cod, "codomain category file")->required();
    c_fibr->add_option("--map", path_map, "functor assignment file")->required();
    c_fibr->add_flag("--cocartesian", opt_cocart, "test the coCartesian variant");

    // ---- simplicial level --------------------------------------------------
    std::string path_cat;
    int opt_cap = 4;
    bool opt_opposite = false;
    auto* c_nerve = app.add_subcommand("nerve", "dump the nerve of a category");
    c_nerve->add_option("--cat", path_cat, "category file ('-' for stdin)")->required();
    c_nerve->add_option("--cap", opt_cap, "dimension cap (default 4)");
    c_nerve->add_flag("--opposite", opt_opposite, "nerve of the opposite category");

    std::string opt_edge, opt_mode = "lifting";
    bool opt_local = false;
    auto* c_edge = app.add_subcommand("check-edge",
                                      "is a nerve edge (locally) (co)Cartesian for a functor?");
    c_edge->add_option("--dom", path_dom, "domain category file")->required();
    c_edge->add_option("--cod", path_cod, "codomain category file")->required();
    c_edge->add_option("--map", path_map, "functor assignment file")->required();
    c_edge->add_option("--edge", opt_edge, "domain morphism name")->required();
    c_edge->add_option("--cap", opt_cap, "dimension cap (default 4)");
    c_edge->add_option("--mode", opt_mode, "decision procedure: lifting|trivial-kan")
        ->check(CLI::IsMember({"lifting", "trivial-kan"}));
    c_edge->add_flag("--cocartesian", opt_cocart, "test the coCartesian variant");
    c_edge->add_flag("--local", opt_local, "local variant (over the single base edge)");

    int opt_n = 2;
    auto* c_key = app.add_subcommand("key-lemma",
                                     "connectivity/homology of the comparison object");
    c_key->add_option("--n", opt_n, "base simplex dimension (1 or 2, default 2)");
    c_key->add_option("--closed-bound", opt_closed, "fixture truncation bound (default 3)");
    c_key->add_option("--cap", opt_cap, "dimension cap (default 4)");

    std::string opt_space = "";
    int opt_boundary = -1, opt_simplex = -1, opt_up_to = -1;
    bool opt_all_cells = false;
    auto* c_hom = app.add_subcommand("homology", "integral homology of a finite complex");
    c_hom->add_option("--boundary", opt_boundary, "boundary of the N-simplex");
    c_hom->add_option("--simplex", opt_simplex, "the standard N-simplex");
    c_hom->add_option("--nerve-cat", path_cat, "nerve of a category file");
    c_hom->add_option("--fixture", opt_space, "generated fixture: interval|closed-point");
    c_hom->add_option("--closed-bound", opt_closed, "fixture truncation bound (default 3)");
    c_hom->add_option("--cap", opt_cap, "dimension cap (default 4)");
    c_hom->add_option("--up-to", opt_up_to, "largest degree reported (default cap-1)");
    c_hom->add_flag("--all-cells", opt_all_cells,
                    "use every cell (semi-simplicial convention)");

    std::string opt_suite = "all";
    VerifyOptions vopt;
    auto* c_verify = app.add_subcommand("verify", "run the verification suites");
    c_verify->add_option("suite", opt_suite, "suite name or 'all'");
    c_verify->add_option("--seed", vopt.seed, "seed for randomized checks");
    c_verify->add_option("--jobs", vopt.jobs, "worker threads (0 = hardware)");
    c_verify->add_option("--cap", vopt.cap, "dimension cap for fixture suites");
    c_verify->add_option("--n", vopt.n, "largest fixture base dimension");
    c_verify->add_option("--closed-bound", vopt.closed_bound, "largest fixture bound");
    c_verify->add_flag("--timings", vopt.timings, "append wall-clock times to reports");

    // allow the global output options to appear after a subcommand name
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad invocation is an input error
    }
    if (fmt == "machine") machine = true;

    if (*c_compose) {
        Cospan f = parse_cospan(lit_f), g = parse_cospan(lit_g);
        emit("composite", print_cospan(compose(g, f)));
        return 0;
    }
    if (*c_canon) {
        emit("class", print_class(canonical_class(parse_cospan(lit_f))));
        return 0;
    }
    if (*c_reduce) {
        emit("reduced", print_cospan(reduce(parse_cospan(lit_f))));
        return 0;
    }
    if (*c_auto) {
        emit_labeled("order", "automorphism order = ",
                     std::to_string(automorphism_order(parse_cospan(lit_f))));
        return 0;
    }
    if (*c_enum) {
        if (opt_a < 0 || opt_b < 0 || opt_closed < 0)
            throw input_error("enum-hom: sizes and bound must be nonnegative");
        for (const auto& cls : enumerate_hcsp_hom(opt_a, opt_b, opt_closed))
            emit("class", print_class(cls));
        return 0;
    }
    if (*c_fiber) {
        Cospan f = parse_cospan(lit_f);
        for (const auto& cls : fiber_R(functor_R(f), opt_closed))
            emit("class", print_class(cls));
        return 0;
    }
    if (*c_lcart) {
        Cospan f = parse_cospan(lit_f);
        bool ok = is_locally_R_cartesian(f, std::max(1, opt_closed));
        emit_labeled("locally_r_cartesian", "locally R-Cartesian: ", ok ? "yes" : "no");
        if (!ok) emit_labeled("counterexample", "closed part is nonempty: ", print_cospan(f));
        return ok ? 0 : 1;
    }
    if (*c_build) {
        if (opt_m < 0) throw input_error("build-cat: m must be nonnegative");
        RedCategory rc = opt_inj ? build_red_inj_category(opt_m) : build_red_category(opt_m);
        std::cout << print_fincat(rc.cat);
        return 0;
    }
    if (*c_fibr) {
        FinCategory dom = parse_fincat(read_input(path_dom));
        FinCategory cod = parse_fincat(read_input(path_cod));
        FunctorData p = parse_functor_map(dom, cod, read_input(path_map));
        FunctorData q = opt_cocart ? opposite_functor(p) : p;
        const char* kind = opt_cocart ? "locally coCartesian fibration: "
                                      : "locally Cartesian fibration: ";
        bool ok = is_locally_cartesian_fibration(q);
        emit_labeled("fibration", kind, ok ? "yes" : "no");
        if (!ok) {
            // minimal counterexample: first base morphism and fiber object
            // with no locally Cartesian lift
            for (int k = 0; k < q.codomain.num_morphisms(); ++k) {
                int b = q.codomain.morphisms[k].tgt;
                for (int y = 0; y < q.domain.num_objects(); ++y) {
                    if (q.object_map[y] != b) continue;
                    bool found = false;
                    for (int f = 0; f < q.domain.num_morphisms() && !found; ++f)
                        if (q.domain.morphisms[f].tgt == y && q.morphism_map[f] == k &&
                            is_locally_cartesian_morphism(q, f))
                            found = true;
                    if (!found) {
                        emit_labeled("counterexample",
                                     "counterexample: no lift of morphism '",
                                     cod.morphisms[k].name + "' to object '" +
                                         dom.objects[y] + "'");
                        return 1;
                    }
                }
            }
            return 1;
        }
        return 0;
    }
    if (*c_nerve) {
        FinCategory cat = parse_fincat(read_input(path_cat));
        if (opt_opposite) cat = opposite_category(cat);
        std::cout << print_simplicial(nerve(cat, opt_cap).X);
        return 0;
    }
    if (*c_edge) {
        FinCategory dom = parse_fincat(read_input(path_dom));
        FinCategory cod = parse_fincat(read_input(path_cod));
        FunctorData p = parse_functor_map(dom, cod, read_input(path_map));
        int m = -1;
        for (int i = 0; i < dom.num_morphisms(); ++i)
            if (dom.morphisms[i].name == opt_edge) m = i;
        if (m < 0) throw input_error("check-edge: unknown morphism '" + opt_edge + "'");
        SimplicialMap nm = nerve_map(p, opt_cap);
        int e = nerve(dom, opt_cap).edge_of_morphism(m);
        bool ok;
        if (opt_mode == "lifting")
            ok = opt_cocart ? is_cocartesian_edge_lifting(nm, e, opt_cap, opt_local)
                            : is_cartesian_edge_lifting(nm, e, opt_cap, opt_local);
        else if (opt_local)
            ok = opt_cocart ? is_locally_cocartesian_edge_trivialkan(nm, e, opt_cap)
                            : is_locally_cartesian_edge_trivialkan(nm, e, opt_cap);
        else
            ok = opt_cocart ? is_cocartesian_edge_trivialkan(nm, e, opt_cap)
                            : is_cartesian_edge_trivialkan(nm, e, opt_cap);
        std::string what = std::string(opt_local ? "locally " : "") +
                           (opt_cocart ? "coCartesian" : "Cartesian") + " (" + opt_mode +
                           ", cap " + std::to_string(opt_cap) + "): ";
        emit_labeled("verdict", what, ok ? "yes" : "no");
        truncation_note(nm.dom);
        return ok ? 0 : 1;
    }
    if (*c_key) {
        TruncatedFixture fx = cli_fixture(opt_n, opt_closed, opt_cap);
        int deg = opt_cap - 2;
        if (deg < 1) throw input_error("key-lemma: cap must be at least 3");
        bool all_ok = true;
        for (int i = 0; i <= fx.n; ++i) {
            FiberProduct K = key_lemma_object(fx.proj, fx.n, fx.vertex_over(i));
            bool conn = path_components(K.P) == 1;
            bool ok = conn && is_contractible_through(K.P, deg);
            all_ok = all_ok && ok;
            if (machine) {
                std::cout << "vertex=" << i << " connected=" << (conn ? 1 : 0)
                          << " contractible_through_" << deg << "=" << (ok ? 1 : 0) << "\n";
            } else {
                std::cout << "vertex " << i << ": "
                          << (conn ? "connected" : "NOT connected") << ", H_1..H_" << deg
                          << (ok ? " trivial" : " NOT trivial") << "\n";
            }
        }
        truncation_note(fx.X);
        return all_ok ? 0 : 1;
    }
    if (*c_hom) {
        SimplicialSet x;
        if (opt_boundary >= 0)
            x = boundary_complex(opt_boundary, opt_cap).X;
        else if (opt_simplex >= 0)
            x = standard_simplex(opt_simplex, opt_cap).X;
        else if (!path_cat.empty())
            x = nerve(parse_fincat(read_input(path_cat)), opt_cap).X;
        else if (opt_space == "interval")
            x = interval_fixture(opt_closed, opt_cap).X;
        else if (opt_space == "closed-point")
            x = closed_point_fixture(opt_closed, opt_cap).X;
        else
            throw input_error(
                "homology: pick one of --boundary, --simplex, --nerve-cat, --fixture");
        int up_to = opt_up_to >= 0 ? opt_up_to : x.cap - 1;
        ChainComplex cc = opt_all_cells ? chain_complex_all_cells(x) : chain_complex(x);
        auto h = homology(cc, up_to);
        for (int d = 0; d <= up_to; ++d) {
            if (machine) {
                std::ostringstream os;
                os << h[d].betti;
                for (const bigint& t : h[d].torsion) os << "," << t;
                std::cout << "H_" << d << "=" << os.str() << "\n";
            } else {
                std::cout << print_homology_line(d, h[d]) << "\n";
            }
        }
        truncation_note(x);
        return 0;
    }
    if (*c_verify) {
        bool found = false, all_ok = true;
        for (const auto& s : verification_suites()) {
            if (opt_suite != "all" && s.name != opt_suite) continue;
            found = true;
            CheckResult r = run_suite(s, vopt);
            all_ok = all_ok && r.pass;
            if (machine)
                std::cout << "suite=" << s.name << " pass=" << (r.pass ? 1 : 0) << " detail=\""
                          << r.detail << "\"\n";
            else
                std::cout << (r.pass ? "PASS" : "FAIL") << " " << s.name << " - " << r.detail
                          << "\n";
        }
        if (!found) throw input_error("verify: unknown suite '" + opt_suite + "'");
        return all_ok ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cspcat::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cspcat::cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
