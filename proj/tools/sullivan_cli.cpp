// Command-line front end for the Sullivan-model toolkit.
//
// Subcommands:
//   validate    check a model file against the minimality conditions
//   cohomology  Betti numbers and representative cocycles up to a degree
//   whitehead   the long exact sequence tying generators to cohomology
//   decompose   the split short exact sequence for self-equivalences
//   elliptic    finite-dimensionality and duality diagnostics
//   embed       the block-matrix ambient group for an elliptic model
//   homotopy    decide whether two self-maps are homotopic
//
// Exit codes: 0 success (including a negative decision), 2 parse error,
// 3 validation error, 4 computation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <sullivan/sullivan.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace sullivan;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw compute_error("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_string(m.at(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("SULLIVAN_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw compute_error("SULLIVAN_SEED must be a non-negative integer");
        }
    }
    return 20240915ULL;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path, bool as_json) {
    const std::string text = read_file(path);
    ModelFile file = parse_model(text);
    Dga dga = file.to_dga();
    ValidationReport report = validate_sullivan(dga);
    if (as_json) {
        json issues = json::array();
        for (const auto& issue : report.issues) {
            issues.push_back({{"generator", issue.generator}, {"detail", issue.detail}});
        }
        json out = {{"command", "validate"},
                    {"file", path},
                    {"valid", report.valid()},
                    {"issues", issues}};
        std::cout << out.dump(2) << "\n";
    } else if (report.valid()) {
        std::cout << "valid: " << dga.set()->count() << " generator(s), top degree "
                  << (dga.set()->count() ? dga.set()->max_degree() : 0) << "\n";
    } else {
        std::cout << report.to_string() << "\n";
    }
    return report.valid() ? 0 : 3;
}

// -------------------------------------------------------------- cohomology

int run_cohomology(const std::string& path, int max_degree, std::optional<int> truncate,
                   bool as_json) {
    SullivanModel model = load_model(read_file(path));
    Algebra view = truncate ? model.truncated(*truncate) : model.algebra();
    json groups = json::array();
    if (!as_json) {
        std::cout << "cohomology of " << (truncate ? "truncation V<=" + std::to_string(*truncate)
                                                   : std::string("the full model"))
                  << " up to degree " << max_degree << "\n";
    }
    for (int n = 0; n <= max_degree; ++n) {
        CohomologyBasis h = CohomologyBasis::compute(view, n);
        std::vector<std::string> reps;
        reps.reserve(h.dim());
        for (const auto& rep : h.representatives()) {
            reps.push_back(to_string(rep));
        }
        if (as_json) {
            groups.push_back({{"degree", n}, {"dim", h.dim()}, {"representatives", reps}});
        } else {
            std::cout << "H^" << n << ": dim " << h.dim();
            if (h.dim() > 0) {
                std::cout << "  [";
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    std::cout << (i ? ", " : "") << reps[i];
                }
                std::cout << "]";
            }
            std::cout << "\n";
        }
    }
    if (as_json) {
        json out = {{"command", "cohomology"},
                    {"file", path},
                    {"max_degree", max_degree},
                    {"truncate", truncate ? json(*truncate) : json(nullptr)},
                    {"groups", groups}};
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

// --------------------------------------------------------------- whitehead

int run_whitehead(const std::string& path, int max_degree, bool as_json) {
    SullivanModel model = load_model(read_file(path));
    WhiteheadSequence seq = whitehead_certificates(model.algebra(), max_degree);
    if (as_json) {
        json windows = json::array();
        for (const auto& w : seq.windows) {
            windows.push_back({{"n", w.n},
                               {"dim_v", w.dim_v},
                               {"dim_h_trunc", w.dim_h_trunc},
                               {"dim_h_full", w.dim_h_full},
                               {"dim_v_next", w.dim_v_next},
                               {"b", matrix_json(w.b)},
                               {"incl", matrix_json(w.incl)},
                               {"lin", matrix_json(w.lin)},
                               {"well_defined", w.well_defined},
                               {"defect", w.defect}});
        }
        json nodes = json::array();
        for (const auto& node : seq.nodes) {
            nodes.push_back({{"at", node.at},
                             {"dim", node.dim_middle},
                             {"rank_in", node.rank_in},
                             {"rank_out", node.rank_out},
                             {"composite_zero", node.composite_zero},
                             {"exact", node.exact()}});
        }
        json out = {{"command", "whitehead"},
                    {"file", path},
                    {"max_degree", max_degree},
                    {"windows", windows},
                    {"nodes", nodes},
                    {"all_well_defined", seq.all_well_defined()},
                    {"all_exact", seq.all_exact()},
                    {"first_failure", seq.first_failure()}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& w : seq.windows) {
            std::cout << "window n=" << w.n << ": dim V^" << w.n << "=" << w.dim_v
                      << ", dim H^" << (w.n + 1) << "(V<=" << (w.n - 1) << ")="
                      << w.dim_h_trunc << ", dim H^" << (w.n + 1) << "(V)="
                      << w.dim_h_full << ", dim V^" << (w.n + 1) << "="
                      << w.dim_v_next << "\n";
            std::cout << "  b^" << w.n << " = " << to_string(w.b) << "\n";
            if (!w.well_defined) {
                std::cout << "  NOT WELL DEFINED: " << w.defect << "\n";
            }
        }
        for (const auto& node : seq.nodes) {
            std::cout << (node.exact() ? "exact" : "NOT EXACT") << " at " << node.at
                      << " (dim " << node.dim_middle << ", rank in " << node.rank_in
                      << ", rank out " << node.rank_out << ", composite "
                      << (node.composite_zero ? "zero" : "NONZERO") << ")\n";
        }
        std::cout << (seq.all_well_defined() && seq.all_exact() ? "sequence exact"
                                                            : "sequence FAILS: " + seq.first_failure())
                  << "\n";
    }
    return 0;
}

// --------------------------------------------------------------- decompose

int run_decompose(const std::string& path, int degree, int samples, std::uint64_t seed,
                  bool as_json) {
    SullivanModel model = load_model(read_file(path));
    DecomposeReport report = decompose(model, degree);

    SampleRng rng(seed);
    int psi_sigma_ok = 0;
    int theta_ok = 0;
    int sigma_hom_ok = 0;
    int sigma_hom_pairs = 0;
    std::vector<DnElement> pool;
    if (samples > 0) {
        pool = sample_dn(model, degree, static_cast<std::size_t>(samples), rng);
        for (const auto& d : pool) {
            DgaMorphism beta = sigma(model, degree, d);
            DnElement back = psi(model, degree, beta);
            if (back.rho == d.rho && back.gamma == d.gamma) {
                ++psi_sigma_ok;
            }
        }
        for (int i = 0; i + 1 < samples; i += 2) {
            ++sigma_hom_pairs;
            const DnElement& d1 = pool[static_cast<std::size_t>(i)];
            const DnElement& d2 = pool[static_cast<std::size_t>(i + 1)];
            DgaMorphism lhs = compose(sigma(model, degree, d2), sigma(model, degree, d1));
            DnElement prod = dn_mul(d2, d1);
            auto z = sigma_composition_choice(model, degree, d2, d1);
            DgaMorphism rhs = sigma(model, degree, prod, &z);
            if (lhs == rhs) {
                ++sigma_hom_ok;
            }
        }
        for (int i = 0; i < samples; ++i) {
            QMatrix f = sample_hom(model, degree, rng, -3, 3);
            DgaMorphism beta = theta_prime(model, degree, f);
            QMatrix back = theta(model, degree, beta);
            if (back == f) {
                ++theta_ok;
            }
        }
    }

    if (as_json) {
        json out = {{"command", "decompose"},
                    {"file", path},
                    {"degree", report.n},
                    {"dim_v", report.dim_v},
                    {"dim_h_trunc", report.dim_h_trunc},
                    {"hom_dim", report.hom_dim},
                    {"dim_h_next_trunc", report.dim_h_next_trunc},
                    {"rank_b", report.rank_b},
                    {"b", matrix_json(report.b)},
                    {"b_zero", report.b_zero},
                    {"b_iso", report.b_iso},
                    {"trunc_trivial", report.trunc_trivial},
                    {"dn", report.dn_description},
                    {"e", report.e_description},
                    {"dn_sharp", report.dn_sharp_description},
                    {"e_sharp", report.e_sharp_description},
                    {"seed", seed},
                    {"samples",
                     {{"requested", samples},
                      {"psi_sigma_identity", psi_sigma_ok},
                      {"sigma_pairs_checked", sigma_hom_pairs},
                      {"sigma_multiplicative", sigma_hom_ok},
                      {"theta_round_trip", theta_ok}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "decomposition at degree " << report.n << "\n";
        std::cout << "  dim V^" << report.n << " = " << report.dim_v << ", dim H^" << report.n
                  << "(V<=" << (report.n - 1) << ") = " << report.dim_h_trunc
                  << ", Hom part Q^" << report.hom_dim << "\n";
        std::cout << "  b^" << report.n << " = " << to_string(report.b) << " (rank "
                  << report.rank_b << ")\n";
        std::cout << "  D_" << report.n << " = " << report.dn_description << "\n";
        std::cout << "  E(V<=" << report.n << ") = " << report.e_description << "\n";
        std::cout << "  D_" << report.n << "# = " << report.dn_sharp_description << "\n";
        std::cout << "  E#(V<=" << report.n << ") = " << report.e_sharp_description << "\n";
        if (samples > 0) {
            std::cout << "  sampled checks (seed " << seed << "):\n";
            std::cout << "    psi(sigma(d)) == d: " << psi_sigma_ok << "/" << samples << "\n";
            std::cout << "    sigma multiplicative: " << sigma_hom_ok << "/" << sigma_hom_pairs
                      << " pairs\n";
            std::cout << "    theta(theta'(f)) == f: " << theta_ok << "/" << samples << "\n";
        }
    }
    bool all_ok = psi_sigma_ok == samples && theta_ok == samples && sigma_hom_ok == sigma_hom_pairs;
    if (!all_ok) {
        throw invariant_error("sampled section/retraction checks failed");
    }
    return 0;
}

// ---------------------------------------------------------------- elliptic

int run_elliptic(const std::string& path, int cap, bool as_json) {
    SullivanModel model = load_model(read_file(path));
    EllipticReport report = elliptic_check(model, cap);
    PurityReport purity = f0_check(model, cap);
    if (as_json) {
        json checks = json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        json homotopy = json::array();
        for (const auto& [deg, dim] : report.homotopy_degrees) {
            homotopy.push_back({{"degree", deg}, {"dim", dim}});
        }
        json out = {{"command", "elliptic"},
                    {"file", path},
                    {"cap", report.cap},
                    {"betti", report.betti},
                    {"formal_dimension",
                     report.formal_dimension ? json(*report.formal_dimension) : json(nullptr)},
                    {"homotopy_degrees", homotopy},
                    {"checks", checks},
                    {"consistent", report.consistent},
                    {"purity",
                     {{"pure", purity.pure},
                      {"dim_v_even", purity.dim_v_even},
                      {"dim_v_odd", purity.dim_v_odd},
                      {"h_odd_vanishes", purity.h_odd_vanishes},
                      {"criterion", purity.criterion},
                      {"agreement", purity.agreement}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "betti numbers up to degree " << report.cap << ":";
        for (int b : report.betti) {
            std::cout << " " << b;
        }
        std::cout << "\n";
        if (report.formal_dimension) {
            std::cout << "formal dimension: " << *report.formal_dimension << "\n";
        } else {
            std::cout << "formal dimension: not visible below the cap\n";
        }
        std::cout << "generator degrees:";
        for (const auto& [deg, dim] : report.homotopy_degrees) {
            if (dim > 0) {
                std::cout << " " << deg << "(x" << dim << ")";
            }
        }
        std::cout << "\n";
        for (const auto& c : report.checks) {
            std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail
                      << "\n";
        }
        std::cout << (report.consistent ? "consistent with an elliptic space"
                                        : "NOT consistent with an elliptic space")
                  << "\n";
        std::cout << "pure differential: " << (purity.pure ? "yes" : "no")
                  << "; equal even/odd generator counts: " << (purity.dims_equal ? "yes" : "no")
                  << "; " << (purity.h_odd_vanishes ? "odd cohomology vanishes below the cap"
                                                    : "odd cohomology present below the cap")
                  << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- embed

int run_embed(const std::string& path, bool assume_finite, bool force, bool as_json) {
    SullivanModel model = load_model(read_file(path));
    EmbeddingReport report = embedding_report(model, assume_finite, force);
    if (as_json) {
        json factors = json::array();
        for (const auto& f : report.factors) {
            factors.push_back({{"degree", f.degree}, {"p", f.p}, {"dim_l", f.dim_l}});
        }
        json out = {{"command", "embed"},
                    {"file", path},
                    {"assume_finite", report.assume_finite},
                    {"f0", report.f0},
                    {"factors", factors},
                    {"ambient", report.ambient()},
                    {"reduced", report.reduced()}};
        if (report.assume_finite) {
            out["finite_form"] = report.finite_form();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "homotopy-degree layers (ascending):\n";
        for (const auto& f : report.factors) {
            std::cout << "  degree " << f.degree << ": p=" << f.p << ", dim L^" << f.degree
                      << " = " << f.dim_l << "\n";
        }
        std::cout << "E(V) embeds in " << report.ambient() << "\n";
        std::cout << "after dropping trivial translation parts: " << report.reduced() << "\n";
        if (report.assume_finite) {
            std::cout << "finite subgroups embed in " << report.finite_form() << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------- homotopy

json homotopy_json(const Homotopy& h) {
    const Cylinder& cyl = h.cylinder();
    json per_gen = json::array();
    for (GenId g : cyl.base().gen_ids()) {
        per_gen.push_back({{"generator", cyl.base().set()->name_of(g)},
                           {"value", to_string(h.on_copy(g))},
                           {"bar", to_string(h.on_bar(g))},
                           {"hat", to_string(h.on_hat(g))}});
    }
    return per_gen;
}

void print_homotopy(const Homotopy& h) {
    const Cylinder& cyl = h.cylinder();
    for (GenId g : cyl.base().gen_ids()) {
        const std::string name = cyl.base().set()->name_of(g);
        std::cout << "  F(" << name << ") = " << to_string(h.on_copy(g)) << "\n";
        std::cout << "  F(" << name << ".bar) = " << to_string(h.on_bar(g)) << "\n";
        std::cout << "  F(" << name << ".hat) = " << to_string(h.on_hat(g)) << "\n";
    }
}

int run_homotopy(const std::string& path, const std::string& alpha_path,
                 const std::string& beta_path, const std::string& mode, bool as_json) {
    SullivanModel model = load_model(read_file(path));
    // Work in the top-degree truncation view; it carries every generator and
    // is the view the kernel invariant is defined on.
    const int n = model.top_degree();
    Algebra full = model.truncated(n);
    MapFile alpha_file = parse_map(read_file(alpha_path), full.set());
    MapFile beta_file = parse_map(read_file(beta_path), full.set());
    DgaMorphism alpha = to_self_morphism(alpha_file, full);
    DgaMorphism beta = to_self_morphism(beta_file, full);

    if (mode == "coboundary") {
        CoboundaryHomotopy result = coboundary_homotopy(alpha, beta);
        if (as_json) {
            json out = {{"command", "homotopy"},
                        {"mode", mode},
                        {"file", path},
                        {"homotopic", result.homotopic()},
                        {"obstruction", result.obstruction}};
            if (result.homotopic()) {
                out["homotopy"] = homotopy_json(*result.homotopy);
            }
            std::cout << out.dump(2) << "\n";
        } else if (result.homotopic()) {
            std::cout << "homotopic: yes; cylinder homotopy:\n";
            print_homotopy(*result.homotopy);
        } else {
            std::cout << "homotopic: no; " << result.obstruction << "\n";
        }
        return 0;
    }

    // kernel mode: classify both maps by their degree-n invariant and compare.
    QMatrix ta = theta(model, n, alpha);
    QMatrix tb = theta(model, n, beta);
    bool same = ta == tb;
    std::optional<CoboundaryHomotopy> witness;
    if (same) {
        witness = coboundary_homotopy(alpha, beta);
        if (!witness->homotopic()) {
            throw invariant_error("matching invariants but homotopy construction failed");
        }
    }
    if (as_json) {
        json out = {{"command", "homotopy"},
                    {"mode", mode},
                    {"file", path},
                    {"degree", n},
                    {"theta_alpha", matrix_json(ta)},
                    {"theta_beta", matrix_json(tb)},
                    {"homotopic", same}};
        if (witness) {
            out["homotopy"] = homotopy_json(*witness->homotopy);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "invariant of first map:  " << to_string(ta) << "\n";
        std::cout << "invariant of second map: " << to_string(tb) << "\n";
        std::cout << "homotopic: " << (same ? "yes" : "no") << "\n";
        if (witness) {
            std::cout << "cylinder homotopy:\n";
            print_homotopy(*witness->homotopy);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for minimal Sullivan algebras"};
    app.require_subcommand(1);
    // Let --json / --seed appear before or after the subcommand name.
    app.fallthrough();

    bool as_json = false;
    std::optional<std::uint64_t> seed_flag;
    app.add_flag("--json", as_json, "emit machine-readable JSON")->configurable(false);
    app.add_option("--seed", seed_flag, "seed for randomized checks (overrides SULLIVAN_SEED)");

    std::string file;
    std::string alpha_path;
    std::string beta_path;
    std::string mode = "coboundary";
    int max_degree = 0;
    std::optional<int> truncate;
    int degree = 0;
    int samples = 5;
    int cap = 0;
    bool assume_finite = false;
    bool force = false;

    auto* validate_cmd = app.add_subcommand("validate", "check the minimality conditions");
    validate_cmd->add_option("file", file, "model file")->required();

    auto* cohomology_cmd = app.add_subcommand("cohomology", "Betti numbers and representatives");
    cohomology_cmd->add_option("file", file, "model file")->required();
    cohomology_cmd->add_option("--max-degree", max_degree, "top degree to compute")->required();
    cohomology_cmd->add_option("--truncate", truncate, "use the subalgebra on generators of degree <= K");

    auto* whitehead_cmd = app.add_subcommand("whitehead", "exactness certificates");
    whitehead_cmd->add_option("file", file, "model file")->required();
    whitehead_cmd->add_option("--max-degree", max_degree, "last window to check")->required();

    auto* decompose_cmd = app.add_subcommand("decompose", "self-equivalence group decomposition");
    decompose_cmd->add_option("file", file, "model file")->required();
    decompose_cmd->add_option("--degree", degree, "stage n of the decomposition")->required();
    decompose_cmd->add_option("--samples", samples, "randomized round-trip checks to run");

    auto* elliptic_cmd = app.add_subcommand("elliptic", "finite-dimensionality diagnostics");
    elliptic_cmd->add_option("file", file, "model file")->required();
    elliptic_cmd->add_option("--cap", cap, "compute cohomology up to this degree");

    auto* embed_cmd = app.add_subcommand("embed", "ambient block-matrix group");
    embed_cmd->add_option("file", file, "model file")->required();
    embed_cmd->add_flag("--assume-finite", assume_finite, "also print the product of general linear groups that receives every finite subgroup");
    embed_cmd->add_flag("--force", force, "proceed even if the elliptic diagnostics fail");

    auto* homotopy_cmd = app.add_subcommand("homotopy", "decide whether two self-maps are homotopic");
    homotopy_cmd->add_option("file", file, "model file")->required();
    homotopy_cmd->add_option("--alpha", alpha_path, "first map file")->required();
    homotopy_cmd->add_option("--beta", beta_path, "second map file")->required();
    homotopy_cmd->add_option("--mode", mode, "coboundary (direct witness) or kernel (invariant comparison)")
        ->check(CLI::IsMember({"coboundary", "kernel"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*validate_cmd) {
            return run_validate(file, as_json);
        }
        if (*cohomology_cmd) {
            return run_cohomology(file, max_degree, truncate, as_json);
        }
        if (*whitehead_cmd) {
            return run_whitehead(file, max_degree, as_json);
        }
        if (*decompose_cmd) {
            return run_decompose(file, degree, samples, resolve_seed(seed_flag), as_json);
        }
        if (*elliptic_cmd) {
            return run_elliptic(file, cap, as_json);
        }
        if (*embed_cmd) {
            return run_embed(file, assume_finite, force, as_json);
        }
        if (*homotopy_cmd) {
            return run_homotopy(file, alpha_path, beta_path, mode, as_json);
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const model_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const compute_error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 4;
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 4;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
