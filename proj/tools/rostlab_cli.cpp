#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rostlab/session.hpp"

using namespace rostlab;

namespace {

// Every document carries the schema tag; keys stay sorted so replays
// are byte-identical.
void print_doc(nlohmann::json j) {
    j["schema"] = 1;
    std::cout << j.dump(2) << "\n";
}

[[noreturn]] void die(const Error& e) {
    std::string what = e.what();
    std::string detail = what.size() > e.name().size() + 2
                             ? what.substr(e.name().size() + 2)
                             : what;
    print_doc({{"detail", detail}, {"error", e.name()}});
    std::cerr << "error: " << what << "\n";
    std::exit(2);
}

std::string basis_string(const TowerField& F) {
    std::string s = "(zeta=" + F.zeta().str();
    for (int i = 1; i <= F.depth(); ++i) s += ", x" + std::to_string(i);
    return s + ")";
}

CohClass eval_degree2(const Session& ses, const std::string& expr) {
    EvalValue v = ses.eval(expr);
    if (!v.cls || v.cls->degree() != 2)
        fail("ParseError", "expected a degree-2 class expression");
    return *v.cls;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Galois cohomology calculator for iterated Laurent series fields"};
    app.require_subcommand(1);

    std::string config;
    app.add_option("--config", config, "session config file (one directive per line)");

    // field
    auto* cmd_field = app.add_subcommand("field", "define a tower field handle");
    int f_q = 0, f_ell = 0, f_n = 1, f_depth = 1, f_prec = 8;
    std::string f_name;
    cmd_field->add_option("--q", f_q, "residue field size")->required();
    cmd_field->add_option("--ell", f_ell, "coefficient prime l")->required();
    cmd_field->add_option("--n", f_n, "power in the modulus l^n");
    cmd_field->add_option("--depth", f_depth, "number of Laurent levels");
    cmd_field->add_option("--precision", f_prec, "series window per level");
    cmd_field->add_option("--name", f_name, "handle name (default: next free F<k>)");
    cmd_field->add_option("--config", config, "session config file");

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a class expression");
    std::string e_expr;
    cmd_eval->add_option("expr", e_expr, "symbol/residue/cup/decompose/class expression")
        ->required();
    cmd_eval->add_option("--config", config, "session config file");

    // ext
    auto* cmd_ext = app.add_subcommand("ext", "define a cyclic extension handle");
    std::string x_name, x_field, x_kind, x_b;
    int x_m = 1, x_f = 1;
    cmd_ext->add_option("--name", x_name, "handle name (default: next free E<k>)");
    cmd_ext->add_option("--field", x_field, "base field handle (default: current)");
    cmd_ext->add_option("--kind", x_kind, "kummer or unramified")->required();
    cmd_ext->add_option("--b", x_b, "radicand element (kummer)");
    cmd_ext->add_option("--m", x_m, "degree exponent: degree l^m (kummer)");
    cmd_ext->add_option("--f", x_f, "residue degree (unramified)");
    cmd_ext->add_option("--config", config, "session config file");

    // rost / suslin / report
    auto* cmd_rost = app.add_subcommand("rost", "Rost kernel of a degree-2 class");
    auto* cmd_suslin = app.add_subcommand("suslin", "Suslin group of a degree-2 class");
    auto* cmd_report = app.add_subcommand("report", "full R/S quotient report");
    std::string r_alpha;
    for (auto* c : {cmd_rost, cmd_suslin, cmd_report}) {
        c->add_option("--alpha", r_alpha, "degree-2 class expression")->required();
        c->add_option("--config", config, "session config file");
    }

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    int v_q = 0, v_ell = 0, v_n = 1, v_depth = 2, v_jobs = 0;
    unsigned long long v_seed = 0;
    long long v_samples = 10000;
    bool v_serial = false;
    std::string names;
    for (const auto& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
    cmd_verify->add_option("suite", v_suite, "one of: " + names)->required();
    auto* vq = cmd_verify->add_option("--q", v_q, "restrict to one tower: residue size");
    cmd_verify->add_option("--ell", v_ell, "tower restriction: prime l")->needs(vq);
    cmd_verify->add_option("--n", v_n, "tower restriction: modulus power")->needs(vq);
    cmd_verify->add_option("--depth", v_depth, "tower restriction: depth")->needs(vq);
    cmd_verify->add_option("--seed", v_seed, "base RNG seed (default 0)");
    cmd_verify->add_option("--samples", v_samples, "samples per tower (default 10000)");
    cmd_verify->add_option("--jobs", v_jobs,
                           "worker count (default: machine parallelism or ROSTLAB_JOBS)");
    cmd_verify->add_flag("--serial", v_serial, "use the serial reference loop");

    // albert
    auto* cmd_albert = app.add_subcommand(
        "albert", "Albert form and index of a biquaternion class");
    std::string a_a, a_b, a_c, a_d, a_field;
    cmd_albert->add_option("--a", a_a, "first slot of the first symbol")->required();
    cmd_albert->add_option("--b", a_b, "second slot of the first symbol")->required();
    cmd_albert->add_option("--c", a_c, "first slot of the second symbol")->required();
    cmd_albert->add_option("--d", a_d, "second slot of the second symbol")->required();
    cmd_albert->add_option("--field", a_field, "field handle (default: current)");
    cmd_albert->add_option("--config", config, "session config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Session ses;
        if (!config.empty()) ses.load_config(config);

        if (cmd_field->parsed()) {
            TowerField F(f_q, f_ell, f_n, f_depth,
                         std::vector<int>(static_cast<size_t>(f_depth), f_prec));
            std::string h;
            if (f_name.empty()) {
                h = ses.add_field(F);
            } else {
                ses.add_field(f_name, F);
                h = f_name;
            }
            print_doc({{"basis", basis_string(F)},
                       {"field", F.describe()},
                       {"handle", h},
                       {"modulus", F.class_modulus()}});
            std::cerr << "field " << h << ": " << F.describe() << ", basis "
                      << basis_string(F) << "\n";
            return 0;
        }

        if (cmd_eval->parsed()) {
            EvalValue v = ses.eval(e_expr);
            print_doc(json_of(v));
            std::cerr << "eval ok\n";
            return 0;
        }

        if (cmd_ext->parsed()) {
            const TowerField& F =
                x_field.empty() ? ses.current_field() : ses.field(x_field);
            CyclicExtension E = [&] {
                if (x_kind == "kummer") {
                    if (x_b.empty())
                        fail("ConfigError", "kummer ext needs --b <element>");
                    return CyclicExtension::make_kummer(
                        F, ses.parse_element(x_b, F), x_m);
                }
                if (x_kind == "unramified")
                    return CyclicExtension::make_unramified(F, x_f);
                fail("ConfigError", "unknown ext kind " + x_kind);
            }();
            std::string h;
            if (x_name.empty()) {
                h = ses.add_extension(E);
            } else {
                ses.add_extension(x_name, E);
                h = x_name;
            }
            print_doc({{"base", E.base().describe()},
                       {"degree", E.degree()},
                       {"handle", h},
                       {"kind", E.kind() == CyclicExtension::Kind::Kummer
                                    ? "kummer"
                                    : "unramified"},
                       {"materialized", E.materialized()}});
            std::cerr << "ext " << h << ": degree " << E.degree() << "\n";
            return 0;
        }

        if (cmd_rost->parsed()) {
            CohClass alpha = eval_degree2(ses, r_alpha);
            Subgroup R = rost_kernel(alpha);
            print_doc({{"R", json_of(R)}, {"alpha", json_of(alpha)}});
            std::cerr << "rost kernel order " << R.order() << "\n";
            return 0;
        }

        if (cmd_suslin->parsed()) {
            CohClass alpha = eval_degree2(ses, r_alpha);
            NrdGroup S = suslin_group(alpha);
            print_doc({{"S", json_of(S.group)},
                       {"alpha", json_of(alpha)},
                       {"s_exact", S.exactness == Exactness::Exact}});
            std::cerr << "suslin group order " << S.group.order() << "\n";
            return 0;
        }

        if (cmd_report->parsed()) {
            CohClass alpha = eval_degree2(ses, r_alpha);
            RostReport rep = quotient_report(alpha);
            print_doc(json_of(rep));
            std::cerr << "report: quotient " << rep.quotient_order << "\n";
            return rep.status == ReportStatus::Counterexample ? 1
                   : rep.status == ReportStatus::Inconclusive ? 3
                                                              : 0;
        }

        if (cmd_verify->parsed()) {
            SuiteOptions opt;
            opt.seed = v_seed;
            opt.samples = v_samples;
            opt.parallel = !v_serial;
            opt.jobs = v_jobs;
            if (opt.jobs == 0) {
                if (const char* ej = std::getenv("ROSTLAB_JOBS"))
                    opt.jobs = std::atoi(ej);
            }
            if (vq->count() > 0) opt.tower = TowerSpec{v_q, v_ell, v_n, v_depth};
            if (opt.tower && v_ell == 0)
                fail("ConfigError", "tower restriction needs --ell");
            SuiteResult res = run_suite(v_suite, opt);
            print_doc(json_of(res));
            std::cerr << "suite " << res.suite << ": " << res.cells << " cells, "
                      << res.verified << " verified, " << res.inconclusive
                      << " inconclusive, " << res.failures.size() << " failures\n";
            return res.exit_code();
        }

        if (cmd_albert->parsed()) {
            const TowerField& F =
                a_field.empty() ? ses.current_field() : ses.field(a_field);
            FieldElement a = ses.parse_element(a_a, F);
            FieldElement b = ses.parse_element(a_b, F);
            FieldElement c = ses.parse_element(a_c, F);
            FieldElement d = ses.parse_element(a_d, F);
            QuadraticForm phi = albert_form(a, b, c, d);
            Prop21Report rep = check_prop_2_1(a, b, c, d);
            nlohmann::json form = nlohmann::json::array();
            for (const auto& e : phi.diagonal()) form.push_back(e.str());
            print_doc({{"alpha", json_of(rep.alpha)},
                       {"form", form},
                       {"holds", rep.holds},
                       {"index", rep.index},
                       {"kernel", json_of(rep.kernel)},
                       {"norm_span", json_of(rep.norm_span)},
                       {"similarity", json_of(rep.similarity)},
                       {"witt", rep.witt}});
            std::cerr << "albert form witt " << rep.witt << ", index "
                      << rep.index << "\n";
            return 0;
        }

        fail("ConfigError", "no subcommand selected");
    } catch (const Error& e) {
        die(e);
    } catch (const std::exception& e) {
        print_doc({{"detail", std::string(e.what())}, {"error", "InternalError"}});
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
