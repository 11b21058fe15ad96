// Command-line driver: builds networks, runs gadget and approximation
// sweeps, evaluates complexity bounds and runs the verification battery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holonet/activation.hpp"
#include "holonet/complexity.hpp"
#include "holonet/gadgets.hpp"
#include "holonet/holder.hpp"
#include "holonet/network.hpp"
#include "holonet/pipeline.hpp"
#include "holonet/relu_lift.hpp"
#include "holonet/verify.hpp"

using namespace holonet;

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

MultiIndex parse_mi(const std::string& csv) {
    MultiIndex out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw DomainError("cannot open '" + path + "' for writing");
    f << text;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_approx(const std::string& target, const std::string& act_name, double alpha_override,
               double R_override, const std::vector<double>& eps_list, const std::string& out_path,
               const std::string& report_path, std::uint64_t seed) {
    HolderFunction f = corpus(target);
    if (alpha_override > 0.0) f.alpha = alpha_override;
    if (R_override > 0.0) f.radius = R_override;
    Activation act = catalog(act_name);
    std::ostringstream csv;
    csv << report_csv_header() << "\n";
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        double eps = eps_list[i];
        AssemblyBudget budget = AssemblyBudget::from_epsilon(eps, f);
        EvalScheme scheme = EvalScheme::hybrid(f.dimension, 20000, seed);
        std::pair<NetworkParameter, ApproximationReport> built =
            act.is_locq() ? assemble_locquad(f, act, budget, scheme)
            : act.name == "relu" ? assemble_relu(f, budget, scheme)
                                 : assemble_pwl(f, act, budget, scheme);
        csv << report_csv_row(built.second) << "\n";
        std::cout << "eps=" << fmt(eps) << " M=" << built.second.M << " K=" << fmt(built.second.K)
                  << " depth=" << built.second.net_metrics.depth
                  << " width=" << built.second.net_metrics.width
                  << " sparsity=" << built.second.net_metrics.sparsity
                  << " sup_err=" << fmt(built.second.sup_err_grid) << "\n";
        if (!out_path.empty() && i + 1 == eps_list.size()) save_network(built.first, out_path);
    }
    if (!report_path.empty()) write_file(report_path, csv.str());
    return 0;
}

int run_gadget_sweep(const std::string& kind, const std::string& act_name,
                     const std::vector<double>& Ks, double A, const MultiIndex& m, int alpha,
                     const std::string& report_path) {
    Activation act = catalog(act_name);
    GadgetErrorModel model = sweep_gadget(kind, act, Ks, A, m, alpha);
    std::ostringstream csv;
    csv << "kind,activation,K,sup_err,rate_tag,fp_floor\n";
    for (std::size_t i = 0; i < model.Ks.size(); ++i)
        csv << kind << "," << act_name << "," << fmt(model.Ks[i]) << ","
            << fmt(model.sup_errors[i]) << "," << model.rate_tag << ","
            << fmt(gadget_fp_floor(model.Ks[i])) << "\n";
    if (!report_path.empty()) write_file(report_path, csv.str());
    std::cout << "gadget " << kind << " (" << act_name << "): fitted slope "
              << fmt(model.fit.slope) << " over " << model.fit.points_used << " points ("
              << model.fit.points_dropped << " below fp floor), constant "
              << fmt(model.fitted_constant) << " x " << model.rate_tag << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holonet: constructive network approximation toolkit"};
    app.require_subcommand(1);

    // ---- approx
    auto* approx = app.add_subcommand("approx", "build an approximating network for a target");
    std::string a_target = "sin2pi_d1", a_act = "tanh", a_out, a_report;
    double a_alpha = 0.0, a_R = 0.0;
    std::string a_eps = "0.1";
    std::uint64_t a_seed = 7;
    approx->add_option("--target", a_target, "corpus target name");
    approx->add_option("--activation", a_act, "catalog activation");
    approx->add_option("--alpha", a_alpha, "override declared smoothness");
    approx->add_option("--R", a_R, "override declared Holder radius");
    approx->add_option("--eps", a_eps, "target error (comma list sweeps)");
    approx->add_option("--out", a_out, "write the network JSON here");
    approx->add_option("--report", a_report, "write the sweep CSV here");
    approx->add_option("--seed", a_seed, "evaluation seed");

    // ---- gadget (single K) and sweep
    auto* gadget = app.add_subcommand("gadget", "build one gadget network and report its error");
    std::string g_kind = "square", g_act = "sigmoid", g_report, g_m = "";
    double g_K = 1000.0, g_A = 1.0;
    int g_alpha = 1;
    gadget->add_option("--kind", g_kind, "square|times|mono|sqrt|abs|relu");
    gadget->add_option("--activation", g_act, "catalog activation");
    gadget->add_option("--K", g_K, "accuracy knob");
    gadget->add_option("--A", g_A, "product range");
    gadget->add_option("--m", g_m, "monomial multi-index, comma separated");
    gadget->add_option("--alpha", g_alpha, "monomial cap");
    gadget->add_option("--report", g_report, "CSV output path");

    auto* sweep = app.add_subcommand("sweep", "run a K or eps sweep");
    auto* sweep_gadget_cmd = sweep->add_subcommand("gadget", "gadget K sweep");
    std::string sg_kind = "square", sg_act = "sigmoid", sg_K = "100,316,1000,3162,10000",
                sg_report, sg_m = "";
    double sg_A = 1.0;
    int sg_alpha = 1;
    sweep_gadget_cmd->add_option("kind", sg_kind, "square|times|mono|sqrt|abs|relu");
    sweep_gadget_cmd->add_option("--activation", sg_act, "catalog activation");
    sweep_gadget_cmd->add_option("--K", sg_K, "comma-separated K values");
    sweep_gadget_cmd->add_option("--A", sg_A, "product range");
    sweep_gadget_cmd->add_option("--m", sg_m, "monomial multi-index");
    sweep_gadget_cmd->add_option("--alpha", sg_alpha, "monomial cap");
    sweep_gadget_cmd->add_option("--report", sg_report, "CSV output path");
    auto* sweep_approx_cmd = sweep->add_subcommand("approx", "epsilon sweep of the assembly");
    std::string sa_target = "sin2pi_d1", sa_act = "tanh", sa_eps = "0.2,0.1,0.05", sa_report;
    std::uint64_t sa_seed = 7;
    sweep_approx_cmd->add_option("--target", sa_target);
    sweep_approx_cmd->add_option("--activation", sa_act);
    sweep_approx_cmd->add_option("--eps", sa_eps);
    sweep_approx_cmd->add_option("--report", sa_report);
    sweep_approx_cmd->add_option("--seed", sa_seed);

    // ---- lift
    auto* lift_cmd = app.add_subcommand("lift", "reconstruct a ReLU network over another activation");
    std::string l_in, l_act = "leaky_relu(a=0.01)", l_domain = "unit", l_out;
    std::size_t l_verify = 10000;
    lift_cmd->add_option("--in", l_in, "source network JSON")->required();
    lift_cmd->add_option("--activation", l_act, "target activation");
    lift_cmd->add_option("--domain", l_domain, "input domain (unit)");
    lift_cmd->add_option("--out", l_out, "lifted network JSON path");
    lift_cmd->add_option("--verify", l_verify, "verification sample count");

    // ---- bound
    auto* bound = app.add_subcommand("bound", "complexity calculators");
    auto* covering = bound->add_subcommand("covering", "covering-number bound");
    double c_delta = 0.01, c_L = 3, c_N = 64, c_S = 500, c_B = 10;
    std::string c_act = "sigmoid";
    covering->add_option("--delta", c_delta);
    covering->add_option("--L", c_L);
    covering->add_option("--N", c_N);
    covering->add_option("--S", c_S);
    covering->add_option("--B", c_B);
    covering->add_option("--activation", c_act);
    auto* rates = bound->add_subcommand("rates", "sieve sizes and minimax rates");
    std::string r_task = "regression";
    double r_n = 1e6, r_alpha = 2.0, r_d = 2.0, r_q = 0.0, r_kappa = 0.0;
    bool r_q_inf = false;
    rates->add_option("--task", r_task, "regression|classification");
    rates->add_option("--n", r_n);
    rates->add_option("--alpha", r_alpha);
    rates->add_option("--d", r_d);
    rates->add_option("--q", r_q);
    rates->add_flag("--q-inf", r_q_inf, "use the q -> infinity limit");
    rates->add_option("--kappa", r_kappa, "magnitude exponent (default 4(d/alpha+1))");

    // ---- verify
    auto* verify = app.add_subcommand("verify", "run the invariant battery");
    std::string v_what = "all", v_out;
    std::uint64_t v_seed = 7;
    verify->add_option("what", v_what, "all");
    verify->add_option("--seed", v_seed);
    verify->add_option("--out", v_out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*approx) return run_approx(a_target, a_act, a_alpha, a_R, parse_list(a_eps), a_out,
                                       a_report, a_seed);
        if (*gadget) {
            std::vector<double> Ks = {g_K};
            return run_gadget_sweep(g_kind, g_act, Ks, g_A,
                                    g_m.empty() ? MultiIndex{} : parse_mi(g_m), g_alpha, g_report);
        }
        if (*sweep_gadget_cmd)
            return run_gadget_sweep(sg_kind, sg_act, parse_list(sg_K), sg_A,
                                    sg_m.empty() ? MultiIndex{} : parse_mi(sg_m), sg_alpha,
                                    sg_report);
        if (*sweep_approx_cmd)
            return run_approx(sa_target, sa_act, 0.0, 0.0, parse_list(sa_eps), "", sa_report,
                              sa_seed);
        if (*lift_cmd) {
            NetworkParameter src = load_network(l_in);
            Activation act = catalog(l_act);
            Box domain = Box::unit(src.input_dim());
            LiftPlan plan = plan_lift(src, act, domain);
            NetworkParameter lifted = lift(src, act, plan);
            double worst = verify_lift(src, lifted, domain, l_verify, 7);
            NetworkMetrics ms = metrics(src), ml = metrics(lifted);
            std::cout << "lift ok: max deviation " << fmt(worst) << " over " << l_verify
                      << " points; width " << ms.width << " -> " << ml.width << ", sparsity "
                      << ms.sparsity << " -> " << ml.sparsity << "\n";
            if (!l_out.empty()) save_network(lifted, l_out);
            return 0;
        }
        if (*covering) {
            Activation act = catalog(c_act);
            if (!act.lipschitz)
                throw CapabilityError("activation '" + c_act + "' has no Lipschitz constant");
            NetworkClassSpec spec;
            spec.max_depth = c_L;
            spec.max_width = c_N;
            spec.max_sparsity = c_S;
            spec.max_magnitude = c_B;
            std::cout << "log covering number <= "
                      << fmt(covering_bound(c_delta, spec, *act.lipschitz)) << "\n";
            return 0;
        }
        if (*rates) {
            double kappa = r_kappa > 0.0 ? r_kappa : default_kappa(r_alpha, r_d);
            RateSpec spec = r_task == "classification"
                                ? classification_sieve(r_n, r_alpha, r_d,
                                                       r_q_inf ? kQInfinity : r_q, kappa)
                                : regression_sieve(r_n, r_alpha, r_d, kappa);
            std::cout << spec.task << " n=" << fmt(spec.n) << " alpha=" << fmt(spec.alpha)
                      << " d=" << fmt(spec.d) << "\n"
                      << "  sieve: depth=" << fmt(spec.depth) << " width=" << fmt(spec.width)
                      << " sparsity=" << fmt(spec.sparsity) << " magnitude=" << fmt(spec.magnitude)
                      << "\n"
                      << "  rate exponent=" << fmt(spec.rate_exponent) << " rate=" << fmt(spec.rate);
            if (spec.task == "classification") std::cout << " nu=" << fmt(spec.nu);
            std::cout << "\n  (universal constants reported as 1; constants-not-tracked)\n";
            return 0;
        }
        if (*verify) {
            if (v_what != "all") throw DomainError("only 'verify all' is available");
            int failures = 0;
            std::string report = verify_all_report(v_seed, &failures);
            write_file(v_out, report);
            return failures == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
