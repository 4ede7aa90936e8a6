// Batch front door.  Subcommands:
//   base         build and certify the background model
//   twist        run the X1..X7 action-twisting chain
//   extend       solve the gluing caps and assemble the k-fold extension
//   schedule     propagate the induction parameters over a chain
//   graph        export the coset graph (JSON + DOT)
//   cones        tangent-cone classifier table and chain enumeration
//   frame-ricci  Ricci matrix of the twisted orthonormal frame
//   equivariance residuals of the untwisting maps on random samples
// Exit codes: 0 all requested certifications certified; 1 usage/config
// error; 2 counterexample found; 3 inconclusive (depth exhausted).
#ifndef SNOWCONE_CLI_HPP
#define SNOWCONE_CLI_HPP

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "snowcone/action_extension.hpp"
#include "snowcone/config.hpp"
#include "snowcone/report.hpp"
#include "snowcone/schedule.hpp"
#include "snowcone/twisting_windows.hpp"

namespace snowcone {

namespace cli_detail {

inline int status_to_exit(const std::vector<CertStatement>& certs) {
    bool inconclusive = false;
    for (const CertStatement& c : certs) {
        if (c.result.status == CertificationResult::Status::CounterexampleFound) return 2;
        if (c.result.status == CertificationResult::Status::Inconclusive) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
}

inline std::vector<CertStatement> collect(const std::vector<StageOutcome>& stages) {
    std::vector<CertStatement> all;
    for (const StageOutcome& s : stages) all.insert(all.end(), s.certs.begin(), s.certs.end());
    return all;
}

inline void emit(const Json& report, const std::string& out_dir, const std::string& name,
                 std::ostream& os) {
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(out_dir + "/" + name + ".json");
        f << report.dump(2) << "\n";
    }
    os << report.dump(2) << std::endl;
}

struct Timing {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    Json close() const {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        return Json{{"wall_ms", ms}};
    }
};

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"construction and certification toolkit for twisted warped-product models"};
    app.require_subcommand(1);

    std::string config_path, ks_text = "2,3", out_dir, policy_text = "cyclic-integers";
    double eps = 0.5, eps_hat = 0.01, eps_prime = -1.0, delta = 0.01, margin = 0.0;
    long long k = 1, bound = 6;
    int depth = -1, certify_depth = 40;
    std::uint64_t samples = 1000, seed = 20240817;
    double frame_f = -1, frame_a = -1, frame_b = -1;
    double m_const = 10.0, c0_const = 1.0;

    app.add_option("--config", config_path, "JSON config file");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "output directory for reports");
        sub->add_option("--seed", seed, "seed for sampled checks");
        sub->add_option("--certify-depth", certify_depth, "max bisection depth");
        sub->add_option("--margin", margin, "certification margin");
    };

    CLI::App* base = app.add_subcommand("base", "build and certify the background model");
    base->add_option("--eps", eps, "cone opening parameter in (0,1)");
    base->add_option("--delta", delta, "sphere factor size");
    add_common(base);

    CLI::App* twist = app.add_subcommand("twist", "run the action-twisting chain X1..X7");
    twist->add_option("--eps", eps, "input cone parameter");
    twist->add_option("--eps-hat", eps_hat, "output cone parameter");
    twist->add_option("--delta", delta, "input sphere size");
    twist->add_option("--k", k, "circle action weight");
    twist->add_option("--m-bound", m_const, "assumed family bound M");
    twist->add_option("--c0", c0_const, "assumed curvature-form floor c0");
    add_common(twist);

    CLI::App* extend = app.add_subcommand("extend", "solve the gluing caps and assemble");
    extend->add_option("--eps", eps, "outer cone parameter");
    extend->add_option("--eps-prime", eps_prime, "inner cone parameter (default 0.99 eps)");
    extend->add_option("--eps-hat", eps_hat, "neck cone parameter (shrunk to feasibility)");
    extend->add_option("--delta", delta, "sphere size");
    extend->add_option("--k", k, "number of glued copies");
    add_common(extend);

    CLI::App* sched = app.add_subcommand("schedule", "induction parameter table");
    sched->add_option("--ks", ks_text, "generator chain, e.g. 2,3,4");
    sched->add_option("--eps", eps, "first-level eps (halved per level when no config)");
    sched->add_option("--delta", delta, "delta_1");
    add_common(sched);

    CLI::App* graph = app.add_subcommand("graph", "coset graph export");
    graph->add_option("--ks", ks_text, "generator chain");
    graph->add_option("--depth", depth, "truncate levels above this");
    add_common(graph);

    CLI::App* cones = app.add_subcommand("cones", "tangent cone descriptor table");
    cones->add_option("--policy", policy_text, "cyclic-integers | cyclic-primes | constant-p");
    cones->add_option("--bound", bound, "require every k <= bound to recur");
    cones->add_option("--k", k, "p for constant-p");
    add_common(cones);

    CLI::App* frame = app.add_subcommand("frame-ricci", "Ricci of the twisted frame");
    frame->add_option("--k", k, "action weight");
    frame->add_option("--f", frame_f, "frame scale f (default round)");
    frame->add_option("--a", frame_a, "frame scale a (default round)");
    frame->add_option("--b", frame_b, "frame scale b (default round)");
    add_common(frame);

    CLI::App* equiv = app.add_subcommand("equivariance", "untwisting-map residuals");
    equiv->add_option("--k", k, "untwisting weight");
    equiv->add_option("--samples", samples, "sample count");
    add_common(equiv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        CertifyOptions co = cfg.certify_options();
        co.max_depth = certify_depth;
        co.margin = margin;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cli_detail::Timing timing;

        if (*base) {
            BaseModelInputs bi;
            bi.eps = eps;
            bi.delta = LogVal::of(delta);
            bi.copts = co;
            BaseModelResult r = build_base_model(bi);
            Json j = base_model_json(r);
            j["seed"] = seed;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "base", out);
            if (!cfg.out_dir.empty()) {
                std::ofstream csv(cfg.out_dir + "/base_profile.csv");
                write_profile_csv(csv, &r.f_scaled, r.ln_delta, &r.h, bi.certify_domain);
            }
            return cli_detail::status_to_exit(r.stage.certs);
        }
        if (*twist) {
            Step2Inputs si;
            si.eps = eps;
            si.eps_hat = eps_hat;
            si.delta = LogVal::of(delta);
            si.k = k;
            si.x4 = X4Constants{m_const, c0_const};
            si.copts = co;
            Step2Result r = build_step2_chain(si);
            Json j = step2_json(r);
            j["seed"] = seed;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "twist", out);
            if (!cfg.out_dir.empty()) {
                for (const StageOutcome& s : r.stages) {
                    if (!s.h_local) continue;
                    std::ofstream csv(cfg.out_dir + "/" + s.name + "_profile.csv");
                    write_profile_csv(csv, s.f_local ? &*s.f_local : nullptr, s.ln_f_scale,
                                      &*s.h_local, s.local_domain);
                }
            }
            return cli_detail::status_to_exit(cli_detail::collect(r.stages));
        }
        if (*extend) {
            Step3Inputs si;
            si.eps = eps;
            si.eps_prime = eps_prime > 0 ? eps_prime : 0.99 * eps;
            si.eps_hat = eps_hat;
            si.delta = LogVal::of(delta);
            si.k = k;
            si.copts = co;
            Step3Assembly a = build_step3_assembly(si);
            Json j;
            j["kind"] = "action-extension";
            j["cap"] = Json{{"R", a.cap.R},          {"r_R", a.cap.r_R},   {"s1", a.cap.s1},
                            {"s2", a.cap.s2},        {"r_eps", a.cap.r_eps}, {"r_hat", a.cap.r_hat}};
            j["neck"] = Json{{"eps_hat_used", a.hat.eps_hat},
                             {"s_hat", a.hat.s_hat},
                             {"r_hat_R", a.hat.r_hat_R},
                             {"r_tilde", a.r_tilde}};
            Json centers = Json::array();
            for (const PunctureCenter& c : a.centers)
                centers.push_back(Json{{"index", c.index},
                                       {"radius", c.radius},
                                       {"hopf_angle_turns", c.hopf_angle_turns.str()}});
            j["centers"] = centers;
            j["gamma"] = a.gamma.str();
            j["gamma_hat"] = a.gamma_hat.str();
            j["annulus"] = stage_json(a.annulus_stage);
            j["neck_stage"] = stage_json(a.neck_stage);
            Json checks = Json::array();
            for (const CertStatement& c : a.assembly_checks) checks.push_back(cert_json(c));
            j["assembly_checks"] = checks;
            j["wrap_residual"] = wrap_around_residual(a, 64, seed);
            j["seed"] = seed;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "extend", out);
            std::vector<CertStatement> all = a.annulus_stage.certs;
            all.insert(all.end(), a.neck_stage.certs.begin(), a.neck_stage.certs.end());
            all.insert(all.end(), a.assembly_checks.begin(), a.assembly_checks.end());
            return cli_detail::status_to_exit(all);
        }
        if (*sched) {
            ScheduleInputs si;
            si.ks = config_path.empty() ? parse_ks(ks_text) : cfg.chain_ks;
            si.epsilons = config_path.empty() ? std::vector<double>{eps} : cfg.epsilons;
            si.delta1 = config_path.empty() ? delta : cfg.delta1;
            si.x4 = cfg.x4;
            si.copts = co;
            ScheduleResult r = schedule_induction(si);
            Json j;
            j["kind"] = "schedule";
            Json rows = Json::array();
            for (const ScheduleLevel& L : r.levels) {
                Json row;
                row["j"] = L.j;
                row["k_j"] = L.k_j;
                row["twist_k"] = L.twist_k;
                row["eps"] = L.eps;
                row["eps_prime"] = L.eps_prime;
                row["eps_hat"] = L.eps_hat;
                row["r"] = tower_json(L.r);
                row["ln_delta"] = L.delta.ln;
                if (L.has_transition) {
                    row["R"] = tower_json(L.R);
                    row["delta_hat"] = tower_json(L.delta_hat);
                    row["growth_ratio"] = tower_json(L.growth_ratio);
                    row["certified"] = L.certified;
                    row["conditional"] = L.conditional;
                }
                rows.push_back(row);
            }
            j["levels"] = rows;
            j["all_feasible"] = r.all_feasible;
            j["ratios_increasing"] = r.ratios_increasing;
            j["seed"] = seed;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "schedule", out);
            return r.all_feasible ? 0 : 2;
        }
        if (*graph) {
            GeneratorChain chain = GeneratorChain::from_ints(parse_ks(ks_text));
            Json j = graph_json(chain, depth);
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "graph", out);
            if (!cfg.out_dir.empty()) {
                std::ofstream dot(cfg.out_dir + "/graph.dot");
                dot << graph_dot(chain);
            }
            return 0;
        }
        if (*cones) {
            ChainPolicy policy;
            if (policy_text == "cyclic-integers")
                policy = ChainPolicy::CyclicIntegers;
            else if (policy_text == "cyclic-primes")
                policy = ChainPolicy::CyclicPrimes;
            else if (policy_text == "constant-p")
                policy = ChainPolicy::ConstantP;
            else
                throw ConfigError("unknown --policy: " + policy_text);
            ConeEnumeration e = enumerate_cones(policy, bound, k);
            Json j = cones_json(e);
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "cones", out);
            return 0;
        }
        if (*frame) {
            double sk = std::sqrt(1.0 + static_cast<double>(k) * k);
            double f = frame_f > 0 ? frame_f : sk;
            double a = frame_a > 0 ? frame_a : sk;
            double b = frame_b > 0 ? frame_b : 1.0 / sk;
            FrameAlgebra F = brackets_s3s3(static_cast<int>(k), f, a, b);
            Matrix ric = ricci_frame(F);
            Json j;
            j["kind"] = "frame-ricci";
            j["k"] = k;
            j["f"] = f;
            j["a"] = a;
            j["b"] = b;
            Json m = Json::array();
            double max_off = 0, max_diag_gap = 0;
            for (int i = 0; i < 6; ++i) {
                Json row = Json::array();
                for (int jj = 0; jj < 6; ++jj) {
                    row.push_back(ric[i][jj]);
                    if (i != jj) max_off = std::max(max_off, std::fabs(ric[i][jj]));
                }
                max_diag_gap = std::max(max_diag_gap, std::fabs(ric[i][i] - 2.0));
                m.push_back(row);
            }
            j["ricci"] = m;
            j["max_offdiag"] = max_off;
            j["max_diag_gap_from_2"] = max_diag_gap;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "frame_ricci", out);
            return 0;
        }
        if (*equiv) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
            double worst_left = 0, worst_right = 0, worst_bij = 0;
            for (std::uint64_t i = 0; i < samples; ++i) {
                S3Pair p = random_s3_pair(rng);
                double th = uni(rng);
                S3Pair lhs = phi_k(static_cast<int>(k), act_ab(th, p, {1, k}));
                S3Pair rhs = act_ab(th, phi_k(static_cast<int>(k), p), {1, 0});
                worst_left = std::max(worst_left, lhs.dist(rhs));
                Quat g = random_unit_quat(rng);
                S3Pair l2 = phi_k(static_cast<int>(k), S3Pair{p.first, (p.second * g).normalized()});
                S3Pair r2 = phi_k(static_cast<int>(k), p);
                r2.second = (r2.second * g).normalized();
                worst_right = std::max(worst_right, l2.dist(r2));
                worst_bij =
                    std::max(worst_bij, phi_k_inverse(static_cast<int>(k), phi_k(static_cast<int>(k), p)).dist(p));
            }
            Json j;
            j["kind"] = "equivariance";
            j["k"] = k;
            j["samples"] = samples;
            j["seed"] = seed;
            j["max_left_equivariance_residual"] = worst_left;
            j["max_right_equivariance_residual"] = worst_right;
            j["max_bijection_residual"] = worst_bij;
            j["timing"] = timing.close();
            cli_detail::emit(j, cfg.out_dir, "equivariance", out);
            return (worst_left < 1e-12 && worst_right < 1e-12 && worst_bij < 1e-10) ? 0 : 2;
        }
        return 1;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    std::vector<const char*> argv;
    argv.push_back("snowcone");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace snowcone

#endif
