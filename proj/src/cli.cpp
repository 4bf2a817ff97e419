// cli.cpp
#include "khess/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "khess/acceptance.hpp"
#include "khess/barriers.hpp"
#include "khess/errors.hpp"
#include "khess/radialop.hpp"
#include "khess/verify.hpp"

namespace khess {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Shortest round-trip decimal, always with a fractional part ("2.0").
std::string short_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

void write_json(const json& j, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
}

struct Common {
    int n = 2;
    int k = 1;
    Dim dim() const { return Dim::make(n, k); }
};

struct Opts {
    Common c;
    // barrier
    std::string type = "sub";
    double a = 1.0, eta_c = 1.0, eta_s = 0.0, M = 1.0, q = 0.0, alpha = 2.0, tol = 0.0;
    int nodes = 1000;
    double delta = 1e-3;
    bool corrupt_B = false;
    // solves
    std::string psi = "constant:M=1";
    double R = 1.0, m = 0.0;
    int m_max = 20;
    std::string csv, json_path, profile;
    std::string mode = "sub";
    std::vector<int> only;
};

void add_common(CLI::App* sc, Opts& o)
{
    sc->add_option("--n", o.c.n, "dimension n")->capture_default_str();
    sc->add_option("--k", o.c.k, "Hessian order k")->capture_default_str();
}

int cmd_barrier(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    dim.require_radial();
    const BarrierGrid grid{o.nodes, o.delta};
    const double tol = o.tol > 0 ? o.tol : 1e-8;
    CheckReport rep;
    const RadialProfile* prof = nullptr;
    std::optional<SubBarrier> sb;
    std::optional<SuperBarrier> sp;
    std::optional<GradBarrier> gb;
    json extra;
    if (o.type == "sub") {
        const EtaSpec eta = o.eta_s == 0.0 ? EtaSpec::constant(o.eta_c) : EtaSpec::exp(o.eta_c, o.eta_s);
        sb = make_sub_barrier(o.a, dim, eta, grid);
        rep = verify_sub_barrier(*sb, tol);
        prof = &sb->profile;
        extra = {{"T", sb->T}, {"T_bound", phi_time_bound(dim, eta)}, {"shift", sb->shift}};
    } else if (o.type == "super") {
        const double q = o.q > 0 ? o.q : dim.k + 1.0;
        std::optional<double> B;
        if (o.corrupt_B) B = 0.5 * super_const_B(dim, q);
        sp = make_super_barrier(o.a, o.M, q, dim, grid, B);
        rep = verify_super_barrier(*sp, tol);
        prof = &sp->profile;
        extra = {{"B", sp->B}, {"lambda", sp->lam}, {"hbar_a", hbar(o.a, o.M, q, dim, sp->B)}};
    } else if (o.type == "grad") {
        gb = make_grad_barrier(o.a, dim, o.alpha, grid);
        rep = verify_grad_barrier(*gb, tol);
        prof = &gb->profile;
        extra = {{"bound_constant", gb->bound_constant()}, {"threshold", threshold_radius(dim, o.alpha, gb->bound_constant())}};
    } else {
        throw ParameterError("barrier: type must be sub, super or grad");
    }
    if (!o.csv.empty()) {
        const Eigen::VectorXd sk = sk_column(*prof, dim);
        prof->write_csv(o.csv, &sk);
    }
    json j = {{"type", o.type}, {"check", to_json(rep)}, {"profile_csv_path", o.csv.empty() ? json(nullptr) : json(o.csv)}};
    j.update(extra);
    write_json(j, o.json_path, out);
    return rep.passed ? kExitOk : kExitCheckFailed;
}

int cmd_solve(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    const PsiSpec psi = PsiSpec::parse(o.psi, dim);
    const SolveReport rep = solve_dirichlet_ball(psi, dim, o.R, o.m, o.tol > 0 ? o.tol : 1e-9);
    if (!o.csv.empty() && rep.profile) {
        const Eigen::VectorXd sk = sk_column(*rep.profile, dim);
        rep.profile->write_csv(o.csv, &sk);
    }
    write_json(to_json(rep, rep.profile ? o.csv : std::string()), o.json_path, out);
    return rep.converged ? kExitOk : kExitNoConvergence;
}

int cmd_sequence(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    const PsiSpec psi = PsiSpec::parse(o.psi, dim);
    const SequenceReport seq = monotone_sequence(psi, dim, o.R, o.m_max, o.tol > 0 ? o.tol : 1e-9);
    json j = {{"reports", json::array()}, {"monotone", to_json(seq.monotone)},
              {"failed_m", seq.failed_m ? json(*seq.failed_m) : json(nullptr)}};
    for (const SolveReport& r : seq.reports) j["reports"].push_back(to_json(r));
    write_json(j, o.json_path, out);
    return !seq.failed_m && seq.monotone.passed ? kExitOk : kExitNoConvergence;
}

int cmd_limit(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    const PsiSpec psi = PsiSpec::parse(o.psi, dim);
    LimitOptions lo;
    lo.m_max = o.m_max;
    const LimitReport L = blowup_limit(psi, dim, o.R, o.tol > 0 ? o.tol : 1e-6, lo);
    if (!o.csv.empty() && L.limit) {
        const Eigen::VectorXd sk = sk_column(*L.limit, dim);
        L.limit->write_csv(o.csv, &sk);
    }
    json j = {{"verdict", to_string(L.verdict)},
              {"centers", L.centers},
              {"increments", L.increments},
              {"converged_at", L.converged_at ? json(*L.converged_at) : json(nullptr)},
              {"monotone", to_json(L.sequence.monotone)},
              {"failed_m", L.sequence.failed_m ? json(*L.sequence.failed_m) : json(nullptr)},
              {"hbar_R", L.hbar_R ? number(*L.hbar_R) : json(nullptr)},
              {"a_m", L.a_m},
              {"profile_csv_path", !o.csv.empty() && L.limit ? json(o.csv) : json(nullptr)}};
    json sw = json::array();
    for (const auto& s : L.sandwich)
        sw.push_back({{"passed", s.passed}, {"lower", to_json(s.lower)}, {"upper", to_json(s.upper)}});
    j["sandwich"] = sw;
    json lc = json::array();
    for (const auto& c : L.lower_certificates) lc.push_back(to_json(c));
    j["lower_certificates"] = lc;
    write_json(j, o.json_path, out);
    return L.verdict == Verdict::Exists ? kExitOk : kExitNoConvergence;
}

int cmd_threshold(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    out << "a* = " << short_double(threshold_radius(dim, o.alpha, o.M)) << '\n';
    return kExitOk;
}

int cmd_rates(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    if (o.profile.empty()) throw ParameterError("rates: --profile is required");
    if (!(o.q > dim.k)) throw ParameterError("rates: need q > k");
    const RadialProfile p = RadialProfile::read_csv(o.profile, o.R > 0 ? std::optional<double>(o.R) : std::nullopt);
    const RateFit fit = rate_fit(p.r(), p.u(), p.radius(), o.M, o.q, dim);
    json j = {{"exponent", fit.exponent}, {"envelope_ratio_max", fit.envelope_ratio_max}, {"points", fit.points},
              {"envelope_slope", -2.0 * dim.k / (o.q - dim.k)}};
    write_json(j, o.json_path, out);
    return kExitOk;
}

int cmd_verify(const Opts& o, std::ostream& out)
{
    const Dim dim = o.c.dim();
    if (o.profile.empty()) throw ParameterError("verify: --profile is required");
    const PsiSpec psi = PsiSpec::parse(o.psi, dim);
    const RadialProfile p = RadialProfile::read_csv(o.profile, o.R > 0 ? std::optional<double>(o.R) : std::nullopt);
    const double tol = o.tol > 0 ? o.tol : 1e-8;
    CheckReport rep;
    if (o.mode == "sub")
        rep = check_subsolution(p, psi, dim, tol);
    else if (o.mode == "super")
        rep = check_supersolution(p, psi, dim, tol);
    else
        throw ParameterError("verify: mode must be sub or super");
    write_json(to_json(rep), o.json_path, out);
    return rep.passed ? kExitOk : kExitCheckFailed;
}

int cmd_selftest(const Opts& o, std::ostream& out)
{
    AcceptanceOptions ao;
    ao.corrupt_B = o.corrupt_B;
    ao.only = o.only;
    const auto lines = run_acceptance(ao);
    const bool ok = print_acceptance(out, lines);
    if (!ok) {
        out << "failed:";
        for (const auto& l : lines)
            if (!l.passed()) out << ' ' << l.id << " (" << l.name << ')';
        out << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

std::string json_token(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return short_double(v.get<double>());
    throw ParameterError("config: values must be strings, numbers or booleans");
}

} // namespace

json to_json(const CheckReport& c)
{
    return {{"name", c.name},
            {"passed", c.passed},
            {"min_slack", number(c.min_slack)},
            {"min_rel_slack", number(c.min_rel_slack)},
            {"worst_node", c.worst_node},
            {"node_count", c.node_count},
            {"tol", c.tol}};
}

json to_json(const SolveReport& r, const std::string& profile_csv_path)
{
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"converged", r.converged},
            {"c", number(r.c)},
            {"iterations", r.iterations},
            {"m", r.m},
            {"R", r.R},
            {"residual", number(r.residual)},
            {"boundary_gap", number(r.boundary_gap)},
            {"blowup_radius", r.blowup_radius ? number(*r.blowup_radius) : json(nullptr)},
            {"profile_csv_path", profile_csv_path.empty() ? json(nullptr) : json(profile_csv_path)},
            {"checks", checks},
            {"message", r.message}};
}

std::vector<std::string> merge_config(const json& cfg, std::vector<std::string> args)
{
    if (!cfg.is_object()) throw ParameterError("config: top level must be an object");
    std::vector<std::string> out;
    std::size_t rest = 0;
    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        out.push_back(args[0]);
        rest = 1;
    } else if (cfg.contains("command")) {
        out.push_back(json_token(cfg.at("command")));
    }
    for (const auto& [key, v] : cfg.items()) {
        if (key == "command") continue;
        if (v.is_boolean()) {
            if (v.get<bool>()) out.push_back("--" + key);
            continue;
        }
        if (v.is_array()) {
            for (const auto& e : v) {
                out.push_back("--" + key);
                out.push_back(json_token(e));
            }
            continue;
        }
        out.push_back("--" + key);
        out.push_back(json_token(v));
    }
    out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(rest), args.end());
    return out;
}

int run_cli(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    try {
        // --config is handled before CLI11 sees the arguments.
        std::optional<std::string> config;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == "--config") {
                if (i + 1 >= raw.size()) throw ParameterError("--config needs a path");
                config = raw[++i];
            } else if (raw[i].rfind("--config=", 0) == 0) {
                config = raw[i].substr(9);
            } else {
                args.push_back(raw[i]);
            }
        }
        if (config) {
            std::ifstream f(*config);
            if (!f) throw ParameterError("cannot open config " + *config);
            json cfg;
            try {
                cfg = json::parse(f);
            } catch (const json::exception& e) {
                throw ParameterError(std::string("config: ") + e.what());
            }
            args = merge_config(cfg, args);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadConfig;
    }

    CLI::App app{"k-Hessian radial barriers, shooting solves and checks", "khess"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Opts o;

    auto* barrier = app.add_subcommand("barrier", "build and certify a barrier profile");
    add_common(barrier, o);
    barrier->add_option("--type", o.type, "sub | super | grad")->check(CLI::IsMember({"sub", "super", "grad"}));
    barrier->add_option("--a", o.a, "ball radius");
    barrier->add_option("--eta-c", o.eta_c, "eta(z) = c e^{s z}: c");
    barrier->add_option("--eta-s", o.eta_s, "eta(z) = c e^{s z}: s");
    barrier->add_option("--M", o.M);
    barrier->add_option("--q", o.q, "exponent, default k + 1");
    barrier->add_option("--alpha", o.alpha);
    barrier->add_option("--nodes", o.nodes);
    barrier->add_option("--delta", o.delta, "grid stops at (1 - delta) a");
    barrier->add_option("--tol", o.tol);
    barrier->add_flag("--corrupt-B", o.corrupt_B, "debug: halve the super-barrier constant");
    barrier->add_option("--csv", o.csv, "profile output (r,u,du,sk)");
    barrier->add_option("--json", o.json_path, "report output, default stdout");

    auto add_solve = [&](CLI::App* sc) {
        add_common(sc, o);
        sc->add_option("--psi", o.psi, "family:key=value,...");
        sc->add_option("--R", o.R, "ball radius");
        sc->add_option("--tol", o.tol);
        sc->add_option("--csv", o.csv);
        sc->add_option("--json", o.json_path);
    };
    auto* solve = app.add_subcommand("solve", "Dirichlet problem u = m on the boundary");
    add_solve(solve);
    solve->add_option("--m", o.m, "boundary value");
    auto* sequence = app.add_subcommand("sequence", "monotone sequence m = 1..m_max");
    add_solve(sequence);
    sequence->add_option("--m-max", o.m_max);
    auto* limit = app.add_subcommand("limit", "blow-up limit and envelope checks");
    add_solve(limit);
    limit->add_option("--m-max", o.m_max);

    auto* threshold = app.add_subcommand("threshold", "threshold radius for M (1 + p^k)^alpha");
    add_common(threshold, o);
    threshold->add_option("--alpha", o.alpha);
    threshold->add_option("--M", o.M);

    auto* rates = app.add_subcommand("rates", "near-boundary rate fit of a profile");
    add_common(rates, o);
    rates->add_option("--profile", o.profile, "CSV r,u,du");
    rates->add_option("--M", o.M);
    rates->add_option("--q", o.q);
    rates->add_option("--R", o.R, "radius, default last node");
    rates->add_option("--json", o.json_path);

    auto* verify = app.add_subcommand("verify", "certify a CSV profile against psi");
    add_common(verify, o);
    verify->add_option("--profile", o.profile, "CSV r,u,du");
    verify->add_option("--psi", o.psi);
    verify->add_option("--mode", o.mode, "sub | super")->check(CLI::IsMember({"sub", "super"}));
    verify->add_option("--R", o.R);
    verify->add_option("--tol", o.tol);
    verify->add_option("--json", o.json_path);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_flag("--corrupt-B", o.corrupt_B, "debug: halve the super-barrier constant");
    selftest->add_option("--only", o.only, "criterion ids");

    std::vector<const char*> argv{"khess"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadConfig;
    }

    // Verbs that read rates/verify --R fall back to the last node when R is not given.
    if (rates->parsed() && rates->count("--R") == 0) o.R = 0.0;
    if (verify->parsed() && verify->count("--R") == 0) o.R = 0.0;

    try {
        if (barrier->parsed()) return cmd_barrier(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (sequence->parsed()) return cmd_sequence(o, out);
        if (limit->parsed()) return cmd_limit(o, out);
        if (threshold->parsed()) return cmd_threshold(o, out);
        if (rates->parsed()) return cmd_rates(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (selftest->parsed()) return cmd_selftest(o, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitBadConfig;
}

} // namespace khess
