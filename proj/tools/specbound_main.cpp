// specbound: evaluates spectral bounds for infinite-volume domains
// (horn-shaped regions, spiny urchins, 1-D and sectioned Schrodinger
// operators) and verifies them against independently computed spectra.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "specbound/fdverify.hpp"
#include "specbound/horn.hpp"
#include "specbound/lt2d.hpp"
#include "specbound/riesz.hpp"
#include "specbound/schrodinger1d.hpp"
#include "specbound/urchin.hpp"
#include "run_report.hpp"

namespace sb = specbound;
using sb::cli::format_number;
using sb::cli::parse_grid;
using sb::cli::RunReport;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitHardStop = 4;

constexpr double kPi = std::numbers::pi;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HardStop : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void merge_flags(RunReport& rep, const sb::BoundReport& b, const std::string& where) {
    for (const auto& f : b.flags) {
        const std::string msg = where + ": " + f;
        if (std::find(rep.flags.begin(), rep.flags.end(), msg) == rep.flags.end())
            rep.flags.push_back(msg);
    }
}

// ---------------------------------------------------------------- bound horn
RunReport run_bound_horn(int d, double nu, double sigma, const std::string& grid) {
    RunReport rep;
    rep.command = "bound horn";
    rep.params = {{"d", std::to_string(d)},
                  {"nu", format_number(nu)},
                  {"sigma", format_number(sigma)},
                  {"lambda", grid}};
    rep.columns = {"lambda", "bound", "asymptotic_leading", "ratio"};

    sb::horn::HornRegion region{d, nu};
    const bool critical = (nu == 1.0);
    for (double lam : parse_grid(grid)) {
        sb::BoundReport b;
        if (critical)
            b = (sigma == 0.0) ? sb::horn::critical_counting_bound(lam)
                               : sb::horn::critical_riesz_bound(sigma, lam);
        else
            b = (sigma == 0.0) ? sb::horn::counting_bound(region, lam)
                               : sb::horn::riesz_bound(region, sigma, lam);
        merge_flags(rep, b, "lambda=" + format_number(lam));

        double asym = std::numeric_limits<double>::quiet_NaN();
        if (d == 2) asym = sb::horn::asymptotic_leading(region, sigma, lam);
        const double ratio = (asym != 0.0) ? b.value / asym
                                           : std::numeric_limits<double>::quiet_NaN();
        rep.rows.push_back({lam, b.value, asym, ratio});
    }
    return rep;
}

// -------------------------------------------------------------- bound urchin
sb::urchin::UrchinSequence make_sequence(const std::string& kind, double delta,
                                         const std::string& file) {
    using Seq = sb::urchin::UrchinSequence;
    if (kind == "linear") return Seq::linear();
    if (kind == "geometric") return Seq::geometric(delta);
    if (kind == "exp-over-sqrt") return Seq::exp_over_sqrt();
    if (kind == "explicit") {
        std::ifstream f(file);
        if (!f) throw IoError("cannot read radius file: " + file);
        std::vector<double> radii;
        double r;
        while (f >> r) radii.push_back(r);
        if (radii.empty()) throw IoError("radius file is empty: " + file);
        return Seq::explicit_list(std::move(radii));
    }
    throw CLI::ValidationError("--kind must be linear|geometric|exp-over-sqrt|explicit");
}

RunReport run_bound_urchin(const sb::urchin::UrchinSequence& seq, double sigma,
                           const std::string& grid) {
    RunReport rep;
    rep.command = "bound urchin";
    rep.params = {{"sigma", format_number(sigma)}, {"lambda", grid}};
    rep.columns = {"lambda", "n_hat", "r_hat", "upper", "lower", "vdb_upper"};

    auto validation = sb::urchin::validate(seq);
    for (const auto& f : validation.flags) rep.flags.push_back("sequence: " + f);

    auto square = [sigma](double side, double lambda) {
        return sb::fdverify::square_riesz(side, lambda, sigma);
    };
    for (double lam : parse_grid(grid)) {
        auto idx = sb::urchin::index_for(seq, lam);
        auto upper = sb::urchin::riesz_upper_bound(seq, sigma, lam);
        auto lower = sb::urchin::riesz_lower_bound(seq, sigma, lam, square);
        auto vdb = sb::urchin::vdb_counting_bound(seq, lam);
        merge_flags(rep, upper, "upper");
        merge_flags(rep, vdb, "vdb");
        rep.rows.push_back({lam, idx ? static_cast<double>(idx->n_hat) : 0.0,
                            idx ? idx->r_hat : 0.0, upper.value, lower.value, vdb.value});
    }
    return rep;
}

// ---------------------------------------------------------------------- lt1d
sb::schrodinger1d::Potential1D parse_potential(const std::string& spec) {
    using Pot = sb::schrodinger1d::Potential1D;
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                if (kind == "file") kv["path"] = item;
                continue;
            }
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto num = [&](const std::string& key, double dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : std::stod(it->second);
    };
    if (kind == "well")
        return Pot::square_well(num("depth", 30.0), num("l", 1.0), num("w", 0.6),
                                num("c", 0.5));
    if (kind == "gauss")
        return Pot::gaussian(num("amp", 40.0), num("l", 1.0), num("w", 0.1),
                             num("c", 0.5));
    if (kind == "file") {
        const std::string path = kv.count("path") ? kv["path"] : spec.substr(colon + 1);
        std::ifstream f(path);
        if (!f) throw IoError("cannot read potential file: " + path);
        std::vector<double> t, v;
        double a, b;
        while (f >> a >> b) {
            t.push_back(a);
            v.push_back(b);
        }
        if (t.size() < 2) throw IoError("potential file needs at least two samples");
        return Pot::from_samples(std::move(t), std::move(v));
    }
    throw CLI::ValidationError("--potential must be well:..., gauss:..., or file:PATH");
}

RunReport run_lt1d(const std::string& pot_spec, double sigma, double quad_tol) {
    namespace s1 = sb::schrodinger1d;
    auto pot = parse_potential(pot_spec);

    RunReport rep;
    rep.command = "lt1d";
    rep.params = {{"potential", pot_spec}, {"sigma", format_number(sigma)}};
    rep.tolerances["quad_tol"] = quad_tol;
    rep.columns = {"A", "bound", "plain_lt", "riesz_solver", "n_levels",
                   "lambda_1", "mu_1", "gap", "gap_bound", "gap_identity_residual"};

    auto bound = s1::lt_bound_with_remainder(pot, sigma);
    merge_flags(rep, bound, "bound");
    auto lams = s1::interval_eigenvalues(pot, {0.0, 0.0});
    auto mus = s1::line_eigenvalues(pot);
    const double riesz_val = s1::riesz_mean_of(lams, sigma);

    double lambda1 = 0.0, mu1 = 0.0, gap = 0.0, gap_bound = 0.0, residual = 0.0;
    if (lams.count() > 0) lambda1 = lams.nu[0];
    if (mus.count() > 0) mu1 = mus.nu[0];
    auto gb = s1::ground_state_gap_bound(
        pot, mus.count() ? std::optional<double>(mu1) : std::nullopt);
    gap_bound = gb.value;
    if (lams.count() > 0 && mus.count() > 0) {
        gap = mu1 - lambda1;
        auto g = s1::gap_identity_check(pot, 1, quad_tol);
        residual = std::fabs(g.integral - g.direct) / std::max(g.direct, 1e-300);
    }
    rep.rows.push_back({gb.details.at("A"), bound.value,
                        bound.details.count("plain_lt") ? bound.details.at("plain_lt") : 0.0,
                        riesz_val, static_cast<double>(lams.count()), lambda1, mu1, gap,
                        gap_bound, residual});
    return rep;
}

// -------------------------------------------------------------------- verify
RunReport run_verify(const std::string& domain, double nu, double sigma,
                     const std::string& grid, double h_arg, double safety) {
    RunReport rep;
    rep.command = "verify";
    rep.params = {{"domain", domain},
                  {"nu", format_number(nu)},
                  {"sigma", format_number(sigma)},
                  {"lambda", grid},
                  {"h", format_number(h_arg)},
                  {"safety", format_number(safety)}};
    rep.columns = {"lambda", "empirical", "bound", "dominance", "refinement_delta",
                   "unknowns"};

    sb::fdverify::DomainSpec spec;
    if (domain == "horn") {
        spec.kind = sb::fdverify::DomainSpec::Kind::horn;
        spec.nu = nu;
    } else if (domain == "horn-critical") {
        spec.kind = sb::fdverify::DomainSpec::Kind::critical_rotated_horn;
    } else {
        throw CLI::ValidationError("--domain must be horn or horn-critical");
    }
    sb::fdverify::TruncationPolicy policy{safety};

    for (double lam : parse_grid(grid)) {
        const double guard = sb::fdverify::resolution_guard_max_h(lam);
        double h = (h_arg > 0.0) ? h_arg : 0.9 * guard;
        if (h > guard)
            throw HardStop("grid spacing " + format_number(h) + " too coarse for lambda=" +
                           format_number(lam) + "; need h <= " + format_number(guard));
        auto res = sb::fdverify::empirical_riesz(spec, sigma, lam, h, policy);
        double bound;
        if (domain == "horn")
            bound = sb::horn::riesz_bound({2, nu}, sigma, lam).value;
        else
            bound = sb::horn::critical_riesz_bound(sigma, lam).value;
        const double empirical = res.value_fine;
        const bool dominated = empirical - res.refinement_delta <= bound;
        rep.rows.push_back({lam, empirical, bound, dominated ? 1.0 : 0.0,
                            res.refinement_delta, static_cast<double>(res.unknowns_fine)});
    }
    return rep;
}

// ---------------------------------------------------------------------- lt2d
RunReport run_lt2d(double alpha, double sigma, const std::string& grid, double quad_tol) {
    RunReport rep;
    rep.command = "lt2d";
    rep.params = {{"alpha", format_number(alpha)},
                  {"sigma", format_number(sigma)},
                  {"lambda", grid}};
    rep.tolerances["quad_tol"] = quad_tol;
    rep.columns = {"lambda", "closed_form", "quadrature", "agreement_rel", "x_alpha"};

    const double p = alpha * (sigma + 1.0);
    std::vector<double> lams = parse_grid(grid);
    double log_slope = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> logv;
    for (double lam : lams) {
        auto closed = sb::lt2d::horn_power_bound(alpha, sigma, lam);
        merge_flags(rep, closed, "closed_form");
        double quadv = std::numeric_limits<double>::quiet_NaN();
        double agreement = std::numeric_limits<double>::quiet_NaN();
        if (p < 1.0) {
            quadv = sb::lt2d::horn_power_bound_by_quadrature(alpha, sigma, lam, quad_tol);
            agreement = std::fabs(quadv - closed.value) / std::fabs(closed.value);
        }
        const double xa = (alpha > 0.0 && alpha < 1.0)
                              ? sb::lt2d::horn_power_cutoff(alpha, lam)
                              : std::numeric_limits<double>::quiet_NaN();
        rep.rows.push_back({lam, closed.value, quadv, agreement, xa});
        if (closed.value > 0.0) logv.push_back(std::log(closed.value));
    }
    if (logv.size() == lams.size() && lams.size() >= 2) {
        // least-squares slope of log(bound) against log(lambda)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lams.size(); ++i) {
            const double x = std::log(lams[i]);
            sx += x;
            sy += logv[i];
            sxx += x * x;
            sxy += x * logv[i];
        }
        const double n = static_cast<double>(lams.size());
        log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    rep.tolerances["log_slope"] = log_slope;
    rep.tolerances["log_slope_expected"] = (sigma + 1.0) / (1.0 - alpha);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral bounds for infinite-volume domains"};
    app.set_help_flag("--help", "print help");  // frees -h/--h for grid spacing
    app.require_subcommand(1);

    std::string out_prefix = "report";
    app.add_option("--out", out_prefix, "output prefix (writes PREFIX.csv, PREFIX.json)")
        ->capture_default_str();

    // bound horn / bound urchin
    auto* bound = app.add_subcommand("bound", "closed-form bounds over a lambda grid");
    bound->require_subcommand(1);

    auto* horn = bound->add_subcommand("horn", "horn-shaped region bounds");
    int horn_d = 2;
    double horn_nu = 2.0, horn_sigma = 1.5;
    std::string horn_grid = "1:100:log25";
    horn->add_option("--d", horn_d, "dimension >= 2")->capture_default_str();
    horn->add_option("--nu", horn_nu, "horn exponent nu >= 1")->capture_default_str();
    horn->add_option("--sigma", horn_sigma, "Riesz order (0 = counting)")
        ->capture_default_str();
    horn->add_option("--lambda", horn_grid, "grid a:b:logN|linN")->capture_default_str();

    auto* urch = bound->add_subcommand("urchin", "spiny-urchin bounds");
    std::string urch_kind = "linear", urch_file;
    double urch_delta = 0.5, urch_sigma = 1.5;
    std::string urch_grid = "10:10000:log25";
    urch->add_option("--kind", urch_kind, "linear|geometric|exp-over-sqrt|explicit")
        ->capture_default_str();
    urch->add_option("--delta", urch_delta, "geometric exponent in (0,1)")
        ->capture_default_str();
    urch->add_option("--file", urch_file, "radii file for --kind explicit");
    urch->add_option("--sigma", urch_sigma, "Riesz order")->capture_default_str();
    urch->add_option("--lambda", urch_grid, "grid a:b:logN|linN")->capture_default_str();

    // lt1d
    auto* lt1d = app.add_subcommand("lt1d", "interval Lieb-Thirring bound and identities");
    std::string pot_spec = "well:depth=30,l=1,w=0.6,c=0.5";
    double lt1d_sigma = 1.5, lt1d_tol = 1e-7;
    lt1d->add_option("--potential", pot_spec, "well:...|gauss:...|file:PATH")
        ->capture_default_str();
    lt1d->add_option("--sigma", lt1d_sigma, "Riesz order >= 3/2")->capture_default_str();
    lt1d->add_option("--quad-tol", lt1d_tol, "identity quadrature tolerance")
        ->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "finite-difference verification runs");
    std::string ver_domain = "horn", ver_grid = "10:80:log5";
    double ver_nu = 2.0, ver_sigma = 1.5, ver_h = 0.0, ver_safety = 2.0;
    verify->add_option("--domain", ver_domain, "horn|horn-critical")->capture_default_str();
    verify->add_option("--nu", ver_nu, "horn exponent")->capture_default_str();
    verify->add_option("--sigma", ver_sigma, "Riesz order")->capture_default_str();
    verify->add_option("--lambda", ver_grid, "grid a:b:logN|linN")->capture_default_str();
    verify->add_option("--h", ver_h, "grid spacing (0 = auto from resolution guard)")
        ->capture_default_str();
    verify->add_option("--safety", ver_safety, "truncation safety factor >= 2")
        ->capture_default_str();

    // lt2d
    auto* lt2d = app.add_subcommand("lt2d", "power potential on the critical horn");
    double lt2d_alpha = 0.25, lt2d_sigma = 1.5, lt2d_tol = 1e-8;
    std::string lt2d_grid = "1:100:log10";
    lt2d->add_option("--alpha", lt2d_alpha, "power exponent in (0, 2/5)")
        ->capture_default_str();
    lt2d->add_option("--sigma", lt2d_sigma, "Riesz order")->capture_default_str();
    lt2d->add_option("--lambda", lt2d_grid, "grid a:b:logN|linN")->capture_default_str();
    lt2d->add_option("--quad-tol", lt2d_tol, "quadrature tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        RunReport rep;
        if (horn->parsed())
            rep = run_bound_horn(horn_d, horn_nu, horn_sigma, horn_grid);
        else if (urch->parsed())
            rep = run_bound_urchin(make_sequence(urch_kind, urch_delta, urch_file),
                                   urch_sigma, urch_grid);
        else if (lt1d->parsed())
            rep = run_lt1d(pot_spec, lt1d_sigma, lt1d_tol);
        else if (verify->parsed())
            rep = run_verify(ver_domain, ver_nu, ver_sigma, ver_grid, ver_h, ver_safety);
        else if (lt2d->parsed())
            rep = run_lt2d(lt2d_alpha, lt2d_sigma, lt2d_grid, lt2d_tol);
        rep.write(out_prefix);
        if (!rep.flags.empty()) {
            for (const auto& f : rep.flags) std::cerr << "flag: " << f << "\n";
        }
        std::cout << out_prefix << ".csv\n" << out_prefix << ".json\n";
        return kExitOk;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const HardStop& e) {
        std::cerr << "hard stop: " << e.what() << "\n";
        return kExitHardStop;
    } catch (const sb::ResolutionError& e) {
        std::cerr << "resolution guard: " << e.what() << "\n";
        return kExitHardStop;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
