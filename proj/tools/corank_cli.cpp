// corank: command-line front end.  JSON on stdout, logs on stderr.
//
// Exit codes: 0 success (and every validation check passed), 1 numeric
// failure or failed check, 2 usage error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corank/corank.hpp"

using nlohmann::ordered_json;
using namespace corank;

namespace {

constexpr const char* kClosed = "closed-form";
constexpr const char* kMonteCarlo = "monte-carlo";

ordered_json number_or_null(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json log_value_json(LogValue v, std::optional<double> stderr_value, const char* provenance,
                            std::optional<std::uint64_t> samples = std::nullopt,
                            std::optional<std::uint64_t> seed = std::nullopt)
{
    ordered_json j;
    j["value_ln"] = v.ln();
    j["value"] = v.overflows() ? ordered_json(nullptr) : ordered_json(v.value());
    if (v.overflows())
        j["overflow"] = true;
    j["stderr"] = stderr_value ? number_or_null(*stderr_value) : ordered_json(nullptr);
    j["provenance"] = provenance;
    if (samples)
        j["samples"] = *samples;
    if (seed)
        j["seed"] = *seed;
    return j;
}

ordered_json estimate_json(const MCEstimate& e, bool exact)
{
    ordered_json j;
    j["value_ln"] = e.mean > 0 ? ordered_json(std::log(e.mean)) : ordered_json(nullptr);
    j["value"] = e.mean;
    j["stderr"] = e.stderr_;
    j["samples"] = e.samples;
    j["seed"] = e.seed;
    j["provenance"] = exact ? kClosed : kMonteCarlo;
    return j;
}

ordered_json constant_json(const ConstantEstimate& c)
{
    ordered_json j;
    j["value_ln"] = std::log(c.value);
    j["value"] = c.value;
    j["stderr"] = c.stderr_;
    j["provenance"] = c.exact ? kClosed : kMonteCarlo;
    if (!c.exact) {
        j["samples"] = c.samples;
        j["seed"] = c.seed;
    }
    return j;
}

ordered_json big_json(const BigInt& d)
{
    if (d <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return ordered_json(d.convert_to<std::int64_t>());
    return ordered_json(d.str());
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

TubeNormalization parse_normalization(const std::string& s)
{
    return s == "published" ? TubeNormalization::AsPublished : TubeNormalization::Weyl;
}

I12Branch parse_i12(const std::string& s) { return s == "published" ? I12Branch::Published : I12Branch::Definition; }

const char* normalization_name(TubeNormalization n) { return n == TubeNormalization::Weyl ? "weyl" : "published"; }

//---------------------------------------------------------------------------//

struct VolumeArgs
{
    std::string space = "real";
    int n = 2;
    int mu = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string normalization = "weyl";
    std::string i12 = "definition";
};

int run_volume(const VolumeArgs& a)
{
    const SpaceKind kind = parse_space(a.space);
    const TubeNormalization norm = parse_normalization(a.normalization);
    ordered_json out;
    out["command"] = "volume";
    out["space"] = to_string(kind);
    out["n"] = a.n;
    out["mu"] = a.mu;
    MatrixSpace space(kind, a.n);
    out["N"] = space.N();
    out["c"] = space.c(a.mu);

    VolumeRatio ratio;
    ordered_json inputs = ordered_json::object();
    if (kind == SpaceKind::RealGeneral) {
        ConstantEstimate I;
        if (const auto k = known_I_mu(a.mu))
            I = ConstantEstimate::exact_value(*k);
        else {
            std::cerr << "estimating I_mu(" << a.mu << ") with " << a.samples << " samples\n";
            I = ConstantEstimate::from(I_mu(a.mu, a.samples, a.seed));
        }
        inputs["I_mu"] = constant_json(I);
        ratio = real_volume_ratio(a.n, a.mu, I, norm);
    } else if (kind == SpaceKind::RealSymmetric) {
        ConstantEstimate I;
        if (const auto k = known_I_1mu(a.mu, parse_i12(a.i12)))
            I = ConstantEstimate::exact_value(*k);
        else {
            std::cerr << "estimating I_1mu(" << a.mu << ") with " << a.samples << " samples\n";
            I = ConstantEstimate::from(I_1mu(a.mu, a.samples, a.seed));
        }
        inputs["I_1mu"] = constant_json(I);
        std::optional<ConstantEstimate> moment;
        if (const auto closed = closed_det_moment(a.n, a.mu))
            inputs["det_moment"] = log_value_json(*closed, std::nullopt, kClosed);
        else {
            std::cerr << "estimating E|det GOE(" << a.n - a.mu << ")|^" << a.mu << " with " << a.samples
                      << " samples\n";
            moment = ConstantEstimate::from(estimate_abs_det_moment(a.n - a.mu, a.mu, a.samples, a.seed + 1));
            inputs["det_moment"] = constant_json(*moment);
        }
        ratio = sym_volume_ratio(a.n, a.mu, I, moment, norm);
        out["i12_branch"] = a.i12;
    } else {
        ratio = complex_volume_ratio(kind, a.n, a.mu);
    }
    out["normalization"] = normalization_name(norm);
    const char* prov = ratio.relative_stderr ? kMonteCarlo : kClosed;
    out["ratio"] = log_value_json(ratio.value, ratio.stderr_value(), prov);
    if (ratio.space.N() - ratio.space.c(a.mu) - 1 >= 0) {
        const LogValue absv = absolute_volume(ratio);
        std::optional<double> se;
        if (ratio.relative_stderr)
            se = *ratio.relative_stderr * absv.value();
        out["absolute_volume"] = log_value_json(absv, se, prov);
    } else {
        out["absolute_volume"] = nullptr;
        out["note"] = "stratum is empty on the unit sphere (mu = n)";
    }
    out["inputs"] = inputs;
    out["workers"] = worker_count();
    emit(out);
    return 0;
}

int run_degree(const std::string& space_s, int n, int mu)
{
    const SpaceKind kind = parse_space(space_s);
    if (!is_complex(kind))
        throw DomainError("degree: --space must be complex or complex-sym");
    const BigInt d = kind == SpaceKind::ComplexGeneral ? complex_degree(n, mu) : complex_sym_degree(n, mu);
    ordered_json out;
    out["command"] = "degree";
    out["space"] = to_string(kind);
    out["n"] = n;
    out["mu"] = mu;
    out["degree"] = big_json(d);
    out["degree_string"] = d.str();
    out["value_ln"] = ln_big(d);
    out["provenance"] = kClosed;
    emit(out);
    return 0;
}

int run_constants(const std::string& which, int mu, std::uint64_t samples, std::uint64_t seed, long grid)
{
    ordered_json out;
    out["command"] = "constants";
    out["which"] = which;
    out["mu"] = mu;
    const bool I1 = which == "I1";
    const MCEstimate e = I1 ? I_1mu(mu, samples, seed) : I_mu(mu, samples, seed);
    const bool exact = mu == 1;
    out["estimate"] = estimate_json(e, exact);
    out["mean"] = e.mean;
    out["stderr"] = e.stderr_;
    out["samples"] = e.samples;
    out["seed"] = e.seed;
    out["provenance"] = exact ? kClosed : kMonteCarlo;
    if (mu >= 2 && mu <= 3 && grid > 0) {
        const auto q = I1 ? I_1mu_quadrature(mu, grid) : I_mu_quadrature(mu, grid);
        out["quadrature"] = {{"value", q.value}, {"error_estimate", q.error_estimate},
                             {"points_per_axis", q.points_per_axis}, {"provenance", "quadrature"}};
    }
    if (I1 && mu == 2) {
        out["candidates"] = {{"definition", *known_I_1mu(2, I12Branch::Definition)},
                             {"published", *known_I_1mu(2, I12Branch::Published)}};
    } else if (!I1 && mu <= 2) {
        out["closed_form"] = *known_I_mu(mu);
    }
    out["workers"] = worker_count();
    emit(out);
    return 0;
}

int run_validate(const std::string& suite, const ValidationConfig& cfg, const std::string& format)
{
    std::vector<std::string> names;
    if (suite == "all")
        for (const auto& [k, v] : validation_suites())
            names.push_back(k);
    else
        names.push_back(suite);
    std::vector<CheckResult> rows;
    for (const auto& s : names) {
        std::cerr << "running suite " << s << "\n";
        auto r = run_suite(s, cfg);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    bool all = true;
    for (const auto& r : rows)
        all = all && r.pass;
    if (format == "csv") {
        std::cout << "suite,check,observed,expected,stderr,tolerance,pass,note\n";
        for (const auto& r : rows) {
            std::string note = r.note;
            for (char& ch : note)
                if (ch == '"')
                    ch = '\'';
            std::ostringstream os;
            os.precision(17);
            os << r.suite << ",\"" << r.name << "\"," << r.observed << "," << r.expected << "," << r.stderr_ << ","
               << r.tolerance << "," << (r.pass ? "true" : "false") << ",\"" << note << "\"\n";
            std::cout << os.str();
        }
    } else {
        ordered_json out;
        out["command"] = "validate";
        out["suite"] = suite;
        out["samples"] = cfg.samples;
        out["seed"] = cfg.seed;
        out["workers"] = worker_count();
        ordered_json checks = ordered_json::array();
        for (const auto& r : rows)
            checks.push_back({{"suite", r.suite},
                              {"check", r.name},
                              {"observed", number_or_null(r.observed)},
                              {"expected", r.expected},
                              {"stderr", r.stderr_},
                              {"tolerance", r.tolerance},
                              {"pass", r.pass},
                              {"provenance", kMonteCarlo},
                              {"note", r.note}});
        out["checks"] = checks;
        out["all_pass"] = all;
        emit(out);
    }
    return all ? 0 : 1;
}

int run_asymptotics(const std::string& space_s, int mu, int n_min, int n_max, int points, std::uint64_t seed,
                    const std::string& i12, const std::string& format)
{
    GrowthOptions opt;
    opt.points = points;
    opt.seed = seed;
    opt.i12 = parse_i12(i12);
    const auto rep = verify_growth(parse_space(space_s), mu, n_min, n_max, opt);
    if (format == "csv") {
        std::cout << "space,mu,target,exponent,r_squared,pass,constant_at_max,fitted_constant\n";
        std::ostringstream os;
        os.precision(17);
        os << to_string(rep.kind) << "," << mu << "," << rep.target << "," << rep.fit.exponent << ","
           << rep.fit.r_squared << "," << (rep.pass ? "true" : "false") << "," << rep.constant_at_max << ","
           << rep.fitted_constant << "\n";
        std::cout << os.str();
        return rep.pass ? 0 : 1;
    }
    ordered_json out;
    out["command"] = "asymptotics";
    out["space"] = to_string(rep.kind);
    out["mu"] = mu;
    out["n_min"] = n_min;
    out["n_max"] = n_max;
    out["n_values"] = rep.n_values;
    out["target_exponent"] = rep.target;
    out["exponent"] = rep.fit.exponent;
    out["r_squared"] = rep.fit.r_squared;
    out["max_residual"] = rep.fit.max_residual;
    out["tolerance"] = rep.tolerance;
    out["pass"] = rep.pass;
    out["constant_at_max"] = rep.constant_at_max;
    out["fitted_constant"] = rep.fitted_constant;
    out["constant_source"] = rep.constant_note;
    out["seed"] = seed;
    out["provenance"] = rep.constant_note.find("Monte Carlo") != std::string::npos ? kMonteCarlo : kClosed;
    emit(out);
    return rep.pass ? 0 : 1;
}

int run_surface(int n)
{
    const auto s = expected_singular_points(n);
    ordered_json out;
    out["command"] = "surface-singularities";
    out["n"] = n;
    out["expected_real"] = log_value_json(s.corrected, std::nullopt, kClosed);
    out["published_expression"] = log_value_json(s.published, std::nullopt, kClosed);
    out["complex_count"] = big_json(s.complex_count);
    out["note"] = "expected_real uses I_{1,2} = sqrt(2)/3 and the Weyl tube normalization; it equals twice the "
                  "published expression";
    emit(out);
    return 0;
}

ordered_json error_json(const std::string& type, const std::string& what)
{
    return {{"error", type}, {"message", what}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Intrinsic volumes of fixed-corank matrix strata: closed forms and Monte Carlo validation"};
    app.require_subcommand(1);

    VolumeArgs va;
    auto* vol = app.add_subcommand("volume", "volume ratio and absolute volume of a corank stratum");
    vol->add_option("--space", va.space, "real|sym|complex|complex-sym")
        ->required()
        ->check(CLI::IsMember({"real", "sym", "complex", "complex-sym"}));
    vol->add_option("--n", va.n, "matrix size")->required()->check(CLI::PositiveNumber);
    vol->add_option("--mu", va.mu, "corank")->required()->check(CLI::PositiveNumber);
    vol->add_option("--samples", va.samples, "Monte Carlo samples for estimated inputs");
    vol->add_option("--seed", va.seed, "Monte Carlo seed");
    vol->add_option("--normalization", va.normalization, "weyl|published")
        ->check(CLI::IsMember({"weyl", "published"}));
    vol->add_option("--i12", va.i12, "I_{1,2} value: definition (sqrt(2)/3) | published (sqrt(2)/2)")
        ->check(CLI::IsMember({"definition", "published"}));

    std::string dspace;
    int dn = 0, dmu = 0;
    auto* deg = app.add_subcommand("degree", "exact degree of a complex corank stratum");
    deg->add_option("--space", dspace, "complex|complex-sym")
        ->required()
        ->check(CLI::IsMember({"complex", "complex-sym"}));
    deg->add_option("--n", dn)->required()->check(CLI::PositiveNumber);
    deg->add_option("--mu", dmu)->required()->check(CLI::PositiveNumber);

    std::string which;
    int cmu = 1;
    std::uint64_t csamples = 1'000'000, cseed = 1;
    long cgrid = 0;
    auto* con = app.add_subcommand("constants", "structure constants I_mu (I) and I_{1,mu} (I1)");
    con->add_option("--which", which, "I|I1")->required()->check(CLI::IsMember({"I", "I1"}));
    con->add_option("--mu", cmu)->required()->check(CLI::PositiveNumber);
    con->add_option("--samples", csamples);
    con->add_option("--seed", cseed);
    con->add_option("--quadrature-points", cgrid, "also run grid quadrature (mu <= 3) with this many points per axis");

    std::string suite;
    std::string vformat = "json";
    ValidationConfig cfg;
    auto* val = app.add_subcommand("validate", "Monte Carlo validation suites");
    val->add_option("--suite", suite, "smallball|tube|moments|selberg|conefactor|pencil|constants|all")
        ->required()
        ->check(CLI::IsMember({"smallball", "tube", "moments", "selberg", "conefactor", "pencil", "constants", "all"}));
    val->add_option("--samples", cfg.samples, "samples per check");
    val->add_option("--pencil-samples", cfg.pencil_samples);
    val->add_option("--constant-samples", cfg.constant_samples);
    val->add_option("--seed", cfg.seed);
    val->add_option("--format", vformat)->check(CLI::IsMember({"json", "csv"}));

    std::string aspace, aformat = "json", ai12 = "definition";
    int amu = 1, anmin = 200, anmax = 2000, apoints = 40;
    std::uint64_t aseed = 1;
    auto* asy = app.add_subcommand("asymptotics", "growth exponent of the volume ratio or degree in n");
    asy->add_option("--space", aspace)->required()->check(CLI::IsMember({"real", "sym", "complex", "complex-sym"}));
    asy->add_option("--mu", amu)->required()->check(CLI::PositiveNumber);
    asy->add_option("--n-min", anmin)->check(CLI::PositiveNumber);
    asy->add_option("--n-max", anmax)->check(CLI::PositiveNumber);
    asy->add_option("--points", apoints)->check(CLI::Range(5, 1000));
    asy->add_option("--seed", aseed);
    asy->add_option("--i12", ai12)->check(CLI::IsMember({"definition", "published"}));
    asy->add_option("--format", aformat)->check(CLI::IsMember({"json", "csv"}));

    int sn = 3;
    auto* surf = app.add_subcommand("surface-singularities", "expected real singular points of a random "
                                                             "determinantal surface");
    surf->add_option("--n", sn)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*vol)
            return run_volume(va);
        if (*deg)
            return run_degree(dspace, dn, dmu);
        if (*con)
            return run_constants(which, cmu, csamples, cseed, cgrid);
        if (*val)
            return run_validate(suite, cfg, vformat);
        if (*asy)
            return run_asymptotics(aspace, amu, anmin, anmax, apoints, aseed, ai12, aformat);
        if (*surf)
            return run_surface(sn);
    } catch (const MomentUnavailable& e) {
        emit(error_json("moment-unavailable", e.what()));
        return 1;
    } catch (const DomainError& e) {
        emit(error_json("domain", e.what()));
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        emit(error_json("numeric", e.what()));
        return 1;
    } catch (const std::exception& e) {
        emit(error_json("internal", e.what()));
        return 1;
    }
    return 2;
}
