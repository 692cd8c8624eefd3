#include "sampspec/cli.hpp"

#include "sampspec/bounds.hpp"
#include "sampspec/errors.hpp"
#include "sampspec/experiments.hpp"
#include "sampspec/io.hpp"
#include "sampspec/pointset.hpp"
#include "sampspec/profiles.hpp"
#include "sampspec/spectral_estimation.hpp"
#include "sampspec/transforms.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sampspec {

namespace {

struct RunConfig {
    std::string format = "csv";
    std::string output;
    std::string input;
    std::string sampler;
    std::string case_name = "best";
    std::string method = "quadrature";
    std::string profile;
    std::string direction;
    std::string mode = "exact";
    std::string kind = "psd";
    std::string metric;
    std::string loss = "cosine";
    std::string terms;
    std::vector<int> k_vec;
    std::vector<double> n_list;
    std::vector<int> d_list;
    std::optional<double> n;
    std::optional<int> d;
    std::optional<double> rho0;
    std::optional<double> cl;
    std::optional<double> clprime;
    std::optional<double> rmin;
    std::optional<double> rhoz;
    std::optional<double> bandwidth;
    std::optional<double> grid_max;
    std::optional<double> tol;
    std::optional<std::uint64_t> max_attempts;
    std::uint64_t seed = 0;
    int k_max = 64;
    std::size_t nodes = 512;
    std::size_t realizations = 10000;
    double n_min = 10.0;
    double n_max = 1e6;
    std::size_t points = 9;
    int d_min = 1;
    int d_max = 200;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) {
        throw DomainError(std::string("missing required flag ") + flag);
    }
    return *v;
}

int need_dim(const RunConfig& cfg) {
    const int d = need(cfg.d, "--d");
    if (d < 1) {
        throw DomainError("--d must be >= 1");
    }
    return d;
}

std::size_t need_count(const RunConfig& cfg) {
    const double n = need(cfg.n, "--n");
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e9) {
        throw DomainError("--n must be a positive integer here");
    }
    return static_cast<std::size_t>(n);
}

bool json_format(const RunConfig& cfg) { return cfg.format == "json"; }

void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

PointSet load_points(const RunConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) {
        throw DomainError("cannot open input file '" + cfg.input + "'");
    }
    return io::read_points_csv(in);
}

SpectralProfile make_profile(const RunConfig& cfg) {
    const double n = need(cfg.n, "--n");
    const int d = need_dim(cfg);
    const auto kind = profile_kind_from_string(cfg.profile);
    switch (kind) {
        case ProfileKind::Flat: return SpectralProfile::flat(n, d);
        case ProfileKind::StepPSD: return SpectralProfile::step_psd(need(cfg.rhoz, "--rhoz"), n, d);
        case ProfileKind::StepPCF: return SpectralProfile::step_pcf(need(cfg.rmin, "--rmin"), n, d);
    }
    throw DomainError("unknown profile");
}

LossSpectrumModel make_loss(const RunConfig& cfg, Case c) {
    const double cl = need(cfg.cl, "--cl");
    const double rho0 = need(cfg.rho0, "--rho0");
    if (c == Case::Worst) {
        return LossSpectrumModel::worst(cl, need(cfg.clprime, "--clprime"), rho0);
    }
    return cfg.clprime ? LossSpectrumModel::worst(cl, *cfg.clprime, rho0)
                       : LossSpectrumModel::best(cl, rho0);
}

std::vector<FourierTerm> parse_terms(const std::string& text, int dim) {
    // "k1,k2,...:a:b;..."
    std::vector<FourierTerm> terms;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        if (item.empty()) {
            continue;
        }
        std::stringstream parts(item);
        std::string ks, as, bs;
        if (!std::getline(parts, ks, ':') || !std::getline(parts, as, ':') || !std::getline(parts, bs)) {
            throw DomainError("--terms entries must look like 'k1,k2:a:b'");
        }
        FourierTerm t;
        std::stringstream kstream(ks);
        std::string kv;
        try {
            while (std::getline(kstream, kv, ',')) {
                t.k.push_back(std::stoi(kv));
            }
            t.a = std::stod(as);
            t.b = std::stod(bs);
        } catch (const std::exception&) {
            throw DomainError("--terms: cannot parse '" + item + "'");
        }
        if (static_cast<int>(t.k.size()) != dim) {
            throw DomainError("--terms: frequency '" + ks + "' does not have d components");
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

TestLoss make_test_loss(const RunConfig& cfg, int dim) {
    if (cfg.loss == "cosine") {
        std::vector<int> k = cfg.k_vec.empty() ? std::vector<int>(static_cast<std::size_t>(dim), 0) : cfg.k_vec;
        if (cfg.k_vec.empty()) {
            k[0] = 1;
        }
        if (static_cast<int>(k.size()) != dim) {
            throw DomainError("--k must have d components");
        }
        return TestLoss::cosine(k);
    }
    if (cfg.loss == "fourier") {
        std::vector<FourierTerm> terms;
        if (!cfg.terms.empty()) {
            terms = parse_terms(cfg.terms, dim);
        } else {
            for (int j = 1; j <= 3; ++j) {
                FourierTerm t;
                t.k.assign(static_cast<std::size_t>(dim), j - 1);
                t.k[0] = j;
                t.a = 1.0 / j;
                t.b = 0.5 / j;
                terms.push_back(std::move(t));
            }
        }
        return TestLoss::truncated_fourier(dim, 0.5, std::move(terms));
    }
    throw DomainError("unknown loss '" + cfg.loss + "' (expected cosine or fourier)");
}

void report_csv(std::ostream& os, const nlohmann::json& j) {
    os << "field,value\n";
    for (const auto& [key, value] : j.items()) {
        os << key << ',';
        if (value.is_number_float()) {
            os << io::format_number(value.get<double>());
        } else {
            os << value.dump();
        }
        os << '\n';
    }
}

void cmd_generate(const RunConfig& cfg, std::ostream& os) {
    const int d = need_dim(cfg);
    SeededRng rng(cfg.seed);
    if (cfg.sampler == "random") {
        io::write_points_csv(os, generate_random(d, need_count(cfg), rng));
    } else if (cfg.sampler == "pds") {
        io::write_points_csv(os, generate_poisson_disk(d, need(cfg.rmin, "--rmin"), rng, cfg.max_attempts));
    } else {
        throw DomainError("generate: --sampler must be random or pds");
    }
}

void cmd_psd(const RunConfig& cfg, std::ostream& os) {
    const auto spec = estimate_psd(load_points(cfg), cfg.k_max);
    if (json_format(cfg)) {
        emit_json(os, io::to_json(spec));
    } else {
        io::write_csv(os, spec);
    }
}

void cmd_pcf(const RunConfig& cfg, std::ostream& os) {
    const auto ps = load_points(cfg);
    const auto grid = uniform_grid(cfg.grid_max.value_or(0.5), cfg.nodes);
    const auto pcf = estimate_pcf(ps, grid, cfg.bandwidth);
    if (json_format(cfg)) {
        emit_json(os, io::to_json(pcf));
    } else {
        io::write_csv(os, pcf);
    }
}

void cmd_transform(const RunConfig& cfg, std::ostream& os) {
    const bool forward = cfg.direction == "psd-to-pcf";
    if (!forward && cfg.direction != "pcf-to-psd") {
        throw DomainError("transform: --direction must be psd-to-pcf or pcf-to-psd");
    }
    const double n = need(cfg.n, "--n");
    const int d = need_dim(cfg);
    if (forward) {
        const auto grid = uniform_grid(cfg.grid_max.value_or(0.5), cfg.nodes);
        PairCorrelation pcf;
        if (!cfg.profile.empty()) {
            pcf = psd_to_pcf(make_profile(cfg), grid);
        } else {
            std::ifstream in(cfg.input);
            if (!in) {
                throw DomainError("transform: give --profile or a readable --input");
            }
            pcf = psd_to_pcf(io::read_spectrum_csv(in, n, d), grid);
        }
        json_format(cfg) ? emit_json(os, io::to_json(pcf)) : io::write_csv(os, pcf);
        return;
    }
    const double rho_hi = cfg.grid_max.value_or(4.0 * cfg.rhoz.value_or(max_zero_region(n, d)));
    const auto grid = uniform_grid(rho_hi, cfg.nodes);
    RadialSpectrum spec;
    if (!cfg.profile.empty()) {
        spec = pcf_to_psd(make_profile(cfg), grid);
    } else {
        std::ifstream in(cfg.input);
        if (!in) {
            throw DomainError("transform: give --profile or a readable --input");
        }
        spec = pcf_to_psd(io::read_pcf_csv(in, n, d), grid);
    }
    json_format(cfg) ? emit_json(os, io::to_json(spec)) : io::write_csv(os, spec);
}

void cmd_realizable(const RunConfig& cfg, std::ostream& os) {
    RealizabilityReport rep;
    if (!cfg.profile.empty()) {
        RealizabilityOptions opt;
        opt.tol = cfg.tol.value_or(1e-9);
        if (cfg.mode == "small_arg") {
            opt.mode = BesselMode::SmallArgument;
        } else if (cfg.mode != "exact") {
            throw DomainError("realizable: --mode must be exact or small_arg");
        }
        rep = check_realizability(make_profile(cfg), opt);
    } else {
        const double n = need(cfg.n, "--n");
        const int d = need_dim(cfg);
        std::ifstream in(cfg.input);
        if (!in) {
            throw DomainError("realizable: give --profile or a readable --input");
        }
        const double tol = cfg.tol.value_or(1e-3);
        if (cfg.kind == "psd") {
            rep = check_realizability(io::read_spectrum_csv(in, n, d),
                                      uniform_grid(cfg.grid_max.value_or(0.5), cfg.nodes), tol);
        } else if (cfg.kind == "pcf") {
            const double hi = cfg.grid_max.value_or(4.0 * max_zero_region(n, d));
            rep = check_realizability(io::read_pcf_csv(in, n, d), uniform_grid(hi, cfg.nodes), tol);
        } else {
            throw DomainError("realizable: --kind must be psd or pcf");
        }
    }
    const auto j = io::to_json(rep);
    json_format(cfg) ? emit_json(os, j) : report_csv(os, j);
}

void cmd_optimal(const RunConfig& cfg, std::ostream& os) {
    const int d = need_dim(cfg);
    std::string name;
    double value = 0.0;
    if (cfg.sampler == "bluenoise") {
        if (cfg.n) {
            name = "rho_z_star";
            value = max_zero_region(*cfg.n, d);
        } else {
            name = "n_min_for_rho_z";
            value = min_samples_for_zero_region(need(cfg.rhoz, "--n or --rhoz"), d);
        }
    } else if (cfg.sampler == "pds") {
        if (cfg.n) {
            name = "r_min_star";
            value = max_rmin(*cfg.n, d);
        } else {
            name = "n_min_for_rmin";
            value = min_samples_for_rmin(need(cfg.rmin, "--n or --rmin"), d);
        }
    } else {
        throw DomainError("optimal: --sampler must be bluenoise or pds");
    }
    if (json_format(cfg)) {
        emit_json(os, {{"sampler", cfg.sampler}, {"d", d}, {name, value}});
    } else {
        os << io::format_number(value) << '\n';
    }
}

void cmd_bound(const RunConfig& cfg, std::ostream& os) {
    const auto sampler = sampler_from_string(cfg.sampler);
    const auto c = case_from_string(cfg.case_name);
    const auto method = pds_method_from_string(cfg.method);
    const auto loss = make_loss(cfg, c);
    const double n = need(cfg.n, "--n");
    const int d = need_dim(cfg);
    const auto res = bound(sampler, loss, n, d, c, method);
    if (json_format(cfg)) {
        emit_json(os, io::bound_record(sampler, c, n, d, loss, res));
    } else {
        os << io::format_number(res.value) << '\n';
    }
}

void cmd_sweep_n(const RunConfig& cfg, std::ostream& os) {
    const auto sampler = sampler_from_string(cfg.sampler);
    const auto c = case_from_string(cfg.case_name);
    const auto method = pds_method_from_string(cfg.method);
    const auto loss = make_loss(cfg, c);
    const auto n_list = cfg.n_list.empty() ? log_spaced(cfg.n_min, cfg.n_max, cfg.points) : cfg.n_list;
    const auto sweep = convergence_sweep(sampler, loss, need_dim(cfg), n_list, c, method);
    json_format(cfg) ? emit_json(os, io::to_json(sweep)) : io::write_csv(os, sweep);
}

void cmd_sweep_d(const RunConfig& cfg, std::ostream& os) {
    const auto metric = dimension_metric_from_string(cfg.metric);
    DimensionParams p;
    p.n = cfg.n.value_or(p.n);
    p.rho_z = cfg.rhoz.value_or(p.rho_z);
    p.r_min = cfg.rmin.value_or(p.r_min);
    std::vector<int> d_list = cfg.d_list;
    if (d_list.empty()) {
        if (cfg.d_min < 1 || cfg.d_max < cfg.d_min) {
            throw DomainError("sweep-d: need 1 <= --dmin <= --dmax");
        }
        for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
            d_list.push_back(d);
        }
    }
    const auto sweep = dimension_sweep(metric, p, d_list);
    json_format(cfg) ? emit_json(os, io::to_json(sweep)) : io::write_csv(os, sweep);
}

void cmd_validate(const RunConfig& cfg, std::ostream& os) {
    SamplerSpec spec;
    spec.dim = need_dim(cfg);
    spec.max_attempts = cfg.max_attempts;
    if (cfg.sampler == "random") {
        spec.kind = Sampler::Random;
        spec.n = need_count(cfg);
    } else if (cfg.sampler == "pds") {
        spec.kind = Sampler::PoissonDisk;
        spec.r_min = need(cfg.rmin, "--rmin");
    } else {
        throw DomainError("validate: --sampler must be random or pds");
    }
    const auto loss = make_test_loss(cfg, spec.dim);
    const auto rep = validate_spectral_identity(loss, spec, cfg.realizations, cfg.seed);
    const auto j = io::to_json(rep);
    json_format(cfg) ? emit_json(os, j) : report_csv(os, j);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral analysis of sampling patterns and generalization-error bounds", "specbound"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", cfg.output, "Write to this file instead of stdout");
    };
    auto add_nd = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Number of samples N")->check(CLI::PositiveNumber);
        sub->add_option("--d", cfg.d, "Dimension d")->check(CLI::Range(1, 1000000));
    };
    auto add_loss = [&](CLI::App* sub) {
        sub->add_option("--sampler", cfg.sampler, "random | bluenoise | pds")->required();
        sub->add_option("--case", cfg.case_name, "best | worst")->check(CLI::IsMember({"best", "worst"}));
        sub->add_option("--cl", cfg.cl, "Low-frequency loss plateau c_l")->check(CLI::PositiveNumber);
        sub->add_option("--clprime", cfg.clprime, "Worst-case tail constant c_l'")->check(CLI::PositiveNumber);
        sub->add_option("--rho0", cfg.rho0, "Loss cutoff frequency rho_0")->check(CLI::PositiveNumber);
        sub->add_option("--method", cfg.method, "pds: quadrature | closed_form");
    };

    auto* generate = app.add_subcommand("generate", "Generate a point set as CSV");
    generate->add_option("--sampler", cfg.sampler, "random | pds")->required();
    generate->add_option("--rmin", cfg.rmin, "Poisson-disk radius")->check(CLI::PositiveNumber);
    generate->add_option("--seed", cfg.seed, "64-bit seed");
    generate->add_option("--max-attempts", cfg.max_attempts, "Consecutive rejections before stopping");
    add_nd(generate);
    add_format(generate);

    auto* psd = app.add_subcommand("psd", "Radially averaged PSD of a point-set CSV");
    psd->add_option("--input", cfg.input, "Point-set CSV")->required();
    psd->add_option("--kmax", cfg.k_max, "Largest |k|")->check(CLI::Range(1, 4096));
    add_format(psd);

    auto* pcf = app.add_subcommand("pcf", "Pair correlation function of a point-set CSV");
    pcf->add_option("--input", cfg.input, "Point-set CSV")->required();
    pcf->add_option("--bandwidth", cfg.bandwidth, "Gaussian kernel width")->check(CLI::PositiveNumber);
    pcf->add_option("--grid-max", cfg.grid_max, "Largest radius")->check(CLI::Range(1e-12, 0.5));
    pcf->add_option("--nodes", cfg.nodes, "Grid size")->check(CLI::Range(1, 1000000));
    add_format(pcf);

    auto* transform = app.add_subcommand("transform", "Convert between PSD and PCF");
    transform->add_option("--direction", cfg.direction, "psd-to-pcf | pcf-to-psd")->required();
    transform->add_option("--profile", cfg.profile, "flat | step_psd | step_pcf");
    transform->add_option("--input", cfg.input, "Series CSV (rho,value or r,value)");
    transform->add_option("--rhoz", cfg.rhoz, "Zero-region radius")->check(CLI::PositiveNumber);
    transform->add_option("--rmin", cfg.rmin, "Minimum distance")->check(CLI::PositiveNumber);
    transform->add_option("--grid-max", cfg.grid_max, "Largest output node")->check(CLI::PositiveNumber);
    transform->add_option("--nodes", cfg.nodes, "Grid size")->check(CLI::Range(1, 1000000));
    add_nd(transform);
    add_format(transform);

    auto* realizable = app.add_subcommand("realizable", "Realizability report");
    realizable->add_option("--profile", cfg.profile, "flat | step_psd | step_pcf");
    realizable->add_option("--input", cfg.input, "Series CSV");
    realizable->add_option("--kind", cfg.kind, "Input kind: psd | pcf");
    realizable->add_option("--rhoz", cfg.rhoz, "Zero-region radius")->check(CLI::PositiveNumber);
    realizable->add_option("--rmin", cfg.rmin, "Minimum distance")->check(CLI::PositiveNumber);
    realizable->add_option("--mode", cfg.mode, "Bessel evaluation: exact | small_arg");
    realizable->add_option("--tol", cfg.tol, "Non-negativity tolerance")->check(CLI::NonNegativeNumber);
    realizable->add_option("--grid-max", cfg.grid_max, "Largest node of the transformed grid")->check(CLI::PositiveNumber);
    realizable->add_option("--nodes", cfg.nodes, "Grid size")->check(CLI::Range(1, 1000000));
    add_nd(realizable);
    add_format(realizable);

    auto* optimal = app.add_subcommand("optimal", "Optimal rho_z*, r_min* or the minimum N");
    optimal->add_option("--sampler", cfg.sampler, "bluenoise | pds")->required();
    optimal->add_option("--rhoz", cfg.rhoz, "Zero-region radius")->check(CLI::PositiveNumber);
    optimal->add_option("--rmin", cfg.rmin, "Minimum distance")->check(CLI::PositiveNumber);
    add_nd(optimal);
    add_format(optimal);

    auto* bound_cmd = app.add_subcommand("bound", "Single generalization-error bound");
    add_loss(bound_cmd);
    add_nd(bound_cmd);
    add_format(bound_cmd);

    auto* sweep_n = app.add_subcommand("sweep-n", "Bound over N with a log-log fit");
    add_loss(sweep_n);
    add_nd(sweep_n);
    sweep_n->add_option("--nlist", cfg.n_list, "Explicit N values")->delimiter(',');
    sweep_n->add_option("--nmin", cfg.n_min, "Smallest N")->check(CLI::PositiveNumber);
    sweep_n->add_option("--nmax", cfg.n_max, "Largest N")->check(CLI::PositiveNumber);
    sweep_n->add_option("--points", cfg.points, "Number of log-spaced N")->check(CLI::Range(2, 100000));
    add_format(sweep_n);

    auto* sweep_d = app.add_subcommand("sweep-d", "Optimal-parameter metrics over dimension");
    sweep_d->add_option("--metric", cfg.metric,
                        "rho_z_star | n_min_for_rho_z | r_min_star | n_min_for_rmin | relative_rho_z | relative_rmin")
        ->required();
    sweep_d->add_option("--n", cfg.n, "Number of samples N")->check(CLI::PositiveNumber);
    sweep_d->add_option("--rhoz", cfg.rhoz, "Zero-region radius")->check(CLI::PositiveNumber);
    sweep_d->add_option("--rmin", cfg.rmin, "Minimum distance")->check(CLI::PositiveNumber);
    sweep_d->add_option("--dlist", cfg.d_list, "Explicit dimensions")->delimiter(',');
    sweep_d->add_option("--dmin", cfg.d_min, "Smallest d");
    sweep_d->add_option("--dmax", cfg.d_max, "Largest d");
    add_format(sweep_d);

    auto* validate_cmd = app.add_subcommand("validate", "Empirical check of the spectral variance identity");
    validate_cmd->add_option("--sampler", cfg.sampler, "random | pds")->required();
    validate_cmd->add_option("--rmin", cfg.rmin, "Poisson-disk radius")->check(CLI::PositiveNumber);
    validate_cmd->add_option("--loss", cfg.loss, "cosine | fourier");
    validate_cmd->add_option("--k", cfg.k_vec, "Cosine frequency")->delimiter(',');
    validate_cmd->add_option("--terms", cfg.terms, "Fourier terms 'k1,k2:a:b;...'");
    validate_cmd->add_option("--realizations", cfg.realizations, "Monte Carlo realizations")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    validate_cmd->add_option("--seed", cfg.seed, "64-bit seed");
    validate_cmd->add_option("--max-attempts", cfg.max_attempts, "Dart-throwing rejection limit");
    add_nd(validate_cmd);
    add_format(validate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    using Handler = void (*)(const RunConfig&, std::ostream&);
    const std::vector<std::pair<CLI::App*, Handler>> handlers = {
        {generate, cmd_generate},     {psd, cmd_psd},         {pcf, cmd_pcf},
        {transform, cmd_transform},   {realizable, cmd_realizable}, {optimal, cmd_optimal},
        {bound_cmd, cmd_bound},       {sweep_n, cmd_sweep_n}, {sweep_d, cmd_sweep_d},
        {validate_cmd, cmd_validate},
    };

    try {
        for (const auto& [sub, handler] : handlers) {
            if (!sub->parsed()) {
                continue;
            }
            std::ostringstream buffer;
            handler(cfg, buffer);
            if (cfg.output.empty()) {
                out << buffer.str();
            } else {
                std::ofstream file(cfg.output, std::ios::binary);
                if (!file) {
                    throw DomainError("cannot open output file '" + cfg.output + "'");
                }
                file << buffer.str();
            }
            return 0;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace sampspec
