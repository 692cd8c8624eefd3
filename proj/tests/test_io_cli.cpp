#include "sampspec/cli.hpp"
#include "sampspec/errors.hpp"
#include "sampspec/io.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sampspec;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "specbound");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sampspec_io_test_" + name);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(-2.5) == "-2.5");
    CHECK(io::format_number(1e-300) == "1e-300");
    SeededRng rng(1);
    for (int i = 0; i < 2000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.uniform() * 40.0) - 20);
        const auto s = io::format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("point CSV round-trip") {
    SeededRng rng(2);
    const auto ps = generate_random(3, 25, rng);
    std::stringstream ss;
    io::write_points_csv(ss, ps);
    const auto back = io::read_points_csv(ss);
    CHECK(back.dim() == 3);
    CHECK(std::vector<double>(back.coords().begin(), back.coords().end()) ==
          std::vector<double>(ps.coords().begin(), ps.coords().end()));

    std::stringstream ragged("0.1,0.2\n0.3\n");
    CHECK_THROWS_AS(io::read_points_csv(ragged), DomainError);
    std::stringstream junk("0.1,abc\n");
    CHECK_THROWS_AS(io::read_points_csv(junk), DomainError);
    std::stringstream empty("");
    CHECK_THROWS_AS(io::read_points_csv(empty), DomainError);
    std::stringstream outside("0.1,1.5\n");
    CHECK_THROWS_AS(io::read_points_csv(outside), DomainError);
}

TEST_CASE("series CSV round-trip") {
    SeededRng rng(3);
    const auto spec = estimate_psd(generate_random(2, 64, rng), 6);
    std::stringstream ss;
    io::write_csv(ss, spec);
    CHECK(ss.str().rfind("rho,value\n", 0) == 0);
    const auto back = io::read_spectrum_csv(ss, 64.0, 2);
    CHECK(back.rho_grid == spec.rho_grid);
    CHECK(back.values == spec.values);
    CHECK(back.n_samples == 64.0);

    const PairCorrelation pcf{{0.1, 0.2}, {0.5, 1.25}, 10.0, 1, 10.0};
    std::stringstream sp;
    io::write_csv(sp, pcf);
    CHECK(sp.str() == "r,value\n0.1,0.5\n0.2,1.25\n");
    const auto pback = io::read_pcf_csv(sp, 10.0, 1);
    CHECK(pback.values == pcf.values);

    std::stringstream headless("1,2\n");
    CHECK_THROWS_AS(io::read_spectrum_csv(headless, 10.0, 2), DomainError);
    std::stringstream wide("rho,value\n1,2,3\n");
    CHECK_THROWS_AS(io::read_spectrum_csv(wide, 10.0, 2), DomainError);
}

TEST_CASE("json records") {
    const auto p = SpectralProfile::step_pcf(0.05, 200.0, 2);
    const auto j = io::to_json(p);
    CHECK(j.at("kind") == "step_pcf");
    const auto back = io::profile_from_json(j);
    CHECK(back.kind == p.kind);
    CHECK(back.param == p.param);
    CHECK(back.n_samples == p.n_samples);
    CHECK(back.dim == p.dim);
    CHECK_THROWS_AS(io::profile_from_json(nlohmann::json{{"kind", "step_pcf"}}), DomainError);

    const auto loss = LossSpectrumModel::worst(1.0, 2.0, 0.5);
    const auto res = bound_random(loss, 100.0, 2, Case::Worst);
    const auto rec = io::bound_record(Sampler::Random, Case::Worst, 100.0, 2, loss, res);
    for (const char* key : {"sampler", "case", "N", "d", "c_l", "c_l_prime", "rho_0", "value", "regime", "components"}) {
        CHECK(rec.contains(key));
    }
    CHECK(rec.at("value").get<double>() == res.value);
    CHECK(rec.at("components").contains("random_baseline"));

    const auto rep = io::to_json(check_realizability(SpectralProfile::flat(10.0, 2)));
    CHECK(rep.at("realizable") == true);
}

TEST_CASE("cli examples") {
    const auto opt = run({"optimal", "--sampler", "bluenoise", "--n", "10", "--d", "2"});
    CHECK(opt.code == 0);
    CHECK(std::abs(std::stod(opt.out) - 1.7841241) < 1e-6);
    const auto inv = run({"optimal", "--sampler", "bluenoise", "--rhoz", opt.out.substr(0, opt.out.size() - 1), "--d", "2"});
    CHECK(std::abs(std::stod(inv.out) - 10.0) < 1e-10);
    const auto rmin = run({"optimal", "--sampler", "pds", "--n", "10", "--d", "2"});
    CHECK(std::abs(std::stod(rmin.out) - 0.1784124) < 1e-6);

    const auto b = run({"bound", "--sampler", "random", "--case", "best", "--cl", "1", "--rho0", "1", "--n", "100", "--d", "2"});
    CHECK(b.code == 0);
    CHECK(std::abs(std::stod(b.out) - 0.0314159) < 1e-7);
    const auto bj = run({"bound", "--sampler", "random", "--case", "best", "--cl", "1", "--rho0", "1", "--n", "100",
                         "--d", "2", "--format", "json"});
    const auto j = nlohmann::json::parse(bj.out);
    CHECK(j.at("regime") == "above_cutoff");

    const auto g = run({"generate", "--sampler", "random", "--n", "3", "--d", "1", "--seed", "7"});
    CHECK(g.code == 0);
    CHECK(std::count(g.out.begin(), g.out.end(), '\n') == 3);
    CHECK(run({"generate", "--sampler", "random", "--n", "3", "--d", "1", "--seed", "7"}).out == g.out);
    CHECK(run({"generate", "--sampler", "random", "--n", "3", "--d", "1", "--seed", "8"}).out != g.out);
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"optimal", "--sampler", "pds", "--n", "10", "--d", "2", "--bogus"}).code == 2);
    CHECK(run({"optimal", "--sampler", "pds", "--n", "-3", "--d", "2"}).code == 2);
    CHECK(run({"optimal", "--sampler", "sobol", "--n", "10", "--d", "2"}).code == 2);
    CHECK(run({"bound", "--sampler", "random", "--case", "worst", "--cl", "1", "--rho0", "1", "--n", "100", "--d", "2"}).code == 2);
    CHECK(run({"bound", "--sampler", "pds", "--case", "worst", "--method", "closed_form", "--cl", "1", "--clprime", "1",
               "--rho0", "1", "--n", "100", "--d", "2"}).code == 2);
    CHECK(run({"psd", "--input", "/nonexistent/points.csv", "--n", "1"}).code == 2);
    CHECK(run({"generate", "--sampler", "pds", "--rmin", "0.1", "--d", "5"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("sweep-n") != std::string::npos);
    const auto bad = run({"frobnicate"});
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli file round trip and output flag") {
    const auto points = temp_file("points.csv");
    const auto out = temp_file("psd.csv");
    CHECK(run({"generate", "--sampler", "pds", "--rmin", "0.1", "--d", "2", "--seed", "5", "--output", points.string()}).code == 0);
    std::ifstream in(points);
    const auto ps = io::read_points_csv(in);
    CHECK(ps.size() > 20);
    const auto psd = run({"psd", "--input", points.string(), "--kmax", "8", "--output", out.string()});
    CHECK(psd.code == 0);
    CHECK(psd.out.empty());
    std::ifstream spec_in(out);
    const auto spec = io::read_spectrum_csv(spec_in, static_cast<double>(ps.size()), 2);
    CHECK(spec.values == estimate_psd(ps, 8).values);

    const auto pcf = run({"pcf", "--input", points.string(), "--nodes", "20", "--bandwidth", "0.01"});
    CHECK(pcf.code == 0);
    CHECK(pcf.out.rfind("r,value\n", 0) == 0);
    std::filesystem::remove(points);
    std::filesystem::remove(out);
}

TEST_CASE("cli subcommands are deterministic") {
    const auto points = temp_file("det_points.csv");
    run({"generate", "--sampler", "random", "--n", "40", "--d", "2", "--seed", "11", "--output", points.string()});
    const std::vector<std::vector<std::string>> commands = {
        {"generate", "--sampler", "pds", "--rmin", "0.08", "--d", "2", "--seed", "3"},
        {"psd", "--input", points.string(), "--kmax", "5"},
        {"pcf", "--input", points.string(), "--nodes", "16", "--format", "json"},
        {"transform", "--direction", "psd-to-pcf", "--profile", "step_psd", "--rhoz", "1", "--n", "10", "--d", "2", "--nodes", "8"},
        {"transform", "--direction", "pcf-to-psd", "--profile", "step_pcf", "--rmin", "0.1", "--n", "10", "--d", "2", "--nodes", "8"},
        {"realizable", "--profile", "step_psd", "--rhoz", "2", "--n", "10", "--d", "2"},
        {"optimal", "--sampler", "pds", "--rmin", "0.05", "--d", "3", "--format", "json"},
        {"bound", "--sampler", "pds", "--case", "worst", "--cl", "1", "--clprime", "2", "--rho0", "3", "--n", "500", "--d", "2"},
        {"sweep-n", "--sampler", "bluenoise", "--case", "worst", "--cl", "1e8", "--clprime", "1.1", "--rho0", "1e-4", "--d", "2",
         "--nmin", "100", "--nmax", "1e5", "--points", "6"},
        {"sweep-d", "--metric", "n_min_for_rho_z", "--dmin", "1", "--dmax", "60", "--format", "json"},
        {"validate", "--sampler", "random", "--n", "20", "--d", "2", "--loss", "fourier", "--realizations", "200", "--seed", "4"},
    };
    for (const auto& cmd : commands) {
        const auto a = run(cmd);
        const auto b = run(cmd);
        INFO(cmd.front() << ": " << a.err);
        CHECK(a.code == 0);
        CHECK_FALSE(a.out.empty());
        CHECK(a.out == b.out);
    }
    std::filesystem::remove(points);
}

TEST_CASE("cli sweep output") {
    const auto r = run({"sweep-n", "--sampler", "random", "--case", "best", "--cl", "1", "--rho0", "1", "--d", "2",
                        "--nlist", "10,100,1000,10000,100000"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("N,value\n", 0) == 0);
    const auto j = nlohmann::json::parse(run({"sweep-n", "--sampler", "random", "--case", "best", "--cl", "1", "--rho0", "1",
                                              "--d", "2", "--nlist", "10,100,1000,10000,100000", "--format", "json"}).out);
    CHECK(j.at("slope").get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(j.contains("residual"));
    CHECK(j.contains("regime_notes"));
}
