#include "sampspec/io.hpp"

#include "sampspec/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace sampspec::io {

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        if (first == std::string::npos) {
            throw DomainError("CSV line " + std::to_string(line_no) + ": empty field");
        }
        const char* begin = cell.data() + first;
        const char* end = cell.data() + last + 1;
        double v = 0.0;
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc() || res.ptr != end) {
            throw DomainError("CSV line " + std::to_string(line_no) + ": cannot parse '" +
                              std::string(begin, end) + "'");
        }
        out.push_back(v);
    }
    return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

void read_series(std::istream& is, std::vector<double>& x, std::vector<double>& y) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        if (!header) {
            header = true;
            if (line.find("value") != std::string::npos) {
                continue;
            }
            throw DomainError("series CSV: missing '<axis>,value' header");
        }
        const auto row = parse_row(line, line_no);
        if (row.size() != 2) {
            throw DomainError("series CSV line " + std::to_string(line_no) + ": expected 2 columns");
        }
        x.push_back(row[0]);
        y.push_back(row[1]);
    }
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_points_csv(std::ostream& os, const PointSet& ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto p = ps.point(i);
        for (std::size_t a = 0; a < p.size(); ++a) {
            if (a > 0) {
                os << ',';
            }
            os << format_number(p[a]);
        }
        os << '\n';
    }
}

PointSet read_points_csv(std::istream& is) {
    std::vector<double> coords;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        const auto row = parse_row(line, line_no);
        if (dim == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw DomainError("points CSV line " + std::to_string(line_no) + ": expected " +
                              std::to_string(dim) + " columns");
        }
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (dim == 0) {
        throw DomainError("points CSV: no points");
    }
    return PointSet(static_cast<int>(dim), std::move(coords));
}

void write_series_csv(std::ostream& os, const std::string& axis, std::span<const double> x,
                      std::span<const double> y) {
    os << axis << ",value\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << format_number(x[i]) << ',' << format_number(y[i]) << '\n';
    }
}

void write_csv(std::ostream& os, const RadialSpectrum& spec) {
    write_series_csv(os, "rho", spec.rho_grid, spec.values);
}

void write_csv(std::ostream& os, const PairCorrelation& pcf) {
    write_series_csv(os, "r", pcf.r_grid, pcf.values);
}

void write_csv(std::ostream& os, const SweepResult& sweep) {
    write_series_csv(os, sweep.axis, sweep.axis_values, sweep.values);
}

RadialSpectrum read_spectrum_csv(std::istream& is, double n, int dim) {
    RadialSpectrum spec;
    read_series(is, spec.rho_grid, spec.values);
    spec.n_samples = n;
    spec.dim = dim;
    validate(spec);
    return spec;
}

PairCorrelation read_pcf_csv(std::istream& is, double n, int dim) {
    PairCorrelation pcf;
    read_series(is, pcf.r_grid, pcf.values);
    pcf.n_samples = n;
    pcf.dim = dim;
    pcf.intensity = n;
    validate(pcf);
    return pcf;
}

nlohmann::json to_json(const SpectralProfile& profile) {
    nlohmann::json j;
    j["kind"] = to_string(profile.kind);
    j["param"] = profile.kind == ProfileKind::Flat ? nlohmann::json(nullptr) : nlohmann::json(profile.param);
    j["N"] = profile.n_samples;
    j["d"] = profile.dim;
    return j;
}

SpectralProfile profile_from_json(const nlohmann::json& j) {
    try {
        const auto kind = profile_kind_from_string(j.at("kind").get<std::string>());
        const double n = j.at("N").get<double>();
        const int d = j.at("d").get<int>();
        switch (kind) {
            case ProfileKind::Flat: return SpectralProfile::flat(n, d);
            case ProfileKind::StepPSD: return SpectralProfile::step_psd(j.at("param").get<double>(), n, d);
            case ProfileKind::StepPCF: return SpectralProfile::step_pcf(j.at("param").get<double>(), n, d);
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("profile JSON: ") + e.what());
    }
    throw DomainError("profile JSON: unknown kind");
}

nlohmann::json to_json(const RealizabilityReport& rep) {
    return {
        {"psd_nonneg", rep.psd_nonneg},   {"pcf_nonneg", rep.pcf_nonneg},
        {"realizable", rep.realizable()}, {"min_psd", number_or_null(rep.min_psd)},
        {"min_pcf", number_or_null(rep.min_pcf)}, {"argmin_psd", rep.argmin_psd},
        {"argmin_pcf", rep.argmin_pcf},   {"tol", rep.tol},
    };
}

nlohmann::json to_json(const SweepResult& sweep) {
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json logs = nlohmann::json::array();
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        values.push_back(number_or_null(sweep.values[i]));
        logs.push_back(number_or_null(sweep.log_values[i]));
    }
    return {
        {"axis", sweep.axis},
        {"label", sweep.label},
        {"axis_values", sweep.axis_values},
        {"values", values},
        {"log_values", logs},
        {"regimes", sweep.regimes},
        {"slope", sweep.slope},
        {"intercept", sweep.intercept},
        {"residual", sweep.residual},
        {"degenerate", sweep.degenerate},
        {"interior_maxima", sweep.interior_maxima},
        {"interior_minima", sweep.interior_minima},
        {"regime_notes", sweep.notes},
    };
}

nlohmann::json to_json(const IdentityReport& rep) {
    return {
        {"empirical", rep.empirical},
        {"spectral", rep.spectral},
        {"relative_deviation", rep.relative_deviation},
        {"empirical_stderr", rep.data.gen_error_stderr},
        {"spectral_stderr", rep.data.spectral_stderr},
        {"bias", rep.data.bias},
        {"bias_stderr", rep.data.bias_stderr},
        {"mean_points", rep.data.mean_points},
        {"realizations", rep.data.realizations},
    };
}

nlohmann::json to_json(const RadialSpectrum& spec) {
    return {{"rho", spec.rho_grid}, {"value", spec.values}, {"N", spec.n_samples}, {"d", spec.dim}};
}

nlohmann::json to_json(const PairCorrelation& pcf) {
    return {{"r", pcf.r_grid}, {"value", pcf.values}, {"N", pcf.n_samples}, {"d", pcf.dim}};
}

nlohmann::json bound_record(Sampler sampler, Case c, double n, int dim,
                            const LossSpectrumModel& loss, const BoundResult& result) {
    nlohmann::json components = nlohmann::json::object();
    for (const auto& [name, value] : result.components) {
        components[name] = number_or_null(value);
    }
    return {
        {"sampler", to_string(sampler)},
        {"case", to_string(c)},
        {"N", n},
        {"d", dim},
        {"c_l", loss.c_l},
        {"c_l_prime", loss.kind == LossKind::WorstCase ? nlohmann::json(loss.c_l_prime) : nlohmann::json(nullptr)},
        {"rho_0", loss.rho_0},
        {"value", result.value},
        {"regime", to_string(result.regime)},
        {"clamped", result.clamped},
        {"components", components},
    };
}

}  // namespace sampspec::io
