#pragma once

#include "sampspec/bounds.hpp"
#include "sampspec/experiments.hpp"
#include "sampspec/pointset.hpp"
#include "sampspec/profiles.hpp"
#include "sampspec/spectral_estimation.hpp"
#include "sampspec/transforms.hpp"

#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>

namespace sampspec::io {

// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

// One point per row, d columns, no header.
void write_points_csv(std::ostream& os, const PointSet& ps);
PointSet read_points_csv(std::istream& is);

// Header "<axis>,value", then one row per node.
void write_series_csv(std::ostream& os, const std::string& axis, std::span<const double> x,
                      std::span<const double> y);
void write_csv(std::ostream& os, const RadialSpectrum& spec);
void write_csv(std::ostream& os, const PairCorrelation& pcf);
void write_csv(std::ostream& os, const SweepResult& sweep);
// N and d are not part of the file and must be supplied.
RadialSpectrum read_spectrum_csv(std::istream& is, double n, int dim);
PairCorrelation read_pcf_csv(std::istream& is, double n, int dim);

nlohmann::json to_json(const SpectralProfile& profile);
SpectralProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RealizabilityReport& rep);
nlohmann::json to_json(const SweepResult& sweep);
nlohmann::json to_json(const IdentityReport& rep);
nlohmann::json to_json(const RadialSpectrum& spec);
nlohmann::json to_json(const PairCorrelation& pcf);
nlohmann::json bound_record(Sampler sampler, Case c, double n, int dim,
                            const LossSpectrumModel& loss, const BoundResult& result);

}  // namespace sampspec::io
