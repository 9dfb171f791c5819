#pragma once

#include <string>
#include <vector>

#include "deconv/analysis.hpp"
#include "deconv/error_models.hpp"
#include "deconv/estimates.hpp"

#include <nlohmann/json_fwd.hpp>

namespace deconv::io {

/// 17 significant digits, '.' decimal point, locale-independent.
std::string format_g17(double v);

void write_curve_csv(const CurveEstimate& est, const std::string& path);
void write_curve_sidecar(const CurveEstimate& est, const std::string& path);
CurveEstimate read_curve_csv(const std::string& path);

void write_sample_csv(const ContaminatedSample& sample, const std::string& path);
ContaminatedSample read_sample_csv(const std::string& path);

void write_replicated_csv(const ReplicatedSample& data, const std::string& path);
ReplicatedSample read_replicated_csv(const std::string& path);

void write_rate_csv(const RateResult& result, const std::string& path);
void write_phiu_csv(const std::vector<double>& t_grid, const std::vector<double>& values,
                    const std::string& path);

void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace deconv::io
