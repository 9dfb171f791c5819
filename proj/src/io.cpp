#include "deconv/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace deconv::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: exactly '\n' row endings
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out.imbue(std::locale::classic());
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    in.imbue(std::locale::classic());
    return in;
}

std::vector<double> parse_row(const std::string& line, const std::string& path) {
    std::vector<double> out;
    std::stringstream ss(line);
    ss.imbue(std::locale::classic());
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (...) {
            throw ConfigError("bad numeric cell '" + cell + "' in " + path);
        }
    }
    return out;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_curve_csv(const CurveEstimate& est, const std::string& path) {
    est.validate();
    auto out = open_out(path);
    const bool flagged = !est.flags.empty();
    out << (flagged ? "x,value,ok\n" : "x,value\n");
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        out << format_g17(est.grid[i]) << ',' << format_g17(est.values[i]);
        if (flagged) out << ',' << (est.flags[i] ? 0 : 1);
        out << '\n';
    }
}

void write_curve_sidecar(const CurveEstimate& est, const std::string& path) {
    nlohmann::json j{{"estimator", est.meta.estimator},
                     {"kernel", est.meta.kernel},
                     {"error", est.meta.error},
                     {"h", est.meta.h},
                     {"n", est.meta.n},
                     {"seed", est.meta.seed},
                     {"points", est.grid.size()},
                     {"flagged_points",
                      static_cast<std::size_t>(std::count(est.flags.begin(), est.flags.end(), 1))}};
    if (est.meta.degree >= 0) {
        j["degree"] = est.meta.degree;
        j["ridge"] = est.meta.ridge;
    }
    write_json_file(j, path);
}

CurveEstimate read_curve_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty curve file " + path);
    CurveEstimate est;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto row = parse_row(line, path);
        if (row.size() < 2) throw ConfigError("curve row needs x,value in " + path);
        est.grid.push_back(row[0]);
        est.values.push_back(row[1]);
    }
    est.validate();
    return est;
}

void write_sample_csv(const ContaminatedSample& sample, const std::string& path) {
    sample.validate();
    auto out = open_out(path);
    out << "w";
    if (sample.has_responses()) out << ",y";
    if (!sample.x_true.empty()) out << ",x_true";
    out << '\n';
    for (std::size_t i = 0; i < sample.size(); ++i) {
        out << format_g17(sample.w[i]);
        if (sample.has_responses()) out << ',' << format_g17(sample.y[i]);
        if (!sample.x_true.empty()) out << ',' << format_g17(sample.x_true[i]);
        out << '\n';
    }
}

ContaminatedSample read_sample_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty sample file " + path);
    // header decides which columns are present
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
    }
    int wi = -1, yi = -1, xi = -1;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c] == "w") wi = static_cast<int>(c);
        else if (cols[c] == "y") yi = static_cast<int>(c);
        else if (cols[c] == "x_true") xi = static_cast<int>(c);
    }
    if (wi < 0) throw ConfigError("sample file " + path + " has no 'w' column");
    ContaminatedSample sample;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto row = parse_row(line, path);
        if (row.size() != cols.size()) throw ConfigError("ragged row in " + path);
        sample.w.push_back(row[static_cast<std::size_t>(wi)]);
        if (yi >= 0) sample.y.push_back(row[static_cast<std::size_t>(yi)]);
        if (xi >= 0) sample.x_true.push_back(row[static_cast<std::size_t>(xi)]);
    }
    sample.validate();
    return sample;
}

void write_replicated_csv(const ReplicatedSample& data, const std::string& path) {
    const std::size_t m = data.arity();
    auto out = open_out(path);
    for (std::size_t j = 0; j < m; ++j) out << (j ? "," : "") << "w" << j + 1;
    out << '\n';
    for (const auto& row : data.rows) {
        for (std::size_t j = 0; j < m; ++j) out << (j ? "," : "") << format_g17(row[j]);
        out << '\n';
    }
}

ReplicatedSample read_replicated_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty replicate file " + path);
    ReplicatedSample data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        data.rows.push_back(parse_row(line, path));
    }
    return data;
}

void write_rate_csv(const RateResult& result, const std::string& path) {
    auto out = open_out(path);
    out << "n,median_ise,q25,q75\n";
    for (const auto& p : result.table)
        out << p.n << ',' << format_g17(p.median_ise) << ',' << format_g17(p.q25) << ','
            << format_g17(p.q75) << '\n';
}

void write_phiu_csv(const std::vector<double>& t_grid, const std::vector<double>& values,
                    const std::string& path) {
    if (t_grid.size() != values.size()) throw GridMismatch("phiu table size mismatch");
    auto out = open_out(path);
    out << "t,abs_phi_hat\n";
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        out << format_g17(t_grid[i]) << ',' << format_g17(values[i]) << '\n';
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace deconv::io
