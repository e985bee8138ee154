#include "qleak/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qleak {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path.string() + ": " +
                                 e.what());
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

HermitianOperator load_hamiltonian(const std::filesystem::path& path) {
    const json j = read_json(path);
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw std::runtime_error(path.string() +
                                 ": missing or non-integer field 'dim'");
    }
    const auto n = j["dim"].get<Eigen::Index>();
    if (!j.contains("real") || !j["real"].is_array()) {
        throw std::runtime_error(path.string() + ": missing field 'real'");
    }
    auto read_matrix = [&](const char* field) {
        const json& rows = j[field];
        if (static_cast<Eigen::Index>(rows.size()) != n) {
            throw std::runtime_error(path.string() + ": field '" +
                                     std::string(field) +
                                     "' has wrong row count");
        }
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() ||
                static_cast<Eigen::Index>(row.size()) != n) {
                throw std::runtime_error(path.string() + ": field '" +
                                         std::string(field) +
                                         "' has wrong column count");
            }
            for (Eigen::Index c = 0; c < n; ++c) {
                m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
            }
        }
        return m;
    };

    const Eigen::MatrixXd re = read_matrix("real");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, n);
    if (j.contains("imag")) im = read_matrix("imag");
    return HermitianOperator(re.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 1.0) *
                                 im.cast<std::complex<double>>());
}

void save_hamiltonian(const HermitianOperator& H,
                      const std::filesystem::path& path) {
    const Eigen::Index n = H.dim();
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < n; ++r) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index c = 0; c < n; ++c) {
            rrow.push_back(H.matrix()(r, c).real());
            irow.push_back(H.matrix()(r, c).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    write_text(path,
               json{{"dim", n}, {"real", re}, {"imag", im}}.dump(2) + "\n");
}

void save_trace_csv(const RabiTrace& trace,
                    const std::filesystem::path& path) {
    std::ostringstream os;
    os << "t,p,ne,seed\n";
    for (Eigen::Index k = 0; k < trace.times.size(); ++k) {
        os << format_double(trace.times(k)) << ','
           << format_double(trace.populations(k)) << ','
           << trace.ensemble_size << ',' << trace.seed << '\n';
    }
    write_text(path, os.str());
}

RabiTrace load_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,p", 0) != 0) {
        throw std::runtime_error(path.string() +
                                 ": missing 't,p,ne,seed' header");
    }
    std::vector<double> times, pops;
    RabiTrace tr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        double t = 0.0, p = 0.0;
        long long ne = 0;
        unsigned long long seed = 0;
        try {
            std::getline(ls, field, ',');
            t = std::stod(field);
            std::getline(ls, field, ',');
            p = std::stod(field);
            std::getline(ls, field, ',');
            ne = std::stoll(field);
            std::getline(ls, field, ',');
            seed = std::stoull(field);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ": malformed row '" +
                                     line + "'");
        }
        times.push_back(t);
        pops.push_back(p);
        tr.ensemble_size = ne;
        tr.seed = seed;
    }
    if (times.size() < 2) {
        throw std::runtime_error(path.string() + ": fewer than 2 samples");
    }
    tr.times = Eigen::Map<Eigen::VectorXd>(times.data(),
                                           static_cast<Eigen::Index>(times.size()));
    tr.populations = Eigen::Map<Eigen::VectorXd>(
        pops.data(), static_cast<Eigen::Index>(pops.size()));
    return tr;
}

void save_trace_json(const RabiTrace& trace,
                     const std::filesystem::path& path) {
    json j;
    j["times"] = std::vector<double>(trace.times.begin(), trace.times.end());
    j["populations"] = std::vector<double>(trace.populations.begin(),
                                           trace.populations.end());
    j["ensemble_size"] = trace.ensemble_size;
    j["seed"] = trace.seed;
    write_text(path, j.dump(2) + "\n");
}

void save_spectrum(const Spectrum& spec, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "omega,amp\n";
    for (Eigen::Index j = 0; j < spec.freqs.size(); ++j) {
        os << format_double(spec.freqs(j)) << ','
           << format_double(spec.amps(j)) << '\n';
    }
    write_text(path, os.str());

    json sidecar{{"h0", spec.primary_dc},
                 {"h01", spec.primary_amp},
                 {"omega_p", spec.primary_omega},
                 {"nu_mean", spec.noise_mean},
                 {"dh", spec.noise_sd},
                 {"domega", spec.resolution},
                 {"guard", spec.guard},
                 {"primary_at_edge", spec.primary_at_edge},
                 {"frequency_unit", "angular"}};
    write_text(path.string() + ".json", sidecar.dump(2) + "\n");
}

void save_estimate(const LeakageEstimate& est,
                   const std::filesystem::path& path) {
    json j{{"eps_low", est.eps_low},
           {"d_eps_low", est.d_eps_low},
           {"h0", est.h0},
           {"h01", est.h01},
           {"dh", est.dh},
           {"eps_low_clamped", est.eps_low_clamped},
           {"eps_high_defined", est.eps_high_defined}};
    if (est.eps_high_defined) {
        j["eps_high"] = est.eps_high;
        j["d_eps_high"] = est.d_eps_high;
    } else {
        j["eps_high"] = nullptr;
        j["d_eps_high"] = nullptr;
    }
    write_text(path, j.dump(2) + "\n");
}

void save_manifest(const RunManifest& manifest,
                   const std::filesystem::path& path) {
    json j{{"command", manifest.command},
           {"inputs", manifest.inputs},
           {"seed", manifest.seed},
           {"plan", manifest.plan_summary},
           {"tool_version", kToolVersion},
           {"outputs", manifest.outputs},
           {"duration_seconds", manifest.duration_seconds}};
    write_text(path, j.dump(2) + "\n");
}

void save_trial_records(const std::vector<TrialRecord>& trials,
                        const std::filesystem::path& path) {
    std::ostringstream os;
    os << "seed,dim,eps_analytic,eps_low,eps_high,d_eps_low,d_eps_high,"
          "distance,delta_d,flags\n";
    for (const auto& t : trials) {
        std::string flags;
        if (t.eps_low_clamped) flags += "eps_low_clamped;";
        if (!t.eps_high_defined) flags += "eps_high_undefined;";
        os << t.seed << ',' << t.dim << ',' << format_double(t.eps_analytic)
           << ',' << format_double(t.eps_low) << ','
           << format_double(t.eps_high) << ',' << format_double(t.d_eps_low)
           << ',' << format_double(t.d_eps_high) << ','
           << format_double(t.distance) << ',' << format_double(t.delta_d)
           << ',' << flags << '\n';
    }
    write_text(path, os.str());
}

std::vector<std::uint64_t> load_trial_seeds(
    const std::filesystem::path& path) {
    std::vector<std::uint64_t> seeds;
    std::ifstream in(path);
    if (!in) return seeds;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        try {
            seeds.push_back(std::stoull(line.substr(0, comma)));
        } catch (const std::exception&) {
            // Ignore malformed rows; resume logic treats them as absent.
        }
    }
    return seeds;
}

}  // namespace qleak
