#include "riesz/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riesz/rng.hpp"

namespace riesz {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write file: " + path);
    }
    out << content;
}

namespace {

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

double finite_number(const ordered_json& j, const std::string& field) {
    if (!j.is_number()) {
        throw ParseError("field '" + field + "' must be a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ParseError("field '" + field + "' must be finite");
    }
    return v;
}

std::vector<double> number_list(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) {
        throw ParseError("field '" + field + "' must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        out.push_back(finite_number(v, field));
    }
    return out;
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("atoms") || !j.contains("weights")) {
        throw ParseError("instance must be an object with 'atoms' and 'weights'");
    }
    if (!j["atoms"].is_array()) {
        throw ParseError("field 'atoms' must be an array of names");
    }
    std::vector<std::string> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_string()) {
            throw ParseError("atom names must be strings");
        }
        atoms.push_back(a.get<std::string>());
    }
    std::vector<double> weights = number_list(j["weights"], "weights");

    Instance inst;
    inst.space = make_space(std::move(atoms), std::move(weights));

    if (j.contains("partitions")) {
        if (!j["partitions"].is_object()) {
            throw ParseError("field 'partitions' must be an object");
        }
        for (const auto& [name, blocks_json] : j["partitions"].items()) {
            if (!blocks_json.is_array()) {
                throw ParseError("partition '" + name + "' must be an array of blocks");
            }
            std::vector<std::vector<std::size_t>> blocks;
            for (const auto& block_json : blocks_json) {
                if (!block_json.is_array()) {
                    throw ParseError("partition '" + name + "' blocks must be arrays");
                }
                std::vector<std::size_t> block;
                for (const auto& idx : block_json) {
                    if (!idx.is_number_integer() || idx.get<long long>() < 0) {
                        throw ParseError("partition '" + name +
                                         "' atom indices must be nonnegative integers");
                    }
                    block.push_back(std::size_t(idx.get<long long>()));
                }
                blocks.push_back(std::move(block));
            }
            try {
                inst.partitions.emplace(name, Partition(inst.space->size(), std::move(blocks)));
            } catch (const InvalidPartition& e) {
                throw ValidationError("partition '" + name + "': " + e.what());
            }
        }
    }

    if (j.contains("vectors")) {
        if (!j["vectors"].is_object()) {
            throw ParseError("field 'vectors' must be an object");
        }
        for (const auto& [name, values_json] : j["vectors"].items()) {
            std::vector<double> values = number_list(values_json, "vectors." + name);
            if (values.size() != inst.space->size()) {
                throw ValidationError("vector '" + name + "' length does not match atom count");
            }
            inst.vectors.emplace(name, LatticeVector(inst.space, std::move(values)));
        }
    }
    return inst;
}

Instance parse_instance(const std::string& path) {
    return parse_instance_text(read_file(path));
}

std::string serialize_instance(const Instance& inst) {
    ordered_json j;
    j["atoms"] = inst.space->atoms();
    j["weights"] = inst.space->weights();
    j["partitions"] = ordered_json::object();
    for (const auto& [name, part] : inst.partitions) {
        ordered_json blocks = ordered_json::array();
        for (const auto& block : part.blocks()) {
            blocks.push_back(block);
        }
        j["partitions"][name] = std::move(blocks);
    }
    j["vectors"] = ordered_json::object();
    for (const auto& [name, vec] : inst.vectors) {
        j["vectors"][name] = vec.values();
    }
    return j.dump(2) + "\n";
}

void write_instance(const Instance& inst, const std::string& path) {
    write_file(path, serialize_instance(inst));
}

Instance generate_random_instance(std::uint64_t seed, int atoms, int partition_count) {
    if (atoms < 1 || atoms > 64) {
        throw LimitExceeded("atom count must lie in [1, 64]");
    }
    if (partition_count < 0) {
        throw LimitExceeded("partition count must be nonnegative");
    }
    Rng rng(seed);
    const std::size_t n = std::size_t(atoms);
    std::vector<double> weights(n);
    for (double& w : weights) {
        w = rng.uniform(0.2, 1.2);
    }
    Instance inst;
    inst.space = make_space(n, std::move(weights));
    inst.partitions.emplace("T", Partition::trivial(n));

    for (int p = 0; p < partition_count; ++p) {
        int blocks = rng.uniform_int(1, std::min(atoms, 6));
        std::vector<int> labels(n);
        for (int& l : labels) {
            l = rng.uniform_int(0, blocks - 1);
        }
        inst.partitions.emplace("P" + std::to_string(p + 1), Partition::from_labels(labels));
    }

    for (const char* name : {"f", "g"}) {
        std::vector<double> values(n);
        for (double& v : values) {
            v = rng.uniform(-2.0, 2.0);
        }
        inst.vectors.emplace(name, LatticeVector(inst.space, std::move(values)));
    }
    return inst;
}

Ar1Scenario parse_ar1_scenario_text(const std::string& text) {
    ordered_json j = parse_json(text);
    if (!j.is_object()) {
        throw ParseError("scenario must be a JSON object");
    }
    Ar1Scenario s;
    if (j.contains("theta")) {
        s.theta = number_list(j["theta"], "theta");
        if (s.theta.empty()) {
            throw ValidationError("scenario theta must not be empty");
        }
    }
    if (j.contains("steps")) {
        if (!j["steps"].is_number_integer() || j["steps"].get<long long>() < 1) {
            throw ValidationError("scenario steps must be a positive integer");
        }
        s.steps = int(j["steps"].get<long long>());
    }
    if (j.contains("noise_seed")) {
        if (!j["noise_seed"].is_number_integer()) {
            throw ValidationError("scenario noise_seed must be an integer");
        }
        s.noise_seed = j["noise_seed"].get<std::uint64_t>();
    }
    if (j.contains("noise_scale")) {
        s.noise_scale = finite_number(j["noise_scale"], "noise_scale");
        if (s.noise_scale <= 0.0) {
            throw ValidationError("scenario noise_scale must be positive");
        }
    }
    return s;
}

namespace {

ordered_json lp_to_json(Lp p) {
    if (p == Lp::inf) {
        return "inf";
    }
    return p == Lp::one ? 1 : 2;
}

Lp lp_from_json(const ordered_json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") {
        return Lp::inf;
    }
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v == 1) {
            return Lp::one;
        }
        if (v == 2) {
            return Lp::two;
        }
    }
    throw ParseError("field 'p' must be 1, 2 or \"inf\"");
}

ordered_json vectors_to_json(const std::vector<LatticeVector>& vs) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : vs) {
        arr.push_back(v.values());
    }
    return arr;
}

std::vector<LatticeVector> vectors_from_json(const ordered_json& j, const SpacePtr& space,
                                             const std::string& field) {
    if (!j.is_array()) {
        throw ParseError("field '" + field + "' must be an array of arrays");
    }
    std::vector<LatticeVector> out;
    out.reserve(j.size());
    for (const auto& inner : j) {
        std::vector<double> values = number_list(inner, field);
        if (values.size() != space->size()) {
            throw ValidationError("entry of '" + field + "' does not match the atom count");
        }
        out.emplace_back(space, std::move(values));
    }
    return out;
}

int start_from_json(const ordered_json& j) {
    if (!j.contains("start")) {
        return 0;
    }
    if (!j["start"].is_number_integer()) {
        throw ParseError("field 'start' must be an integer");
    }
    return int(j["start"].get<long long>());
}

}  // namespace

std::string serialize_ned_certificate(const NedCertificate& cert) {
    ordered_json j;
    j["p"] = lp_to_json(cert.p);
    j["start"] = cert.start;
    j["d"] = vectors_to_json(cert.d);
    j["xi"] = vectors_to_json(cert.xi);
    return j.dump(2) + "\n";
}

NedCertificate parse_ned_certificate_text(const std::string& text, const SpacePtr& space) {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("p") || !j.contains("d") || !j.contains("xi")) {
        throw ParseError("certificate must carry 'p', 'd' and 'xi'");
    }
    NedCertificate cert;
    cert.p = lp_from_json(j["p"]);
    cert.start = start_from_json(j);
    cert.d = vectors_from_json(j["d"], space, "d");
    cert.xi = vectors_from_json(j["xi"], space, "xi");
    return cert;
}

std::string serialize_mixingale_certificate(const MixingaleCertificate& cert) {
    ordered_json j;
    j["p"] = lp_to_json(cert.p);
    j["start"] = cert.start;
    j["c"] = vectors_to_json(cert.c);
    j["phi"] = vectors_to_json(cert.phi);
    return j.dump(2) + "\n";
}

MixingaleCertificate parse_mixingale_certificate_text(const std::string& text,
                                                      const SpacePtr& space) {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("p") || !j.contains("c") || !j.contains("phi")) {
        throw ParseError("certificate must carry 'p', 'c' and 'phi'");
    }
    MixingaleCertificate cert;
    cert.p = lp_from_json(j["p"]);
    cert.start = start_from_json(j);
    cert.c = vectors_from_json(j["c"], space, "c");
    cert.phi = vectors_from_json(j["phi"], space, "phi");
    return cert;
}

Ar1Scenario parse_ar1_scenario(const std::string& path) {
    return parse_ar1_scenario_text(read_file(path));
}

}  // namespace riesz
