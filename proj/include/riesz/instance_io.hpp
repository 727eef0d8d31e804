#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "riesz/lattice.hpp"
#include "riesz/process.hpp"

namespace riesz {

/// A sample space plus named partitions and vectors, as read from an
/// instance file.
struct Instance {
    SpacePtr space;
    std::map<std::string, Partition> partitions;
    std::map<std::string, LatticeVector> vectors;
};

/// Reads and validates an instance file. JSON schema:
/// { "atoms": [names], "weights": [reals],
///   "partitions": { name: [[atom indices]] }, "vectors": { name: [reals] } }
/// Atom indices are 0-based; non-finite numbers are rejected.
Instance parse_instance(const std::string& path);
Instance parse_instance_text(const std::string& text);

std::string serialize_instance(const Instance& inst);
void write_instance(const Instance& inst, const std::string& path);

/// Deterministic random instance: weights bounded away from zero, a mix of
/// refining and crossing partitions, and a couple of sample vectors. The
/// same seed always produces the same instance.
Instance generate_random_instance(std::uint64_t seed, int atoms, int partition_count);

/// Parameters of a reproducible AR(1) run. theta holds one value per
/// conditioning block of the demo space.
struct Ar1Scenario {
    std::vector<double> theta{0.5};
    int steps = 64;
    std::uint64_t noise_seed = 1;
    double noise_scale = 1.0;
};

/// Reads a scenario file: { "theta": [reals], "steps": n,
/// "noise_seed": integer, "noise_scale": real }.
Ar1Scenario parse_ar1_scenario(const std::string& path);
Ar1Scenario parse_ar1_scenario_text(const std::string& text);

/// Certificate files: { "p": 1|2|"inf", "start": n0, "d": [[reals]],
/// "xi": [[reals]] }, one inner array per index, and the analogous
/// { ..., "c": ..., "phi": ... } for mixingale certificates.
std::string serialize_ned_certificate(const NedCertificate& cert);
NedCertificate parse_ned_certificate_text(const std::string& text, const SpacePtr& space);
std::string serialize_mixingale_certificate(const MixingaleCertificate& cert);
MixingaleCertificate parse_mixingale_certificate_text(const std::string& text,
                                                      const SpacePtr& space);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace riesz
