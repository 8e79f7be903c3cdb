#ifndef TORUS_REPORT_HPP
#define TORUS_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "torus/types.hpp"
#include "torus/verify.hpp"

namespace torus {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Machine-readable run reports. Key order is fixed and nothing time- or
// host-dependent is recorded, so identical config + seed reproduces the
// payload byte for byte.
// ---------------------------------------------------------------------------

inline constexpr int report_schema_version = 1;

struct RunConfig {
    Rectangle region{-1.0, 1.0, 0.35, 3.0};
    int nx = 400;
    int ny = 400;
    std::map<std::string, double> tolerances;   // populated with the defaults
    int series_depth = 64;
    int thread_count = 0;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    std::string format = "json";

    RunConfig();

    double tol(const std::string& name) const;
    void set_tol(const std::string& name, double value);

    KernelOptions kernel_options() const;
    SuiteConfig suite_config() const;
};

struct Report {
    std::string command;
    RunConfig config;
    json records;
    json summary;
    bool pass = false;
};

json config_json(const RunConfig& cfg);
json suite_json(const SuiteResult& s);
json report_json(const Report& r);

/// Serialize with a trailing newline; the byte-stable payload of a run.
std::string report_payload(const Report& r);

// Complex values on the CLI travel as "a+bi" strings; infinity as "inf".
std::string format_complex(cx z);
ExtendedScalar parse_complex(const std::string& text);

} // namespace torus

#endif
