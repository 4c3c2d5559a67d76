#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supadd/parallel.hpp"

namespace supadd {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { q1, witness, region, fig, randscan };
enum class ChannelKind { platypus, md, erasure, ad, depolarizing };
enum class PairKind { ns_erasure, ns_ad, ns_depolarizing, md_erasure };
enum class OutputFormat { csv, json };

struct GridSpec {
    double start = 0.0;
    double stop = 0.5;
    std::size_t count = 26;
};

struct RunConfig {
    Command command = Command::q1;

    ChannelKind channel = ChannelKind::platypus;
    PairKind pair = PairKind::ns_erasure;
    double s = 0.5;
    double x = 0.5;       // generic noise parameter (lambda / gamma / p)
    std::size_t d = 3;    // dimension parameter where applicable
    bool capacity_mode = false;

    GridSpec grid;
    bool grid_overridden = false;  // figure commands pick their own defaults otherwise
    std::vector<std::size_t> d_list{3, 10, 50, 200, 1024};  // desk-scale anchors

    int fig_id = 3;

    std::size_t count = 20;          // randscan batch size
    std::uint64_t seed = 1;
    bool scan_intervals = true;

    std::string out_path;            // empty: derived default or stdout only
    OutputFormat format = OutputFormat::csv;
    Exec exec = Exec::parallel;
};

/// Runs one CLI command. Returns the process exit status (0 ok, 2 config
/// error, 3 convergence failure) and prints results/diagnostics to the
/// streams the command defines.
int run_cli(const RunConfig& config);

std::string provenance_json(const RunConfig& config);

}  // namespace supadd
