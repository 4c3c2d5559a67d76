#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "supadd/cli.hpp"

namespace {

supadd::GridSpec parse_grid(const std::string& text) {
    supadd::GridSpec g;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw CLI::ValidationError("--grid expects start:stop:count");
    g.start = std::stod(text.substr(0, first));
    g.stop = std::stod(text.substr(first + 1, second - first - 1));
    g.count = std::stoul(text.substr(second + 1));
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace supadd;

    if (const char* env = std::getenv("SUPADD_THREADS")) {
        set_worker_count(std::atoi(env));
    }

    CLI::App app{"Channel coherent-information superadditivity toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    std::string grid_text;
    std::string pair_text = "ns-erasure";
    std::string channel_text = "platypus";
    std::string mode_text = "ci";
    bool serial = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file path");
        sub->add_option("--seed", cfg.seed, "deterministic seed");
        sub->add_flag("--serial", serial, "disable the parallel sweep paths");
    };

    auto* q1 = app.add_subcommand("q1", "channel coherent information");
    q1->add_option("--channel", channel_text, "platypus|md|erasure|ad|depolarizing")->required();
    q1->add_option("--s", cfg.s, "platypus parameter in [0, 1/2]");
    q1->add_option("--d", cfg.d, "dimension parameter");
    q1->add_option("--lambda", cfg.x, "erasure probability");
    q1->add_option("--gamma", cfg.x, "damping probability");
    q1->add_option("--p", cfg.x, "depolarizing probability");
    add_common(q1);

    auto* witness = app.add_subcommand("witness", "superadditivity witness report");
    witness->add_option("--pair", pair_text, "ns-erasure|ns-ad|ns-depolarizing|md-erasure")->required();
    witness->add_option("--s", cfg.s, "platypus parameter");
    witness->add_option("--x", cfg.x, "partner noise parameter");
    witness->add_option("--lambda", cfg.x, "alias for --x");
    witness->add_option("--gamma", cfg.x, "alias for --x");
    witness->add_option("--p", cfg.x, "alias for --x");
    witness->add_option("--d", cfg.d, "erasure dimension (md pair)");
    witness->add_option("--mode", mode_text, "ci|capacity (md pair)");
    add_common(witness);

    auto* region = app.add_subcommand("region", "parameter-region boundary sweep");
    region->add_option("--pair", pair_text, "ns-erasure|ns-ad|ns-depolarizing|md-erasure")->required();
    region->add_option("--grid", grid_text, "s grid as start:stop:count");
    region->add_option("--dlist", cfg.d_list, "dimensions for the md sweep");
    add_common(region);

    auto* fig = app.add_subcommand("fig", "regenerate figure data");
    fig->add_option("--id", cfg.fig_id, "figure id in 1..7")->required();
    fig->add_option("--grid", grid_text, "override sweep grid as start:stop:count");
    fig->add_option("--dlist", cfg.d_list, "dimensions for figure 2");
    add_common(fig);

    auto* randscan = app.add_subcommand("randscan", "random-channel amplification scan");
    randscan->add_option("--count", cfg.count, "number of sampled channels");
    randscan->add_flag("!--no-intervals", cfg.scan_intervals, "skip interval bisection");
    add_common(randscan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*q1) {
            cfg.command = Command::q1;
            if (channel_text == "platypus") cfg.channel = ChannelKind::platypus;
            else if (channel_text == "md") cfg.channel = ChannelKind::md;
            else if (channel_text == "erasure") cfg.channel = ChannelKind::erasure;
            else if (channel_text == "ad") cfg.channel = ChannelKind::ad;
            else if (channel_text == "depolarizing") cfg.channel = ChannelKind::depolarizing;
            else throw CLI::ValidationError("unknown channel: " + channel_text);
        } else {
            if (pair_text == "ns-erasure") cfg.pair = PairKind::ns_erasure;
            else if (pair_text == "ns-ad") cfg.pair = PairKind::ns_ad;
            else if (pair_text == "ns-depolarizing") cfg.pair = PairKind::ns_depolarizing;
            else if (pair_text == "md-erasure") cfg.pair = PairKind::md_erasure;
            else if (*witness || *region) throw CLI::ValidationError("unknown pair: " + pair_text);
        }
        if (*witness) {
            cfg.command = Command::witness;
            cfg.capacity_mode = (mode_text == "capacity");
        }
        if (*region) cfg.command = Command::region;
        if (*fig) cfg.command = Command::fig;
        if (*randscan) cfg.command = Command::randscan;
        if (!grid_text.empty()) {
            cfg.grid = parse_grid(grid_text);
            cfg.grid_overridden = true;
        }
        if (serial) cfg.exec = Exec::serial;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    return run_cli(cfg);
}
