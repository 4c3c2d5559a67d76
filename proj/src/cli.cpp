#include "supadd/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "supadd/randscan.hpp"

namespace supadd {

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::q1: return "q1";
        case Command::witness: return "witness";
        case Command::region: return "region";
        case Command::fig: return "fig";
        default: return "randscan";
    }
}

const char* channel_name(ChannelKind c) {
    switch (c) {
        case ChannelKind::platypus: return "platypus";
        case ChannelKind::md: return "md";
        case ChannelKind::erasure: return "erasure";
        case ChannelKind::ad: return "ad";
        default: return "depolarizing";
    }
}

const char* pair_name(PairKind p) {
    switch (p) {
        case PairKind::ns_erasure: return "ns-erasure";
        case PairKind::ns_ad: return "ns-ad";
        case PairKind::ns_depolarizing: return "ns-depolarizing";
        default: return "md-erasure";
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<double> grid_points(const GridSpec& g) {
    if (g.count == 0) throw InvalidParams("grid: count must be positive");
    std::vector<double> xs(g.count);
    if (g.count == 1) {
        xs[0] = g.start;
        return xs;
    }
    for (std::size_t i = 0; i < g.count; ++i)
        xs[i] = g.start + (g.stop - g.start) * static_cast<double>(i) / (g.count - 1);
    return xs;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidParams("cannot open output file: " + path);
    os << text;
}

struct PartnerFamily {
    IsometryChannel channel;
    double q1 = 0.0;
};

PartnerFamily make_partner(PairKind pair, double x) {
    switch (pair) {
        case PairKind::ns_erasure: return {erasure_channel(x, 2), q1_erasure(x, 2)};
        case PairKind::ns_ad: return {amplitude_damping(x), q1_amplitude_damping(x).value};
        case PairKind::ns_depolarizing: return {depolarizing(x), q1_depolarizing(x)};
        default: throw InvalidParams("make_partner: md pair has no qubit partner");
    }
}

int cmd_q1(const RunConfig& cfg) {
    OptResult r;
    switch (cfg.channel) {
        case ChannelKind::platypus: r = q1_platypus(cfg.s); break;
        case ChannelKind::md: r = q1_md_closed_form(cfg.d); break;
        case ChannelKind::erasure: r = {q1_erasure(cfg.x, cfg.d), {}, 1, true}; break;
        case ChannelKind::ad: r = q1_amplitude_damping(cfg.x); break;
        case ChannelKind::depolarizing: r = {q1_depolarizing(cfg.x), {}, 1, true}; break;
    }
    std::ostringstream out;
    out << "# " << provenance_json(cfg) << "\n" << opt_result_to_json(r) << "\n";
    std::cout << out.str();
    if (!cfg.out_path.empty()) write_text(cfg.out_path, out.str());
    return 0;
}

int cmd_witness(const RunConfig& cfg) {
    WitnessReport report;
    nlohmann::json body;
    if (cfg.pair == PairKind::md_erasure) {
        report = md_witness(cfg.d, cfg.x, cfg.capacity_mode, cfg.exec);
        body = nlohmann::json::parse(witness_report_to_json(report));
    } else {
        const auto partner = make_partner(cfg.pair, cfg.x);
        report = delta_witness_ns(cfg.s, partner.channel, partner.q1, cfg.exec);
        report.params["x"] = cfg.x;
        body = nlohmann::json::parse(witness_report_to_json(report));
        // full isometry of the partner channel, for replay without this tool
        body["partner_channel"] = nlohmann::json::parse(channel_to_json(partner.channel));
    }
    std::ostringstream out;
    out << "# " << provenance_json(cfg) << "\n" << body.dump() << "\n";
    std::cout << out.str();
    if (!cfg.out_path.empty()) write_text(cfg.out_path, out.str());
    return 0;
}

NsFamily ns_family_of(PairKind pair) {
    switch (pair) {
        case PairKind::ns_erasure: return NsFamily::erasure;
        case PairKind::ns_ad: return NsFamily::amplitude_damping;
        case PairKind::ns_depolarizing: return NsFamily::depolarizing;
        default: throw InvalidParams("region: unsupported pair");
    }
}

int cmd_region(const RunConfig& cfg) {
    std::ostringstream os;
    std::string path = cfg.out_path;
    if (cfg.pair == PairKind::md_erasure) {
        const auto region = region_sweep_md(cfg.d_list, cfg.exec);
        write_md_region_csv(os, region, provenance_json(cfg));
        if (path.empty()) path = "md_region.csv";
    } else {
        const auto grid = grid_points(cfg.grid);
        const auto curve = region_sweep_ns(ns_family_of(cfg.pair), grid, cfg.exec);
        write_ns_region_csv(os, curve, provenance_json(cfg));
        if (path.empty()) path = "ns_region.csv";
    }
    write_text(path, os.str());
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_fig(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# " << provenance_json(cfg) << "\n";
    std::string path = cfg.out_path.empty() ? ("fig" + std::to_string(cfg.fig_id) + ".csv") : cfg.out_path;

    switch (cfg.fig_id) {
        case 1: {
            // Amplification of Q1(N_s) by the three zero-coherent-information partners.
            const double p_star = hashing_point_depolarizing();
            const auto grid = grid_points(cfg.grid);
            struct Row { double s, ad, er, dep; };
            std::vector<Row> rows(grid.size());
            parallel_for(grid.size(), cfg.exec, [&](std::size_t i) {
                const double s = grid[i];
                const auto ns = platypus_channel(s);
                const double q1_ns = q1_platypus(s).value;
                const auto gain = [&](const IsometryChannel& partner) {
                    return delta_star_ansatz(tensor_product(ns, partner), Exec::serial).value - q1_ns;
                };
                rows[i] = {s, gain(amplitude_damping(0.5)), gain(erasure_channel(0.5, 2)),
                           gain(depolarizing(p_star))};
            });
            os << "s,ad,er,dep\n";
            for (const auto& r : rows)
                os << fmt_double(r.s) << ',' << fmt_double(r.ad) << ',' << fmt_double(r.er) << ','
                   << fmt_double(r.dep) << '\n';
            break;
        }
        case 2: {
            const auto region = region_sweep_md(cfg.d_list, cfg.exec);
            std::ostringstream tmp;
            write_md_region_csv(tmp, region, provenance_json(cfg));
            write_text(path, tmp.str());
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        case 3: {
            GridSpec g = cfg.grid_overridden ? cfg.grid : GridSpec{0.3, 1.0, 141};
            const auto grid = grid_points(g);
            std::vector<double> dlt(grid.size());
            parallel_for(grid.size(), cfg.exec, [&](std::size_t i) {
                const auto partner = make_partner(PairKind::ns_erasure, grid[i]);
                dlt[i] = delta_witness_ns(0.5, partner.channel, partner.q1, Exec::serial).witness_value;
            });
            os << "lm,dlt\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                os << fmt_double(grid[i]) << ',' << fmt_double(dlt[i]) << '\n';
            break;
        }
        case 4:
        case 5:
        case 6: {
            const NsFamily family = (cfg.fig_id == 4)   ? NsFamily::erasure
                                    : (cfg.fig_id == 5) ? NsFamily::amplitude_damping
                                                        : NsFamily::depolarizing;
            GridSpec g = cfg.grid;
            if (!cfg.grid_overridden && cfg.fig_id == 6) g = {0.44, 0.5, 13};
            const auto grid = grid_points(g);
            const auto curve = region_sweep_ns(family, grid, cfg.exec);
            std::ostringstream tmp;
            write_ns_region_csv(tmp, curve, provenance_json(cfg));
            write_text(path, tmp.str());
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        case 7: {
            os << "d,lm,diffQ1,diffQ\n";
            for (std::size_t d : {std::size_t{10}, std::size_t{50}}) {
                const double q1_md = q1_md_closed_form(d + 1).value;
                constexpr std::size_t kPts = 101;
                std::vector<double> q1diff(kPts), qdiff(kPts);
                parallel_for(kPts, cfg.exec, [&](std::size_t i) {
                    const double lm = static_cast<double>(i) / (kPts - 1);
                    const double ds = md_erasure_delta_star(d, lm).value;
                    q1diff[i] = ds - q1_md - q1_erasure(lm, d);
                    qdiff[i] = ds - u_bound(lm, d);
                });
                for (std::size_t i = 0; i < kPts; ++i) {
                    const double lm = static_cast<double>(i) / (kPts - 1);
                    os << d << ',' << fmt_double(lm) << ',' << fmt_double(q1diff[i]) << ','
                       << fmt_double(qdiff[i]) << '\n';
                }
            }
            break;
        }
        default:
            throw InvalidParams("fig: id must be in 1..7");
    }
    write_text(path, os.str());
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_randscan(const RunConfig& cfg) {
    ScanOptions opts;
    opts.compute_interval = cfg.scan_intervals;
    const auto records = scan_batch(cfg.count, cfg.seed, opts, cfg.exec);

    std::ostringstream os;
    nlohmann::json header;
    header["provenance"] = nlohmann::json::parse(provenance_json(cfg));
    os << header.dump() << "\n";
    std::size_t positives = 0;
    for (const auto& rec : records) {
        if (rec.witness_at_xstar > kWitnessPositive) ++positives;
        os << scan_record_to_json(rec) << "\n";
    }
    const std::string path = cfg.out_path.empty() ? "scans.jsonl" : cfg.out_path;
    write_text(path, os.str());
    std::cout << "wrote " << path << ": " << positives << "/" << records.size()
              << " records with a positive witness\n";
    return 0;
}

}  // namespace

std::string provenance_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["tool"] = "supadd";
    j["version"] = kVersion;
    j["command"] = command_name(cfg.command);
    j["seed"] = cfg.seed;
    nlohmann::json p;
    switch (cfg.command) {
        case Command::q1:
            p["channel"] = channel_name(cfg.channel);
            p["s"] = cfg.s;
            p["x"] = cfg.x;
            p["d"] = cfg.d;
            break;
        case Command::witness:
            p["pair"] = pair_name(cfg.pair);
            p["s"] = cfg.s;
            p["x"] = cfg.x;
            p["d"] = cfg.d;
            p["mode"] = cfg.capacity_mode ? "capacity" : "ci";
            break;
        case Command::region:
            p["pair"] = pair_name(cfg.pair);
            if (cfg.pair == PairKind::md_erasure) {
                p["d_list"] = cfg.d_list;
            } else {
                p["grid"] = {cfg.grid.start, cfg.grid.stop, cfg.grid.count};
            }
            break;
        case Command::fig:
            p["id"] = cfg.fig_id;
            break;
        case Command::randscan:
            p["count"] = cfg.count;
            p["intervals"] = cfg.scan_intervals;
            break;
    }
    j["params"] = std::move(p);
    return j.dump();
}

int run_cli(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::q1: return cmd_q1(cfg);
            case Command::witness: return cmd_witness(cfg);
            case Command::region: return cmd_region(cfg);
            case Command::fig: return cmd_fig(cfg);
            case Command::randscan: return cmd_randscan(cfg);
        }
        return 2;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const SamplingExhausted& e) {
        std::cerr << "sampling exhausted: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace supadd
