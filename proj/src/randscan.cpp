#include "supadd/randscan.hpp"

#include <cmath>

#include <json.hpp>

namespace supadd {

std::string scan_record_to_json(const ScanRecord& rec) {
    nlohmann::json j;
    j["seed"] = rec.seed;
    j["t"] = rec.rep.t;
    auto rows = nlohmann::json::array();
    for (const auto& r : rec.rep.T) rows.push_back(r);
    j["T"] = std::move(rows);
    j["x_star"] = rec.x_star;
    j["witness_at_xstar"] = rec.witness_at_xstar;
    if (rec.superadd_interval)
        j["superadd_interval"] = {rec.superadd_interval->first, rec.superadd_interval->second};
    else
        j["superadd_interval"] = nullptr;
    return j.dump();
}

ScanRecord scan_record_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ScanRecord rec;
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.rep.t = j.at("t").get<std::array<double, 3>>();
    const auto& rows = j.at("T");
    for (std::size_t i = 0; i < 3; ++i) rec.rep.T[i] = rows.at(i).get<std::array<double, 3>>();
    rec.x_star = j.at("x_star").get<double>();
    rec.witness_at_xstar = j.at("witness_at_xstar").get<double>();
    if (!j.at("superadd_interval").is_null()) {
        const auto& iv = j.at("superadd_interval");
        rec.superadd_interval = {iv.at(0).get<double>(), iv.at(1).get<double>()};
    }
    return rec;
}

namespace {

// Uniform in [-1, 1] from the top 53 bits; avoids the unspecified state
// consumption of std::uniform_real_distribution.
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

BlochRep sample_normal_form(std::mt19937_64& rng, std::size_t retry_cap) {
    for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
        std::array<double, 3> t{}, lam{};
        for (auto& v : t) v = uniform_pm1(rng);
        for (auto& v : lam) v = uniform_pm1(rng);
        const auto rep = BlochRep::normal_form(t, lam);
        const auto evs = hermitian_eigenvalues(choi_of_bloch(rep));
        if (evs.front() >= kChoiPsdTol) return rep;
    }
    throw SamplingExhausted("sample_normal_form: retry cap reached without a CP draw");
}

ScanRecord amplification_scan(const BlochRep& rep, std::uint64_t record_seed, const ScanOptions& opts) {
    ScanRecord rec;
    rec.rep = rep;
    rec.seed = record_seed;

    HashingOptions hopts = opts.hashing;
    hopts.exec = opts.exec;
    rec.x_star = hashing_point_family(rep, hopts).x_star;

    const auto ns = platypus_channel(0.5);
    const double q1_ns = q1_platypus(0.5).value;

    Q1GeneralOptions q1opts;
    q1opts.exec = opts.exec;
    const auto r_star = qubit_from_bloch(rep, rec.x_star);
    // ~0 when the hashing point was found; 1 on the x* = 1 no-vanish fallback.
    const double q1_r_star =
        std::max(q1_general(r_star, opts.q1_restarts, mix_seed(record_seed, 0x715), q1opts).value, 0.0);

    const auto joint_star = tensor_product(ns, r_star);
    rec.witness_at_xstar = delta_star_ansatz(joint_star, opts.exec).value - q1_ns - q1_r_star;

    if (!opts.compute_interval || rec.witness_at_xstar <= kWitnessPositive) return rec;

    const auto witness_at = [&](double x) {
        const auto rx = qubit_from_bloch(rep, x);
        const double q1_rx = q1_general(rx, opts.q1_restarts, mix_seed(record_seed, 0xabc), q1opts).value;
        const auto joint = tensor_product(ns, rx);
        return delta_star_ansatz(joint, opts.exec).value - q1_ns - std::max(q1_rx, 0.0);
    };

    // Bracket the positive run around x*: coarse outward scan, then bisection.
    constexpr std::size_t kScan = 21;
    std::vector<double> xs(kScan);
    std::vector<double> vals(kScan);
    std::size_t star_idx = 0;
    for (std::size_t i = 0; i < kScan; ++i) {
        xs[i] = static_cast<double>(i) / (kScan - 1);
        if (std::abs(xs[i] - rec.x_star) < std::abs(xs[star_idx] - rec.x_star)) star_idx = i;
    }
    xs[star_idx] = rec.x_star;  // ensure the known-positive point is on the grid
    parallel_for(kScan, opts.exec, [&](std::size_t i) { vals[i] = witness_at(xs[i]); });

    if (vals[star_idx] <= kWitnessPositive) {
        // Subtracting Q1(R_{x*}) > 0 can close the window; no interval then.
        return rec;
    }
    std::size_t lo = star_idx;
    while (lo > 0 && vals[lo - 1] > kWitnessPositive) --lo;
    std::size_t hi = star_idx;
    while (hi + 1 < kScan && vals[hi + 1] > kWitnessPositive) ++hi;

    const auto bisect = [&](double pos, double neg) {
        while (std::abs(neg - pos) > opts.interval_x_tol) {
            const double mid = 0.5 * (pos + neg);
            if (witness_at(mid) > kWitnessPositive)
                pos = mid;
            else
                neg = mid;
        }
        return 0.5 * (pos + neg);
    };
    const double x_lo = (lo == 0) ? xs[0] : bisect(xs[lo], xs[lo - 1]);
    const double x_hi = (hi == kScan - 1) ? xs[kScan - 1] : bisect(xs[hi], xs[hi + 1]);
    rec.superadd_interval = {x_lo, x_hi};
    return rec;
}

std::vector<ScanRecord> scan_batch(std::size_t count, std::uint64_t seed, const ScanOptions& opts,
                                   Exec exec) {
    std::vector<ScanRecord> records(count);
    ScanOptions inner = opts;
    inner.exec = Exec::serial;  // parallelism lives across batch members
    inner.hashing.exec = Exec::serial;
    parallel_for(count, exec, [&](std::size_t k) {
        const std::uint64_t rec_seed = mix_seed(seed, k);
        std::mt19937_64 rng(rec_seed);
        const auto rep = sample_normal_form(rng);
        records[k] = amplification_scan(rep, rec_seed, inner);
    });
    return records;
}

}  // namespace supadd
