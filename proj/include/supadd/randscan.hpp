#pragma once

#include <optional>
#include <random>
#include <utility>

#include "supadd/witness.hpp"

namespace supadd {

struct ScanRecord {
    BlochRep rep;
    double x_star = 1.0;
    double witness_at_xstar = 0.0;
    std::optional<std::pair<double, double>> superadd_interval;
    std::uint64_t seed = 0;
};

std::string scan_record_to_json(const ScanRecord& rec);
ScanRecord scan_record_from_json(const std::string& text);

/// Rejection-samples (t, lambda) uniform in [-1,1]^3 x [-1,1]^3 until the
/// normal-form Choi operator is PSD. Throws SamplingExhausted past retry_cap.
BlochRep sample_normal_form(std::mt19937_64& rng, std::size_t retry_cap = 10000);

struct ScanOptions {
    bool compute_interval = true;
    HashingOptions hashing;
    std::size_t q1_restarts = 6;  // for Q1(R_x) along the interval bisection
    double interval_x_tol = 1e-3;
    Exec exec = Exec::parallel;
};

/// The 4-step amplification test: hashing point x*, ansatz witness for
/// N_{1/2} ⊗ R_{x*}, and (when positive) the superadditivity interval in x.
ScanRecord amplification_scan(const BlochRep& rep, std::uint64_t record_seed,
                              const ScanOptions& opts = {});

/// Seeded batch; record k is drawn and scanned from mix_seed(seed, k).
std::vector<ScanRecord> scan_batch(std::size_t count, std::uint64_t seed, const ScanOptions& opts = {},
                                   Exec exec = Exec::parallel);

}  // namespace supadd
