#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "supadd/channels.hpp"
#include "test_util.hpp"

using namespace supadd;
using supadd::testing::random_density;
using doctest::Approx;

namespace {

IsometryChannel qubit_identity() { return qubit_from_bloch(BlochRep::identity(), 0.0); }

DensityOperator product_state(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator::from_psd(kron(a.matrix(), b.matrix()));
}

}  // namespace

TEST_CASE("constructors produce isometries and valid channels") {
    std::vector<IsometryChannel> channels;
    for (double s : {0.0, 0.17, 0.5}) channels.push_back(platypus_channel(s));
    for (std::size_t d : {3u, 4u, 7u}) channels.push_back(generalized_platypus(d));
    for (double lm : {0.0, 0.31, 0.5, 1.0}) channels.push_back(erasure_channel(lm, 2));
    channels.push_back(erasure_channel(0.4, 5));
    for (double g : {0.0, 0.5, 1.0}) channels.push_back(amplitude_damping(g));
    for (double p : {0.0, 0.3, 0.75}) channels.push_back(depolarizing(p));
    channels.push_back(qubit_from_bloch(BlochRep::normal_form({0.1, 0.0, 0.2}, {0.5, 0.4, 0.6}), 0.8));

    for (const auto& ch : channels) {
        CHECK_NOTHROW(check_isometry(ch, 1e-12));
        const auto validity = is_valid_channel(ch);
        CHECK(validity.ok());
    }
}

TEST_CASE("platypus endpoints and generalization") {
    const auto f0 = platypus_channel(0.0);
    CHECK(std::abs(f0.V(1 * 2 + 1, 0)) == Approx(1.0));  // F_0|0> = |11>
    double col0_norm = 0.0;
    for (std::size_t r = 0; r < f0.V.rows; ++r) col0_norm += std::norm(f0.V(r, 0));
    CHECK(col0_norm == Approx(1.0));

    CHECK(max_abs_diff(platypus_channel(0.5).V, generalized_platypus(3).V) <= 1e-15);

    const auto g4 = generalized_platypus(4);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(g4.V(j * 3 + j, 0).real() == Approx(1.0 / std::sqrt(3.0)));

    CHECK_THROWS_AS(platypus_channel(0.6), DomainError);
    CHECK_THROWS_AS(generalized_platypus(2), DomainError);
}

TEST_CASE("platypus action on basis states") {
    const auto ch = platypus_channel(0.37);
    const auto out = apply(ch, DensityOperator::pure({0.0, 1.0, 0.0}));
    CHECK(out.matrix()(2, 2).real() == Approx(1.0));  // output [2]
    const auto env = apply_complement(ch, DensityOperator::pure({0.0, 1.0, 0.0}));
    CHECK(env.matrix()(0, 0).real() == Approx(1.0));  // environment [0]
}

TEST_CASE("erasure channel structure") {
    std::mt19937_64 rng(5);
    const auto rho = random_density(rng, 2);

    // lambda = 0: noiseless embedding rho ⊕ 0
    const auto noiseless = apply(erasure_channel(0.0, 2), rho);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(noiseless.matrix()(i, j) - rho.matrix()(i, j)) <= 1e-12);
    CHECK(std::abs(noiseless.matrix()(2, 2)) <= 1e-12);

    // symmetric point: complement equals the channel
    const auto sym = erasure_channel(0.5, 2);
    CHECK(max_abs_diff(apply(sym, rho).matrix(), apply_complement(sym, rho).matrix()) <= 1e-12);

    // block spectrum {(1-lm) p_i} ∪ {lm}
    const double lm = 0.35;
    const auto out = apply(erasure_channel(lm, 3), random_density(rng, 3));
    CHECK(out.matrix()(3, 3).real() == Approx(lm).epsilon(1e-12));

    // complement duality: spectra of E_lm complement match E_{1-lm}
    const auto rho3 = random_density(rng, 3);
    const auto comp = apply_complement(erasure_channel(lm, 3), rho3);
    const auto flipped = apply(erasure_channel(1.0 - lm, 3), rho3);
    const auto ev1 = hermitian_eigenvalues(HermitianOperator::from_matrix(comp.matrix()));
    const auto ev2 = hermitian_eigenvalues(HermitianOperator::from_matrix(flipped.matrix()));
    for (std::size_t i = 0; i < ev1.size(); ++i) CHECK(ev1[i] == Approx(ev2[i]).epsilon(1e-9));
}

TEST_CASE("amplitude damping endpoints and symmetry") {
    std::mt19937_64 rng(9);
    const auto rho = random_density(rng, 2);

    const auto id_like = apply(amplitude_damping(0.0), rho);
    CHECK(max_abs_diff(id_like.matrix(), rho.matrix()) <= 1e-12);

    const auto sym = amplitude_damping(0.5);
    CHECK(max_abs_diff(apply(sym, rho).matrix(), apply_complement(sym, rho).matrix()) <= 1e-12);

    const auto drained = apply(amplitude_damping(1.0), DensityOperator::pure({0.0, 1.0}));
    CHECK(drained.matrix()(0, 0).real() == Approx(1.0));
}

TEST_CASE("depolarizing endpoints and Kraus action") {
    std::mt19937_64 rng(13);
    const auto rho = random_density(rng, 2);

    CHECK(max_abs_diff(apply(depolarizing(0.0), rho).matrix(), rho.matrix()) <= 1e-12);
    CHECK(max_abs_diff(apply(depolarizing(0.75), rho).matrix(),
                       DensityOperator::maximally_mixed(2).matrix()) <= 1e-12);

    const auto out = apply(depolarizing(0.3), DensityOperator::pure({1.0, 0.0}));
    CHECK(out.matrix()(0, 0).real() == Approx(0.8).epsilon(1e-12));
    CHECK(out.matrix()(1, 1).real() == Approx(0.2).epsilon(1e-12));
}

TEST_CASE("bloch representation round trips") {
    std::mt19937_64 rng(21);
    const auto rho = random_density(rng, 2);
    for (double x : {0.0, 0.4, 1.0}) {
        const auto ch = qubit_from_bloch(BlochRep::identity(), x);
        CHECK(ch.dim_env == 1);
        CHECK(max_abs_diff(apply(ch, rho).matrix(), rho.matrix()) <= 1e-10);
    }

    // phase-type Pauli channel: Choi eigenvalues {0, 0, 2q, 2(1-q)}
    const double q = 0.3;
    const auto rep = BlochRep::normal_form({0, 0, 0}, {1.0 - 2.0 * q, 1.0 - 2.0 * q, 1.0});
    const auto evs = hermitian_eigenvalues(choi_of_bloch(rep));
    CHECK(evs[0] == Approx(0.0).epsilon(1e-12));
    CHECK(evs[1] == Approx(0.0).epsilon(1e-12));
    CHECK(evs[2] == Approx(2.0 * q).epsilon(1e-12));
    CHECK(evs[3] == Approx(2.0 * (1.0 - q)).epsilon(1e-12));

    // not CP: lambda = (1, 1, -1)
    const auto bad = BlochRep::normal_form({0, 0, 0}, {1.0, 1.0, -1.0});
    CHECK_THROWS_AS(qubit_from_bloch(bad, 1.0), NotCompletelyPositive);

    // depolarizing normal form matches the Kraus construction
    const double p = 0.22;
    const double lam = 1.0 - 4.0 * p / 3.0;
    const auto dep_rep = BlochRep::normal_form({0, 0, 0}, {lam, lam, lam});
    const auto via_bloch = qubit_from_bloch(dep_rep, 1.0);
    const auto direct = depolarizing(p);
    CHECK(max_abs_diff(apply(via_bloch, rho).matrix(), apply(direct, rho).matrix()) <= 1e-10);
}

TEST_CASE("tensor product dimensions and factorization") {
    const auto joint = tensor_product(platypus_channel(0.5), erasure_channel(0.5, 2));
    CHECK(joint.dim_in == 6);
    CHECK(joint.dim_out == 9);
    CHECK(joint.dim_env == 6);
    CHECK_NOTHROW(check_isometry(joint, 1e-12));

    std::mt19937_64 rng(31);
    const auto rho = random_density(rng, 3);
    const auto sigma = random_density(rng, 2);

    // A ⊗ identity
    const auto a = platypus_channel(0.3);
    const auto a_id = tensor_product(a, qubit_identity());
    const auto lhs = apply(a_id, product_state(rho, sigma));
    const auto rhs = kron(apply(a, rho).matrix(), sigma.matrix());
    CHECK(max_abs_diff(lhs.matrix(), rhs) <= 1e-10);

    // (A ⊗ B)(rho ⊗ sigma) = A(rho) ⊗ B(sigma), both reductions
    const auto b = amplitude_damping(0.4);
    const auto ab = tensor_product(a, b);
    CHECK(max_abs_diff(apply(ab, product_state(rho, sigma)).matrix(),
                       kron(apply(a, rho).matrix(), apply(b, sigma).matrix())) <= 1e-10);
    CHECK(max_abs_diff(apply_complement(ab, product_state(rho, sigma)).matrix(),
                       kron(apply_complement(a, rho).matrix(), apply_complement(b, sigma).matrix())) <=
          1e-10);

    CHECK_THROWS_AS(tensor_product(a, b, 16), DimensionOverflow);
}

TEST_CASE("choi operators") {
    // identity qubit channel: J = 2 [phi], eigenvalues {0,0,0,2}
    const auto evs_id = hermitian_eigenvalues(choi_matrix(qubit_identity()));
    CHECK(evs_id[3] == Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(evs_id[0]) <= 1e-12);
    CHECK(std::abs(evs_id[2]) <= 1e-12);

    // fully depolarizing: J = I_4 / 2
    const auto j_dep = choi_matrix(depolarizing(0.75));
    CHECK(max_abs_diff(j_dep.matrix(), scale(ComplexMatrix::identity(4), 0.5)) <= 1e-12);

    // trace preservation encoded in the Choi partial trace
    const auto v = is_valid_channel(platypus_channel(0.25));
    CHECK(v.tp);
    CHECK(v.max_partial_trace_defect <= 1e-12);

    // Choi of a tensor product equals the wire-permuted tensor of Chois
    const auto a = amplitude_damping(0.3);
    const auto b = depolarizing(0.2);
    const auto joint = choi_matrix(tensor_product(a, b));
    const auto ja = choi_matrix(a);
    const auto jb = choi_matrix(b);
    const auto direct = kron(ja.matrix(), jb.matrix());
    double worst = 0.0;
    for (std::size_t ia = 0; ia < 2; ++ia)
        for (std::size_t ib = 0; ib < 2; ++ib)
            for (std::size_t ba = 0; ba < 2; ++ba)
                for (std::size_t bb = 0; bb < 2; ++bb)
                    for (std::size_t ja2 = 0; ja2 < 2; ++ja2)
                        for (std::size_t jb2 = 0; jb2 < 2; ++jb2)
                            for (std::size_t ca = 0; ca < 2; ++ca)
                                for (std::size_t cb = 0; cb < 2; ++cb) {
                                    const auto r1 = (ia * 2 + ib) * 4 + (ba * 2 + bb);
                                    const auto c1 = (ja2 * 2 + jb2) * 4 + (ca * 2 + cb);
                                    const auto r2 = (ia * 2 + ba) * 4 + (ib * 2 + bb);
                                    const auto c2 = (ja2 * 2 + ca) * 4 + (jb2 * 2 + cb);
                                    worst = std::max(worst,
                                                     std::abs(joint.matrix()(r1, c1) - direct(r2, c2)));
                                }
    CHECK(worst <= 1e-9);
}

TEST_CASE("depolarizing Kraus form matches the affine form") {
    // (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z) = (1 - 4p/3) rho + (2p/3) I
    std::mt19937_64 rng(77);
    for (double p : {0.1, 0.4, 0.75}) {
        const auto rho = random_density(rng, 2);
        const auto out = apply(depolarizing(p), rho);
        ComplexMatrix expected = scale(rho.matrix(), 1.0 - 4.0 * p / 3.0);
        expected = add(expected, scale(ComplexMatrix::identity(2), 2.0 * p / 3.0));
        CHECK(max_abs_diff(out.matrix(), expected) <= 1e-12);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    std::mt19937_64 rng(1);
    const auto rho2 = random_density(rng, 2);
    CHECK_THROWS_AS(apply(platypus_channel(0.3), rho2), DimensionMismatch);
    CHECK_THROWS_AS(apply_complement(platypus_channel(0.3), rho2), DimensionMismatch);
}

TEST_CASE("channel JSON round trip") {
    const auto ch = depolarizing(0.3);
    const auto back = channel_from_json(channel_to_json(ch));
    CHECK(back.label == ch.label);
    CHECK(back.dim_in == ch.dim_in);
    CHECK(back.dim_out == ch.dim_out);
    CHECK(back.dim_env == ch.dim_env);
    CHECK(max_abs_diff(back.V, ch.V) == 0.0);
}
