#include "supadd/channels.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace supadd {

namespace {

IsometryChannel make_channel(std::size_t d_in, std::size_t d_out, std::size_t d_env, std::string label) {
    IsometryChannel ch;
    ch.dim_in = d_in;
    ch.dim_out = d_out;
    ch.dim_env = d_env;
    ch.V = ComplexMatrix(d_out * d_env, d_in);
    ch.label = std::move(label);
    return ch;
}

}  // namespace

void check_isometry(const IsometryChannel& ch, double tol) {
    const ComplexMatrix gram = matmul(adjoint(ch.V), ch.V);
    const double defect = max_abs_diff(gram, ComplexMatrix::identity(ch.dim_in));
    if (defect > tol) throw InvalidParams("check_isometry: V†V deviates from identity: " + ch.label);
}

IsometryChannel platypus_channel(double s) {
    if (s < 0.0 || s > 0.5) throw DomainError("platypus_channel: s outside [0, 1/2]");
    auto ch = make_channel(3, 3, 2, "platypus(s=" + std::to_string(s) + ")");
    // F_s|0> = sqrt(s)|00> + sqrt(1-s)|11>, F_s|1> = |20>, F_s|2> = |21>
    ch.V(0 * 2 + 0, 0) = std::sqrt(s);
    ch.V(1 * 2 + 1, 0) = std::sqrt(1.0 - s);
    ch.V(2 * 2 + 0, 1) = 1.0;
    ch.V(2 * 2 + 1, 2) = 1.0;
    return ch;
}

IsometryChannel generalized_platypus(std::size_t d) {
    if (d < 3) throw DomainError("generalized_platypus: d must be >= 3");
    auto ch = make_channel(d, d, d - 1, "md(d=" + std::to_string(d) + ")");
    const double amp = 1.0 / std::sqrt(static_cast<double>(d - 1));
    for (std::size_t j = 0; j + 1 < d; ++j) ch.V(j * (d - 1) + j, 0) = amp;
    for (std::size_t i = 1; i < d; ++i) ch.V((d - 1) * (d - 1) + (i - 1), i) = 1.0;
    return ch;
}

IsometryChannel erasure_channel(double lambda, std::size_t d) {
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("erasure_channel: lambda outside [0, 1]");
    if (d < 2) throw DomainError("erasure_channel: d must be >= 2");
    auto ch = make_channel(d, d + 1, d + 1,
                           "erasure(lambda=" + std::to_string(lambda) + ",d=" + std::to_string(d) + ")");
    const std::size_t e = d;  // erasure flag
    const double keep = std::sqrt(1.0 - lambda);
    const double lose = std::sqrt(lambda);
    for (std::size_t i = 0; i < d; ++i) {
        ch.V(i * (d + 1) + e, i) = keep;  // |i>_b |e>_c
        ch.V(e * (d + 1) + i, i) = lose;  // |e>_b |i>_c
    }
    return ch;
}

IsometryChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw DomainError("amplitude_damping: gamma outside [0, 1]");
    auto ch = make_channel(2, 2, 2, "ad(gamma=" + std::to_string(gamma) + ")");
    ch.V(0 * 2 + 0, 0) = 1.0;
    ch.V(0 * 2 + 1, 1) = std::sqrt(gamma);
    ch.V(1 * 2 + 0, 1) = std::sqrt(1.0 - gamma);
    return ch;
}

IsometryChannel depolarizing(double p) {
    if (p < 0.0 || p > 0.75) throw DomainError("depolarizing: p outside [0, 3/4]");
    auto ch = make_channel(2, 2, 4, "depolarizing(p=" + std::to_string(p) + ")");
    const double w0 = std::sqrt(1.0 - p);
    const double w = std::sqrt(p / 3.0);
    const cplx i{0.0, 1.0};
    // Kraus operators stacked against orthonormal environment states:
    // sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z.
    ch.V(0 * 4 + 0, 0) = w0;
    ch.V(1 * 4 + 0, 1) = w0;
    ch.V(1 * 4 + 1, 0) = w;
    ch.V(0 * 4 + 1, 1) = w;
    ch.V(1 * 4 + 2, 0) = i * w;
    ch.V(0 * 4 + 2, 1) = -i * w;
    ch.V(0 * 4 + 3, 0) = w;
    ch.V(1 * 4 + 3, 1) = -w;
    return ch;
}

BlochRep BlochRep::identity() {
    BlochRep rep;
    for (int k = 0; k < 3; ++k) rep.T[k][k] = 1.0;
    return rep;
}

BlochRep BlochRep::normal_form(const std::array<double, 3>& t, const std::array<double, 3>& lambda) {
    BlochRep rep;
    rep.t = t;
    for (int k = 0; k < 3; ++k) rep.T[k][k] = lambda[k];
    return rep;
}

namespace {

// Pauli matrices.
const ComplexMatrix& pauli(int k) {
    static const auto make = [](cplx a, cplx b, cplx c, cplx d) {
        ComplexMatrix m(2, 2);
        m(0, 0) = a;
        m(0, 1) = b;
        m(1, 0) = c;
        m(1, 1) = d;
        return m;
    };
    static const ComplexMatrix sx = make(0, 1, 1, 0);
    static const ComplexMatrix sy = make(0, cplx(0, -1), cplx(0, 1), 0);
    static const ComplexMatrix sz = make(1, 0, 0, -1);
    switch (k) {
        case 0: return sx;
        case 1: return sy;
        default: return sz;
    }
}

// Action of the Bloch map on a 2x2 operator, extended linearly from
// rho = (I + s.sigma)/2  ->  (I + (t + T s).sigma)/2.
ComplexMatrix bloch_apply(const BlochRep& rep, const ComplexMatrix& x) {
    // Decompose x = (tr x) I/2 + sum_k c_k sigma_k / 2 with c_k = tr(sigma_k x).
    const cplx trx = trace(x);
    std::array<cplx, 3> c{};
    for (int k = 0; k < 3; ++k) c[k] = trace(matmul(pauli(k), x));

    ComplexMatrix out(2, 2);
    out(0, 0) = trx * 0.5;
    out(1, 1) = trx * 0.5;
    for (int k = 0; k < 3; ++k) {
        cplx ck = trx * rep.t[k];
        for (int l = 0; l < 3; ++l) ck += rep.T[k][l] * c[l];
        out = add(out, scale(pauli(k), ck * 0.5));
    }
    return out;
}

}  // namespace

HermitianOperator choi_of_bloch(const BlochRep& rep) {
    ComplexMatrix j(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t jj = 0; jj < 2; ++jj) {
            ComplexMatrix eij(2, 2);
            eij(i, jj) = 1.0;
            const ComplexMatrix mapped = bloch_apply(rep, eij);
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t b2 = 0; b2 < 2; ++b2) j(i * 2 + b, jj * 2 + b2) = mapped(b, b2);
        }
    }
    // Symmetrize away roundoff from the Pauli arithmetic.
    ComplexMatrix sym(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) sym(r, c) = 0.5 * (j(r, c) + std::conj(j(c, r)));
    return HermitianOperator::from_matrix(std::move(sym));
}

IsometryChannel qubit_from_bloch(const BlochRep& rep, double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("qubit_from_bloch: x outside [0, 1]");

    BlochRep mixed;  // (1-x) id + x R
    for (int k = 0; k < 3; ++k) {
        mixed.t[k] = x * rep.t[k];
        for (int l = 0; l < 3; ++l) mixed.T[k][l] = x * rep.T[k][l] + ((k == l) ? (1.0 - x) : 0.0);
    }

    const auto choi = choi_of_bloch(mixed);
    const auto eig = hermitian_eigensystem(choi);
    if (eig.values.front() < kChoiPsdTol)
        throw NotCompletelyPositive("qubit_from_bloch: Choi operator has a negative eigenvalue");

    // Kraus operators from the Choi eigendecomposition; eigenvalues below 1e-12
    // are discarded, which fixes the environment dimension.
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] > 1e-12) kept.push_back(k);

    auto ch = make_channel(2, 2, kept.size(), "bloch(x=" + std::to_string(x) + ")");
    for (std::size_t e = 0; e < kept.size(); ++e) {
        const std::size_t k = kept[e];
        const double w = std::sqrt(eig.values[k]);
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t i = 0; i < 2; ++i)
                ch.V(b * kept.size() + e, i) = w * eig.vectors(i * 2 + b, k);
    }
    return ch;
}

IsometryChannel tensor_product(const IsometryChannel& a, const IsometryChannel& b, std::size_t dense_limit) {
    const std::size_t rows = a.dim_out * b.dim_out * a.dim_env * b.dim_env;
    if (rows > dense_limit)
        throw DimensionOverflow("tensor_product: joint output x environment exceeds dense limit");

    auto ch = make_channel(a.dim_in * b.dim_in, a.dim_out * b.dim_out, a.dim_env * b.dim_env,
                           a.label + " x " + b.label);
    const std::size_t env = ch.dim_env;
    for (std::size_t ba = 0; ba < a.dim_out; ++ba)
        for (std::size_t ca = 0; ca < a.dim_env; ++ca)
            for (std::size_t ia = 0; ia < a.dim_in; ++ia) {
                const cplx va = a.V(ba * a.dim_env + ca, ia);
                if (va == cplx{}) continue;
                for (std::size_t bb = 0; bb < b.dim_out; ++bb)
                    for (std::size_t cb = 0; cb < b.dim_env; ++cb)
                        for (std::size_t ib = 0; ib < b.dim_in; ++ib) {
                            const cplx vb = b.V(bb * b.dim_env + cb, ib);
                            if (vb == cplx{}) continue;
                            const std::size_t row = (ba * b.dim_out + bb) * env + (ca * b.dim_env + cb);
                            ch.V(row, ia * b.dim_in + ib) = va * vb;
                        }
            }
    return ch;
}

namespace {

void symmetrize(ComplexMatrix& out) {
    for (std::size_t i = 0; i < out.rows; ++i) {
        out(i, i) = cplx(out(i, i).real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            const cplx m = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = m;
            out(j, i) = std::conj(m);
        }
    }
}

DensityOperator traced_output(const IsometryChannel& ch, const ComplexMatrix& vr, bool keep_output) {
    const std::size_t db = ch.dim_out;
    const std::size_t dc = ch.dim_env;
    const std::size_t keep = keep_output ? db : dc;
    ComplexMatrix out(keep, keep);
    for (std::size_t r1 = 0; r1 < db * dc; ++r1) {
        const std::size_t b1 = r1 / dc, c1 = r1 % dc;
        const std::size_t k1 = keep_output ? b1 : c1;
        for (std::size_t r2 = 0; r2 < db * dc; ++r2) {
            const std::size_t b2 = r2 / dc, c2 = r2 % dc;
            if (keep_output ? (c1 != c2) : (b1 != b2)) continue;
            const std::size_t k2 = keep_output ? b2 : c2;
            cplx w{};
            for (std::size_t i = 0; i < ch.dim_in; ++i) w += vr(r1, i) * std::conj(ch.V(r2, i));
            out(k1, k2) += w;
        }
    }
    symmetrize(out);  // clean roundoff asymmetry before validating
    return DensityOperator::from_psd(std::move(out));
}

ComplexMatrix propagate(const IsometryChannel& ch, const DensityOperator& rho) {
    if (rho.dim() != ch.dim_in) throw DimensionMismatch("apply: input dimension mismatch");
    return matmul(ch.V, rho.matrix());  // V rho, shape (db*dc) x d_in
}

}  // namespace

DensityOperator apply(const IsometryChannel& ch, const DensityOperator& rho) {
    return traced_output(ch, propagate(ch, rho), true);
}

DensityOperator apply_complement(const IsometryChannel& ch, const DensityOperator& rho) {
    return traced_output(ch, propagate(ch, rho), false);
}

std::pair<DensityOperator, DensityOperator> apply_pair(const IsometryChannel& ch,
                                                       const DensityOperator& rho) {
    const ComplexMatrix vr = propagate(ch, rho);
    return {traced_output(ch, vr, true), traced_output(ch, vr, false)};
}

HermitianOperator choi_matrix(const IsometryChannel& ch) {
    const std::size_t da = ch.dim_in;
    const std::size_t db = ch.dim_out;
    const std::size_t dc = ch.dim_env;
    ComplexMatrix j(da * db, da * db);
    // J = sum_ij |i><j| ⊗ M_i M_j† with M_i the i-th column of V reshaped b x c.
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t jj = 0; jj < da; ++jj)
            for (std::size_t b1 = 0; b1 < db; ++b1)
                for (std::size_t b2 = 0; b2 < db; ++b2) {
                    cplx z{};
                    for (std::size_t c = 0; c < dc; ++c)
                        z += ch.V(b1 * dc + c, i) * std::conj(ch.V(b2 * dc + c, jj));
                    j(i * db + b1, jj * db + b2) = z;
                }
    return HermitianOperator::from_matrix(std::move(j));
}

ChannelValidity is_valid_channel(const IsometryChannel& ch) {
    ChannelValidity v;
    const auto choi = choi_matrix(ch);
    const auto evs = hermitian_eigenvalues(choi);
    v.min_choi_eigenvalue = evs.empty() ? 0.0 : evs.front();
    v.cp = v.min_choi_eigenvalue >= kChoiPsdTol;

    // Tr_b J must equal the identity on the input.
    const std::size_t da = ch.dim_in;
    const std::size_t db = ch.dim_out;
    double defect = 0.0;
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            cplx z{};
            for (std::size_t b = 0; b < db; ++b) z += choi.matrix()(i * db + b, j * db + b);
            defect = std::max(defect, std::abs(z - ((i == j) ? cplx{1.0} : cplx{})));
        }
    v.max_partial_trace_defect = defect;
    v.tp = defect <= 1e-9;
    return v;
}

std::string channel_to_json(const IsometryChannel& ch) {
    nlohmann::json j;
    j["label"] = ch.label;
    j["dim_in"] = ch.dim_in;
    j["dim_out"] = ch.dim_out;
    j["dim_env"] = ch.dim_env;
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < ch.V.rows; ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < ch.V.cols; ++c)
            row.push_back({ch.V(r, c).real(), ch.V(r, c).imag()});
        rows.push_back(std::move(row));
    }
    j["V"] = std::move(rows);
    return j.dump();
}

IsometryChannel channel_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    IsometryChannel ch;
    ch.label = j.at("label").get<std::string>();
    ch.dim_in = j.at("dim_in").get<std::size_t>();
    ch.dim_out = j.at("dim_out").get<std::size_t>();
    ch.dim_env = j.at("dim_env").get<std::size_t>();
    const auto& rows = j.at("V");
    ch.V = ComplexMatrix(ch.dim_out * ch.dim_env, ch.dim_in);
    if (rows.size() != ch.V.rows) throw InvalidParams("channel_from_json: row count mismatch");
    for (std::size_t r = 0; r < ch.V.rows; ++r) {
        const auto& row = rows.at(r);
        if (row.size() != ch.V.cols) throw InvalidParams("channel_from_json: column count mismatch");
        for (std::size_t c = 0; c < ch.V.cols; ++c)
            ch.V(r, c) = cplx(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
    }
    check_isometry(ch);
    return ch;
}

}  // namespace supadd
