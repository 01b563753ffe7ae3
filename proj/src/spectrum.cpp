#include "modfront/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "modfront/errors.hpp"

namespace modfront {

namespace {

const cplx I(0.0, 1.0);

// p(lambda) = lambda^m - sum_k a_k lambda^k for companion last row a.
cplx companion_poly(const Eigen::VectorXcd& a, cplx z, cplx* deriv) {
    const int m = static_cast<int>(a.size());
    cplx p = 1.0, dp = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z - a(k);
    }
    if (deriv) *deriv = dp;
    return p;
}

}  // namespace

SpatialBlock build_block(const ModelParams& P, double c, double cp, int n) {
    const double e2 = P.epsilon * P.epsilon;
    const double nn = n, n2 = nn * nn, n3 = n2 * nn;
    const double s = 1.0 - n2;
    SpatialBlock b;
    b.n = n;
    b.A = e2 * P.alpha0 - I * (P.cu * n3) + I * (nn * cp) - s * s;
    b.B = -3.0 * P.cu * n2 + c + 4.0 * I * (n3 - nn);
    b.C = 3.0 * I * (nn * P.cu) + 6.0 * n2 - 2.0;
    b.D = P.cu - 4.0 * I * nn;
    b.E = -I * (nn * P.cv) + n2 - I * (nn * cp);
    b.F = -(c + P.cv + 2.0 * I * nn);
    b.LSH.setZero();
    b.LSH(0, 1) = b.LSH(1, 2) = b.LSH(2, 3) = 1.0;
    b.LSH(3, 0) = b.A;
    b.LSH(3, 1) = b.B;
    b.LSH(3, 2) = b.C;
    b.LSH(3, 3) = b.D;
    b.Lcon << 0.0, 1.0, b.E, b.F;
    return b;
}

std::vector<cplx> companion_eigenvalues(const Eigen::MatrixXcd& M) {
    const int m = static_cast<int>(M.rows());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) fail("NoConvergence", "complex QR iteration failed");
    const Eigen::VectorXcd a = M.row(m - 1).transpose();
    const double norm = M.norm();
    std::vector<cplx> out;
    for (int i = 0; i < m; ++i) {
        cplx z = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            cplx dp;
            const cplx p = companion_poly(a, z, &dp);
            if (std::abs(dp) < 1e-8 * std::max(1.0, norm)) break;
            const cplx znew = z - p / dp;
            if (std::abs(companion_poly(a, znew, nullptr)) >= std::abs(p)) break;
            z = znew;
        }
        double vnorm2 = 0.0;
        cplx zk = 1.0;
        for (int k = 0; k < m; ++k) {
            vnorm2 += std::norm(zk);
            zk *= z;
        }
        const double resid = std::abs(companion_poly(a, z, nullptr)) / std::sqrt(vnorm2);
        if (!(resid <= 1e-10 * std::max(norm, 1.0)))
            fail("NoConvergence", "eigenpair residual above tolerance");
        out.push_back(z);
    }
    return out;
}

std::vector<cplx> block_eigenvalues(const SpatialBlock& b, BlockPart part) {
    if (part == BlockPart::SH) return companion_eigenvalues(b.LSH);
    return companion_eigenvalues(b.Lcon);
}

std::array<cplx, 5> sh_characteristic(const SpatialBlock& b) {
    return {-b.A, -b.B, -b.C, -b.D, cplx(1.0)};
}

std::array<cplx, 3> con_characteristic(const SpatialBlock& b) { return {-b.E, -b.F, cplx(1.0)}; }

int expected_central_count(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::I: return 3;
        case ScenarioTag::II: return 5;
        case ScenarioTag::III:
        case ScenarioTag::IV: return 4;
        case ScenarioTag::V: return 6;
    }
    return 0;
}

double default_gap_tol(ScenarioTag tag, double e) {
    if (tag == ScenarioTag::I || tag == ScenarioTag::III) return 10.0 * e * e + 1e-6;
    return 10.0 * e + 1e-6;
}

SpectralReport central_partition(const ModelParams& P, double c, double cp, int N_max,
                                 double gap_tol, const PartitionOptions& o) {
    SpectralReport rep;
    rep.N_max = N_max;
    rep.gap_tol = gap_tol;
    rep.hyperbolic_gap = std::numeric_limits<double>::infinity();
    double ambiguous = -1.0;
    std::vector<CentralEigenvalue> raw;
    for (int n = -N_max; n <= N_max; ++n) {
        const SpatialBlock b = build_block(P, c, cp, n);
        for (BlockPart part : {BlockPart::SH, BlockPart::Con}) {
            auto ev = block_eigenvalues(b, part);
            for (const cplx& z : ev) {
                const double re = std::abs(z.real());
                if (re < gap_tol) {
                    raw.push_back({n, part, z, 1});
                } else {
                    rep.hyperbolic_gap = std::min(rep.hyperbolic_gap, re);
                    if (re < o.gap_margin * gap_tol) ambiguous = re;
                }
            }
            (part == BlockPart::SH ? rep.per_n_sh : rep.per_n_con)[n] = std::move(ev);
        }
    }
    for (const auto& e : raw) {
        auto it = std::find_if(rep.central.begin(), rep.central.end(), [&](const CentralEigenvalue& q) {
            return q.n == e.n && q.part == e.part && std::abs(q.value - e.value) < o.cluster_tol;
        });
        if (it != rep.central.end()) ++it->multiplicity;
        else rep.central.push_back(e);
    }
    rep.central_count = static_cast<int>(raw.size());
    if (ambiguous >= 0.0)
        fail("GapViolation", "eigenvalue with |Re| = " + std::to_string(ambiguous) +
                                 " inside the ambiguity band above gap_tol");
    for (const auto& e : rep.central)
        if (std::abs(e.n) > 1)
            fail("GapViolation", "central eigenvalue in block n = " + std::to_string(e.n));
    if (o.expected_count && *o.expected_count != rep.central_count)
        fail("GapViolation", "found " + std::to_string(rep.central_count) +
                                 " central eigenvalues, expected " +
                                 std::to_string(*o.expected_count));
    return rep;
}

std::vector<GrowthSample> asymptotic_growth_check(const ModelParams& P, double c,
                                                  const std::vector<int>& n_range) {
    std::vector<GrowthSample> out;
    const double dc = std::abs(c - P.cu);
    const double cos8 = std::cos(M_PI / 8.0);
    for (int n : n_range) {
        const SpatialBlock b = build_block(P, c, P.cu, n);
        GrowthSample g;
        g.n = n;
        const double an = std::abs(static_cast<double>(n));
        g.predicted_sh = cos8 * std::pow(an * dc, 0.25);
        g.predicted_con = std::sqrt(an * dc) / std::sqrt(2.0);
        for (const cplx& z : block_eigenvalues(b, BlockPart::SH))
            g.computed_sh = std::max(g.computed_sh, std::abs(z.real()));
        for (const cplx& z : block_eigenvalues(b, BlockPart::Con))
            g.computed_con = std::max(g.computed_con, std::abs(z.real()));
        out.push_back(g);
    }
    return out;
}

CentralExpansion central_eigen_expansion(const ModelParams& P, const Scenario& s, double omega0) {
    CentralExpansion ex;
    const double c = front_speed(P, s);
    const double e = P.epsilon;
    const cplx lin = P.alpha0 + I * omega0;
    if (s.tag == ScenarioTag::II || s.tag == ScenarioTag::V) {
        const double c0 = s.c0;
        ex.Delta = std::sqrt(cplx(c0 * c0) - 4.0 * (3.0 * I * P.cu + 4.0) * lin);
        const cplx den = 8.0 + 6.0 * I * P.cu;
        ex.delta = {(-c0 + ex.Delta) / den, (-c0 - ex.Delta) / den};
        ex.sh = {e * ex.delta[0], e * ex.delta[1]};
    } else {
        ex.sh = {e * e * lin / (3.0 * P.cu - c)};
    }
    ex.con = {cplx(0.0), cplx(-(c + P.cv))};
    return ex;
}

cplx adjoint_pairing(const SpatialBlock& b, cplx z, BlockPart part) {
    cplx r;
    if (part == BlockPart::SH) {
        // -d/dz of -(z^4 - D z^3 - C z^2 - B z - A)
        r = 4.0 * z * z * z - 3.0 * b.D * z * z - 2.0 * b.C * z - b.B;
    } else {
        r = -(2.0 * z - b.F);
    }
    if (std::abs(r) < 1e-12) fail("DegeneratePairing", "defective eigenvalue");
    return r;
}

}  // namespace modfront
