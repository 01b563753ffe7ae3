#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "modfront/model.hpp"

namespace modfront {

// Fourier-index-n block of the spatial-dynamics operator.
struct SpatialBlock {
    int n = 0;
    Eigen::Matrix4cd LSH;
    Eigen::Matrix2cd Lcon;
    cplx A, B, C, D, E, F;
};

enum class BlockPart { SH, Con };

struct CentralEigenvalue {
    int n = 0;
    BlockPart part = BlockPart::SH;
    cplx value;
    int multiplicity = 1;
};

struct SpectralReport {
    std::vector<CentralEigenvalue> central;
    int central_count = 0;        // eigenvalues counted with multiplicity
    double hyperbolic_gap = 0.0;  // min |Re| over non-central eigenvalues
    double gap_tol = 0.0;
    int N_max = 0;
    std::map<int, std::vector<cplx>> per_n_sh;
    std::map<int, std::vector<cplx>> per_n_con;
};

struct PartitionOptions {
    double gap_margin = 2.0;     // eigenvalues with gap_tol <= |Re| < gap_margin*gap_tol are ambiguous
    double cluster_tol = 1e-7;
    std::optional<int> expected_count;
};

SpatialBlock build_block(const ModelParams& params, double c, double cp, int n);

// Eigenvalues of a companion block (QR with Newton polish on the characteristic polynomial).
std::vector<cplx> block_eigenvalues(const SpatialBlock& block, BlockPart part);
std::vector<cplx> companion_eigenvalues(const Eigen::MatrixXcd& M);

// Coefficients of det(lambda - L), lowest degree first.
std::array<cplx, 5> sh_characteristic(const SpatialBlock& block);
std::array<cplx, 3> con_characteristic(const SpatialBlock& block);

int expected_central_count(ScenarioTag tag);
double default_gap_tol(ScenarioTag tag, double epsilon);

SpectralReport central_partition(const ModelParams& params, double c, double cp, int N_max,
                                 double gap_tol, const PartitionOptions& options = {});

struct GrowthSample {
    int n = 0;
    double predicted_sh = 0.0;
    double computed_sh = 0.0;
    double predicted_con = 0.0;
    double computed_con = 0.0;
};

// Large-|n| growth of max |Re lambda|: |n|^{1/4} for SH, |n|^{1/2} for the conservation law.
std::vector<GrowthSample> asymptotic_growth_check(const ModelParams& params, double c,
                                                  const std::vector<int>& n_range);

struct CentralExpansion {
    std::vector<cplx> sh;   // leading-order central eigenvalues of the n = 1 block
    std::vector<cplx> con;  // 0 and -(c + c_v)
    cplx Delta;             // scenarios II and V
    std::vector<cplx> delta;
};

CentralExpansion central_eigen_expansion(const ModelParams& params, const Scenario& scenario,
                                         double omega0);

// -d/dlambda of the block's characteristic polynomial, with the SH quartic normalised to
// leading coefficient -1 and the conservation-law quadratic to +1.
cplx adjoint_pairing(const SpatialBlock& block, cplx lambda, BlockPart part);

}  // namespace modfront
