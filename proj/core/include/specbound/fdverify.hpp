#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "specbound/report.hpp"
#include "specbound/riesz.hpp"

namespace specbound::fdverify {

/// Exact Dirichlet spectrum of the square of the given side:
/// pi^2 (j^2 + k^2) / side^2 up to lambda_max, sorted with multiplicity.
EigenvalueSpectrum square_spectrum(double side, double lambda_max);

/// Exact square Riesz mean sum (lambda - pi^2 (j^2+k^2)/side^2)_+^sigma.
double square_riesz(double side, double lambda, double sigma);

/// Node mask of a rasterized open domain: unknowns are the grid nodes whose
/// centers satisfy the predicate; excluded nodes realize the Dirichlet
/// condition.
struct RasterDomain {
    double x0 = 0.0, y0 = 0.0;  // coordinates of node (0, 0)
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> inside;   // nx * ny, row-major in x
    std::vector<std::int32_t> node_of;  // -1 outside
    int unknowns = 0;

    static RasterDomain rasterize(const std::function<bool(double, double)>& pred,
                                  double xmin, double xmax, double ymin, double ymax,
                                  double h);
    int index(int ix, int iy) const { return ix + nx * iy; }
};

struct SolverOptions {
    int dense_limit = 3000;      // dense eigensolver up to this many unknowns
    int max_iterations = 0;      // 0 = automatic
    double ritz_tol = 1e-8;      // residual tolerance relative to the fold shift
    std::uint64_t seed = 0x5eedULL;
};

struct SolveDiagnostics {
    int iterations = 0;
    int converged = 0;
    bool used_dense = false;
};

/// Eigenvalues of the 5-point Dirichlet Laplacian below lambda_max.  Dense
/// solve for small masks; otherwise Lanczos with full reorthogonalization on
/// the spectral fold c I - A (c = 8/h^2), which targets the lower spectrum
/// without a sparse factorization.
EigenvalueSpectrum fd_laplacian_spectrum(const RasterDomain& rd, double lambda_max,
                                         const SolverOptions& opts = {},
                                         SolveDiagnostics* diag = nullptr);

/// Largest grid spacing resolving lambda_max with >= 10 nodes per wavelength.
double resolution_guard_max_h(double lambda_max);

/// Truncation-radius rule: domains are cut where the cross-section width has
/// fallen below pi / sqrt(Lambda) (so the tail supports no states below
/// Lambda), times a safety factor.  Dirichlet walls only: truncation raises
/// eigenvalues, the safe direction for verifying upper bounds.
struct TruncationPolicy {
    double safety = 2.0;
};

struct DomainSpec {
    enum class Kind { horn, critical_rotated_horn };
    Kind kind = Kind::horn;
    double nu = 2.0;  // horn exponent (kind == horn)
};

/// Per-axis cutoffs produced by the policy's radius rule; the cross-section
/// width at radius/safety equals pi/sqrt(lambda), so the discarded tails
/// support no states below lambda.
struct TruncationRadii {
    double x = 0.0;
    double y = 0.0;
};

TruncationRadii truncation_radii(const DomainSpec& domain, double lambda,
                                 const TruncationPolicy& policy);

struct EmpiricalResult {
    double value = 0.0;          // Riesz mean at spacing h
    double value_fine = 0.0;     // same at h/2
    double refinement_delta = 0.0;
    EigenvalueSpectrum spectrum;  // at h
    double h = 0.0;
    double trunc_x = 0.0, trunc_y = 0.0;
    int unknowns = 0, unknowns_fine = 0;
    int iterations = 0;
};

/// Rasterizes the truncated domain at spacings h and h/2, computes both FD
/// spectra below lambda and the corresponding Riesz means; the (h, h/2)
/// difference quantifies the discretization error.
EmpiricalResult empirical_riesz(const DomainSpec& domain, double sigma, double lambda,
                                double h, const TruncationPolicy& policy,
                                const SolverOptions& opts = {});

}  // namespace specbound::fdverify
