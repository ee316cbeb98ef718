#ifndef SDFF_DIFFUSION_HPP
#define SDFF_DIFFUSION_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdff/laplacian.hpp"
#include "sdff/supergraph.hpp"
#include "sdff/variant.hpp"

namespace sdff {

/// Ascending eigenvalues (clamped at 0) with orthonormal eigenvector columns.
struct SpectralDecomposition
{
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }
};

struct ProbabilityDistribution
{
    std::vector<double> rho;
};

struct DFFValues
{
    double t = 0.0;
    Variant variant = Variant::VertexUp;
    std::vector<double> values;
};

/**
 * Full symmetric eigendecomposition.
 *
 * The input must be symmetric to 1e-12 (NotSymmetric otherwise) and is
 * averaged with its transpose first. Eigenvalues in [-1e-10 * max(1, |L|_F), 0)
 * are clamped to zero; anything lower throws NegativeSpectrum.
 */
SpectralDecomposition decompose(const Eigen::MatrixXd& laplacian);
SpectralDecomposition decompose(const LaplacianMatrix& laplacian);

/// rho_i = z_i / sum(z). Throws EmptyDimension for no simplices.
ProbabilityDistribution probability_distribution(const SimplexWeights& weights);

/// sum_k exp(-2 lambda_k t) (phi_k(i) - phi_k(j))^2
double diffusion_distance_sq(const SpectralDecomposition& spec, std::size_t i, std::size_t j, double t);

/**
 * Per-simplex Fréchet values F(i) = sum_j d_t^2(i, j) rho_j.
 *
 * Uses the centred form
 *   F(i) = sum_k w_k [ S (phi_k(i) - a_k)^2 + sum_j rho_j (phi_k(j) - a_k)^2 ]
 * with w_k = exp(-2 lambda_k t), S = sum(rho), a_k = sum_j rho_j phi_k(j) / S,
 * which is O(n^2) and a sum of non-negative terms.
 */
DFFValues dff(const SpectralDecomposition& spec, const ProbabilityDistribution& rho, double t,
              Variant variant = Variant::VertexUp);

/**
 * Evaluate one spectrum at several times. The per-mode centring terms are
 * shared; only the exponential weights change with t.
 */
std::vector<DFFValues> dff_sweep(const SpectralDecomposition& spec, const ProbabilityDistribution& rho,
                                 const std::vector<double>& t_values, Variant variant);

}   // namespace sdff

#endif
