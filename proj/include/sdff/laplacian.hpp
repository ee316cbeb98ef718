#ifndef SDFF_LAPLACIAN_HPP
#define SDFF_LAPLACIAN_HPP

#include <Eigen/Dense>

#include "sdff/complex.hpp"
#include "sdff/variant.hpp"

namespace sdff {

/**
 * Whether the diagonal simplex-weight matrices W_p enter the operator.
 * Identity gives the symmetric forms used for diffusion; Simplex gives the
 * weighted (generally non-symmetric) forms W_p^{-1} D_p^T W_{p+1} D_p and
 * D_{p-1} W_{p-1}^{-1} D_{p-1}^T W_p.
 */
enum class LaplacianWeighting
{
    Identity,
    Simplex
};

struct LaplacianMatrix
{
    int p = 0;
    LaplacianKind kind = LaplacianKind::Up;
    Eigen::MatrixXd matrix;

    Eigen::Index size() const { return matrix.rows(); }
};

/// D_p^T D_p. Needs dimension p+1 in the complex (it may be empty).
LaplacianMatrix up_laplacian(const SimplicialComplex& complex, int p,
                             LaplacianWeighting weighting = LaplacianWeighting::Identity);

/// D_{p-1} D_{p-1}^T. Needs p >= 1.
LaplacianMatrix down_laplacian(const SimplicialComplex& complex, int p,
                               LaplacianWeighting weighting = LaplacianWeighting::Identity);

/// Sum of the up and down operators. Needs p >= 1 and dimension p+1.
LaplacianMatrix full_laplacian(const SimplicialComplex& complex, int p,
                               LaplacianWeighting weighting = LaplacianWeighting::Identity);

LaplacianMatrix laplacian(const SimplicialComplex& complex, int p, LaplacianKind kind,
                          LaplacianWeighting weighting = LaplacianWeighting::Identity);

/// Operator for one of the five pipeline variants.
LaplacianMatrix laplacian(const SimplicialComplex& complex, Variant variant);

}   // namespace sdff

#endif
