#include "sdff/laplacian.hpp"

#include <string>
#include <vector>

#include "sdff/error.hpp"

namespace sdff {

namespace {

Eigen::MatrixXd zeros(std::size_t n)
{
    const auto m = static_cast<Eigen::Index>(n);
    return Eigen::MatrixXd::Zero(m, m);
}

}   // namespace

LaplacianMatrix up_laplacian(const SimplicialComplex& complex, int p, LaplacianWeighting weighting)
{
    if (p < 0 || p + 1 > complex.max_dim())
    {
        throw Error(ErrorKind::DimensionUnavailable,
                    "up Laplacian in dimension " + std::to_string(p) + " needs dimension " + std::to_string(p + 1));
    }
    const IncidenceMatrix d = incidence_matrix(complex, p);
    LaplacianMatrix out{p, LaplacianKind::Up, zeros(d.cols)};
    const bool weighted = weighting == LaplacianWeighting::Simplex;
    const auto& z_lo = complex.weights(p).weights;
    const auto& z_hi = complex.weights(p + 1).weights;

    const std::size_t stride = static_cast<std::size_t>(p + 2);
    for (std::size_t r = 0; r < d.rows; ++r)
    {
        const double wr = weighted ? z_hi[r] : 1.0;
        for (std::size_t a = 0; a < stride; ++a)
        {
            const auto& ea = d.entries[r * stride + a];
            for (std::size_t b = 0; b < stride; ++b)
            {
                const auto& eb = d.entries[r * stride + b];
                out.matrix(ea.col, eb.col) += wr * ea.sign * eb.sign;
            }
        }
    }
    if (weighted)
    {
        for (Eigen::Index j = 0; j < out.matrix.rows(); ++j)
            out.matrix.row(j) /= z_lo[static_cast<std::size_t>(j)];
    }
    return out;
}

LaplacianMatrix down_laplacian(const SimplicialComplex& complex, int p, LaplacianWeighting weighting)
{
    if (p < 1 || p > complex.max_dim())
    {
        throw Error(ErrorKind::DimensionUnavailable,
                    "down Laplacian is undefined in dimension " + std::to_string(p));
    }
    const IncidenceMatrix d = incidence_matrix(complex, p - 1);
    LaplacianMatrix out{p, LaplacianKind::Down, zeros(d.rows)};
    const bool weighted = weighting == LaplacianWeighting::Simplex;
    const auto& z_lo = complex.weights(p - 1).weights;
    const auto& z_hi = complex.weights(p).weights;

    // Transpose to columns: every face lists its cofaces with signs.
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> cofaces(d.cols);
    for (const auto& e : d.entries)
        cofaces[e.col].emplace_back(e.row, e.sign);

    for (std::size_t c = 0; c < d.cols; ++c)
    {
        const double wc = weighted ? 1.0 / z_lo[c] : 1.0;
        for (const auto& [i, si] : cofaces[c])
        {
            for (const auto& [k, sk] : cofaces[c])
                out.matrix(i, k) += wc * si * sk;
        }
    }
    if (weighted)
    {
        for (Eigen::Index k = 0; k < out.matrix.cols(); ++k)
            out.matrix.col(k) *= z_hi[static_cast<std::size_t>(k)];
    }
    return out;
}

LaplacianMatrix full_laplacian(const SimplicialComplex& complex, int p, LaplacianWeighting weighting)
{
    if (p < 1)
        throw Error(ErrorKind::DimensionUnavailable, "full Laplacian needs p >= 1");
    LaplacianMatrix up = up_laplacian(complex, p, weighting);
    const LaplacianMatrix down = down_laplacian(complex, p, weighting);
    up.kind = LaplacianKind::Full;
    up.matrix += down.matrix;
    return up;
}

LaplacianMatrix laplacian(const SimplicialComplex& complex, int p, LaplacianKind kind, LaplacianWeighting weighting)
{
    switch (kind)
    {
        case LaplacianKind::Up: return up_laplacian(complex, p, weighting);
        case LaplacianKind::Down: return down_laplacian(complex, p, weighting);
        case LaplacianKind::Full: return full_laplacian(complex, p, weighting);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown Laplacian kind");
}

LaplacianMatrix laplacian(const SimplicialComplex& complex, Variant variant)
{
    return laplacian(complex, dimension(variant), laplacian_kind(variant));
}

}   // namespace sdff
