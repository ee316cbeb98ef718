#include "sdff/diffusion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "sdff/error.hpp"

namespace sdff {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kNegativeTolerance = 1e-10;

void check_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error(ErrorKind::InvalidArgument, "diffusion time must be positive and finite");
}

// Centring terms of each eigenvector under rho.
struct ModeMoments
{
    Eigen::VectorXd mean;       // a_k
    Eigen::VectorXd spread;     // sum_j rho_j (phi_k(j) - a_k)^2
    double mass = 0.0;          // S
};

ModeMoments moments(const SpectralDecomposition& spec, const ProbabilityDistribution& rho)
{
    const Eigen::Index n = spec.size();
    if (static_cast<std::size_t>(n) != rho.rho.size())
    {
        throw Error(ErrorKind::InvalidArgument,
                    "distribution has " + std::to_string(rho.rho.size()) + " entries for " + std::to_string(n) +
                    " simplices");
    }
    ModeMoments m;
    m.mean = Eigen::VectorXd::Zero(n);
    m.spread = Eigen::VectorXd::Zero(n);
    for (double r : rho.rho)
        m.mass += r;
    if (n == 0)
        return m;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        double a = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            a += rho.rho[static_cast<std::size_t>(j)] * spec.eigenvectors(j, k);
        a /= m.mass;
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const double dev = spec.eigenvectors(j, k) - a;
            s += rho.rho[static_cast<std::size_t>(j)] * dev * dev;
        }
        m.mean(k) = a;
        m.spread(k) = s;
    }
    return m;
}

DFFValues evaluate(const SpectralDecomposition& spec, const ModeMoments& m, double t, Variant variant)
{
    check_time(t);
    const Eigen::Index n = spec.size();
    DFFValues out;
    out.t = t;
    out.variant = variant;
    out.values.assign(static_cast<std::size_t>(n), 0.0);
    if (n <= 1)
        return out;

    Eigen::VectorXd w(n);
    for (Eigen::Index k = 0; k < n; ++k)
        w(k) = std::exp(-2.0 * spec.eigenvalues(k) * t);

    for (Eigen::Index i = 0; i < n; ++i)
    {
        double f = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const double dev = spec.eigenvectors(i, k) - m.mean(k);
            f += w(k) * (m.mass * dev * dev + m.spread(k));
        }
        out.values[static_cast<std::size_t>(i)] = f;
    }
    return out;
}

}   // namespace

SpectralDecomposition decompose(const Eigen::MatrixXd& laplacian)
{
    if (laplacian.rows() != laplacian.cols())
        throw Error(ErrorKind::InvalidArgument, "Laplacian must be square");
    SpectralDecomposition out;
    if (laplacian.rows() == 0)
    {
        out.eigenvalues.resize(0);
        out.eigenvectors.resize(0, 0);
        return out;
    }
    const double asymmetry = (laplacian - laplacian.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry >= kSymmetryTolerance)
        throw Error(ErrorKind::NotSymmetric, "max |L - L^T| = " + std::to_string(asymmetry));

    const Eigen::MatrixXd sym = 0.5 * (laplacian + laplacian.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::ConvergenceFailure, "symmetric eigensolver did not converge");

    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    const double floor = -kNegativeTolerance * std::max(1.0, sym.norm());
    for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k)
    {
        double& lambda = out.eigenvalues(k);
        if (lambda < floor)
            throw Error(ErrorKind::NegativeSpectrum, "eigenvalue " + std::to_string(lambda));
        if (lambda < 0.0)
            lambda = 0.0;
    }
    return out;
}

SpectralDecomposition decompose(const LaplacianMatrix& laplacian)
{
    return decompose(laplacian.matrix);
}

ProbabilityDistribution probability_distribution(const SimplexWeights& weights)
{
    if (weights.weights.empty())
        throw Error(ErrorKind::EmptyDimension, "no " + std::to_string(weights.dimension) + "-simplices");
    double total = 0.0;
    for (double z : weights.weights)
    {
        if (!(z > 0.0))
            throw Error(ErrorKind::InvalidArgument, "simplex weights must be positive");
        total += z;
    }
    ProbabilityDistribution out;
    out.rho.reserve(weights.weights.size());
    for (double z : weights.weights)
        out.rho.push_back(z / total);
    return out;
}

double diffusion_distance_sq(const SpectralDecomposition& spec, std::size_t i, std::size_t j, double t)
{
    check_time(t);
    const auto n = static_cast<std::size_t>(spec.size());
    if (i >= n || j >= n)
        throw Error(ErrorKind::IndexOutOfRange, "simplex index out of range");
    if (i == j)
        return 0.0;
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    double d = 0.0;
    for (Eigen::Index k = 0; k < spec.size(); ++k)
    {
        const double diff = spec.eigenvectors(ii, k) - spec.eigenvectors(jj, k);
        d += std::exp(-2.0 * spec.eigenvalues(k) * t) * diff * diff;
    }
    return d;
}

DFFValues dff(const SpectralDecomposition& spec, const ProbabilityDistribution& rho, double t, Variant variant)
{
    return evaluate(spec, moments(spec, rho), t, variant);
}

std::vector<DFFValues> dff_sweep(const SpectralDecomposition& spec, const ProbabilityDistribution& rho,
                                 const std::vector<double>& t_values, Variant variant)
{
    const ModeMoments m = moments(spec, rho);
    std::vector<DFFValues> out;
    out.reserve(t_values.size());
    for (double t : t_values)
        out.push_back(evaluate(spec, m, t, variant));
    return out;
}

}   // namespace sdff
