#ifndef SDFF_COMPLEX_HPP
#define SDFF_COMPLEX_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sdff/supergraph.hpp"

namespace sdff {

/**
 * Clique complex of a super-graph, truncated at dimension 2.
 *
 * Simplices of dimension p are stored flat, p+1 super-node indices each,
 * strictly increasing within a simplex and lexicographically sorted across
 * simplices. That ordering fixes both the orientation of every simplex and
 * the row/column order of the incidence matrices.
 */
class SimplicialComplex
{
    public:
        static constexpr int kMaxDim = 2;

        SimplicialComplex() = default;

        int max_dim() const { return max_dim_; }

        std::size_t count(int p) const;

        std::span<const VertexId> simplex(int p, std::size_t i) const;

        /// Flat storage for dimension p (stride p+1).
        std::span<const VertexId> simplices(int p) const;

        /// Position of a sorted vertex tuple within dimension p.
        std::optional<std::size_t> find(int p, std::span<const VertexId> vertices) const;

        const SimplexWeights& weights(int p) const;

        /// Label id of super-node v.
        Label label(VertexId v) const { return labels_[v]; }
        std::span<const Label> labels() const { return labels_; }

        /// Label tuple of the i-th p-simplex.
        std::vector<Label> label_set(int p, std::size_t i) const;

    private:
        friend SimplicialComplex clique_complex(const SuperGraph& sg, int max_dim);

        void check_dim(int p) const;

        int max_dim_ = -1;
        std::vector<Label> labels_;
        std::array<std::vector<VertexId>, kMaxDim + 1> flat_;
        std::array<SimplexWeights, kMaxDim + 1> weights_;
};

/// Build the clique complex up to `max_dim` (0, 1 or 2).
SimplicialComplex clique_complex(const SuperGraph& sg, int max_dim = SimplicialComplex::kMaxDim);

struct IncidenceEntry
{
    std::uint32_t row;
    std::uint32_t col;
    std::int8_t sign;

    bool operator==(const IncidenceEntry&) const = default;
};

/**
 * Signed incidence between p-simplices (columns) and (p+1)-simplices (rows).
 * Entries are ordered by row, then by column.
 */
struct IncidenceMatrix
{
    int p = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<IncidenceEntry> entries;

    Eigen::MatrixXd dense() const;
};

/**
 * Row for [v0 < ... < v_{p+1}] gets (-1)^j on the face omitting v_j.
 * Throws DimensionUnavailable unless p >= 0 and p+1 <= complex.max_dim().
 */
IncidenceMatrix incidence_matrix(const SimplicialComplex& complex, int p);

}   // namespace sdff

#endif
