/**
 * Random-forest classifier (bootstrap-aggregated CART trees with Gini
 * splits) and stratified k-fold cross-validation.
 */

#ifndef SDFF_FOREST_HPP
#define SDFF_FOREST_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sdff/features.hpp"

namespace sdff {

struct ForestConfig
{
    std::size_t num_trees = 100;
    std::optional<std::size_t> max_features;    // default floor(sqrt(d)), at least 1
    std::size_t min_samples_split = 2;
    std::optional<std::size_t> max_depth;       // unlimited when empty
    std::uint64_t seed = 0;
    std::size_t jobs = 1;                       // worker threads for tree training

    /// Features drawn per split for a given width d.
    std::size_t features_per_split(std::size_t d) const;
};

/// SplitMix64 step; used to derive independent per-tree and per-fold seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class DecisionTree
{
    public:
        struct Node
        {
            // Leaves have feature == -1.
            std::int32_t feature = -1;
            double threshold = 0.0;     // go left when x <= threshold
            std::int32_t left = -1;
            std::int32_t right = -1;
            std::size_t prediction = 0; // index into the forest's class list
        };

        std::size_t predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
        const std::vector<Node>& nodes() const { return nodes_; }
        std::size_t depth() const;

        /// Single-leaf tree that always predicts `prediction`.
        static DecisionTree constant(std::size_t prediction);

    private:
        friend class TreeBuilder;
        std::vector<Node> nodes_;
};

class RandomForest
{
    public:
        /// Predicted class per row; ties go to the smaller class id.
        std::vector<ClassId> predict(const Eigen::MatrixXd& rows) const;

        const std::vector<DecisionTree>& trees() const { return trees_; }
        const std::vector<ClassId>& classes() const { return classes_; }
        std::size_t width() const { return width_; }
        bool degenerate() const { return degenerate_; }

    private:
        friend RandomForest train(const Eigen::MatrixXd&, std::span<const ClassId>, const ForestConfig&);

        std::vector<DecisionTree> trees_;
        std::vector<ClassId> classes_;  // sorted
        std::size_t width_ = 0;
        bool degenerate_ = false;       // single class: constant predictor
};

/**
 * Fit `cfg.num_trees` trees, each on a bootstrap sample of size n.
 * A single-class input yields a constant predictor flagged degenerate().
 * Throws InvalidArgument for empty or mismatched input.
 */
RandomForest train(const Eigen::MatrixXd& x, std::span<const ClassId> y, const ForestConfig& cfg);

/// Throws WidthMismatch when the column count differs from training.
std::vector<ClassId> predict(const RandomForest& forest, const Eigen::MatrixXd& rows);

/**
 * Fold index (0..k-1) per sample. Each class is shuffled and dealt
 * round-robin, continuing where the previous class stopped, so every fold
 * holds floor or ceil of each class's share. Throws TooFewSamples when
 * k < 2 or k exceeds the number of samples.
 */
std::vector<std::size_t> stratified_kfold(std::span<const ClassId> class_labels, std::size_t k, std::uint64_t seed);

struct CVReport
{
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population standard deviation over folds
    std::vector<ClassId> classes;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted], summed over folds
    std::uint64_t seed = 0;
    std::size_t k = 0;
    ForestConfig config;
};

CVReport cross_validate(const FeatureMatrix& features, std::size_t k, const ForestConfig& cfg);
CVReport cross_validate(const Eigen::MatrixXd& x, std::span<const ClassId> y, std::size_t k, const ForestConfig& cfg);

/// Dense n x d matrix of a feature table's rows.
Eigen::MatrixXd to_matrix(const FeatureMatrix& features);

}   // namespace sdff

#endif
