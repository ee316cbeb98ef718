#include "sdff/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "sdff/error.hpp"

namespace sdff {

namespace {

using Rng = std::mt19937_64;
__extension__ typedef unsigned __int128 Wide;

// Unbiased draw from [0, n) (Lemire's multiply-and-reject), fixed across
// standard libraries unlike std::uniform_int_distribution.
std::size_t uniform_index(Rng& rng, std::size_t n)
{
    const auto range = static_cast<std::uint64_t>(n);
    std::uint64_t x = rng();
    Wide m = static_cast<Wide>(x) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range)
    {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold)
        {
            x = rng();
            m = static_cast<Wide>(x) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

std::size_t majority(std::span<const std::size_t> counts)
{
    // first maximum, i.e. the smallest class id among ties
    return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}   // namespace

std::size_t ForestConfig::features_per_split(std::size_t d) const
{
    if (d == 0)
        return 0;
    std::size_t m = max_features.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))));
    return std::clamp<std::size_t>(m, 1, d);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t DecisionTree::predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const
{
    std::int32_t at = 0;
    while (nodes_[static_cast<std::size_t>(at)].feature >= 0)
    {
        const Node& n = nodes_[static_cast<std::size_t>(at)];
        at = x(n.feature) <= n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(at)].prediction;
}

DecisionTree DecisionTree::constant(std::size_t prediction)
{
    DecisionTree tree;
    tree.nodes_.push_back({});
    tree.nodes_.back().prediction = prediction;
    return tree;
}

std::size_t DecisionTree::depth() const
{
    if (nodes_.empty())
        return 0;
    std::vector<std::size_t> level(nodes_.size(), 0);
    std::size_t deepest = 0;
    // children are always appended after their parent
    for (std::size_t i = 0; i < nodes_.size(); ++i)
    {
        deepest = std::max(deepest, level[i]);
        if (nodes_[i].feature >= 0)
        {
            level[static_cast<std::size_t>(nodes_[i].left)] = level[i] + 1;
            level[static_cast<std::size_t>(nodes_[i].right)] = level[i] + 1;
        }
    }
    return deepest;
}

class TreeBuilder
{
    public:
        TreeBuilder(const Eigen::MatrixXd& x, const std::vector<std::size_t>& y, std::size_t num_classes,
                    const ForestConfig& cfg, std::uint64_t seed)
            : x_(x), y_(y), num_classes_(num_classes), cfg_(cfg), rng_(seed),
              mtry_(cfg.features_per_split(static_cast<std::size_t>(x.cols())))
        {
        }

        DecisionTree build()
        {
            const std::size_t n = static_cast<std::size_t>(x_.rows());
            std::vector<std::size_t> sample(n);
            for (auto& s : sample)
                s = uniform_index(rng_, n);
            DecisionTree tree;
            grow(tree, sample, 0);
            return tree;
        }

    private:
        struct Split
        {
            std::int32_t feature = -1;
            double threshold = 0.0;
            double score = -1.0;    // sum over children of sum_c count_c^2 / n_child
        };

        std::int32_t grow(DecisionTree& tree, std::vector<std::size_t>& samples, std::size_t depth)
        {
            std::vector<std::size_t> counts(num_classes_, 0);
            for (std::size_t s : samples)
                ++counts[y_[s]];

            const auto id = static_cast<std::int32_t>(tree.nodes_.size());
            tree.nodes_.push_back({});
            tree.nodes_.back().prediction = majority(counts);

            const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
            const bool capped = cfg_.max_depth && depth >= *cfg_.max_depth;
            if (pure || capped || samples.size() < cfg_.min_samples_split)
                return id;

            const Split split = best_split(samples);
            if (split.feature < 0)
                return id;

            std::vector<std::size_t> left;
            std::vector<std::size_t> right;
            for (std::size_t s : samples)
                (x_(static_cast<Eigen::Index>(s), split.feature) <= split.threshold ? left : right).push_back(s);
            samples.clear();
            samples.shrink_to_fit();

            const std::int32_t l = grow(tree, left, depth + 1);
            const std::int32_t r = grow(tree, right, depth + 1);
            auto& node = tree.nodes_[static_cast<std::size_t>(id)];
            node.feature = split.feature;
            node.threshold = split.threshold;
            node.left = l;
            node.right = r;
            return id;
        }

        Split best_split(const std::vector<std::size_t>& samples)
        {
            const auto d = static_cast<std::size_t>(x_.cols());
            std::vector<std::size_t> order(d);
            std::iota(order.begin(), order.end(), 0);

            Split best;
            std::size_t evaluated = 0;
            // Partial Fisher-Yates: draw features one at a time. Keep drawing
            // past mtry until at least one feature admits a split.
            for (std::size_t i = 0; i < d; ++i)
            {
                if (evaluated >= mtry_ && best.feature >= 0)
                    break;
                std::swap(order[i], order[i + uniform_index(rng_, d - i)]);
                evaluate(static_cast<std::int32_t>(order[i]), samples, best);
                ++evaluated;
            }
            return best;
        }

        void evaluate(std::int32_t feature, const std::vector<std::size_t>& samples, Split& best)
        {
            values_.clear();
            for (std::size_t s : samples)
                values_.emplace_back(x_(static_cast<Eigen::Index>(s), feature), y_[s]);
            std::sort(values_.begin(), values_.end());
            if (values_.front().first == values_.back().first)
                return;

            left_.assign(num_classes_, 0);
            right_.assign(num_classes_, 0);
            for (const auto& [v, c] : values_)
                ++right_[c];
            double left_sq = 0.0;
            double right_sq = 0.0;
            for (std::size_t c = 0; c < num_classes_; ++c)
                right_sq += static_cast<double>(right_[c]) * static_cast<double>(right_[c]);

            const std::size_t n = values_.size();
            for (std::size_t i = 0; i + 1 < n; ++i)
            {
                const std::size_t c = values_[i].second;
                left_sq += 2.0 * static_cast<double>(left_[c]) + 1.0;
                right_sq -= 2.0 * static_cast<double>(right_[c]) - 1.0;
                ++left_[c];
                --right_[c];
                if (values_[i].first == values_[i + 1].first)
                    continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = static_cast<double>(n - i - 1);
                const double score = left_sq / nl + right_sq / nr;
                if (score > best.score)
                {
                    const double lo = values_[i].first;
                    const double hi = values_[i + 1].first;
                    double mid = lo + (hi - lo) / 2.0;
                    if (!(mid < hi))
                        mid = lo;
                    best = {feature, mid, score};
                }
            }
        }

        const Eigen::MatrixXd& x_;
        const std::vector<std::size_t>& y_;
        std::size_t num_classes_;
        const ForestConfig& cfg_;
        Rng rng_;
        std::size_t mtry_;

        std::vector<std::pair<double, std::size_t>> values_;
        std::vector<std::size_t> left_;
        std::vector<std::size_t> right_;
};

RandomForest train(const Eigen::MatrixXd& x, std::span<const ClassId> y, const ForestConfig& cfg)
{
    if (x.rows() == 0)
        throw Error(ErrorKind::InvalidArgument, "no training samples");
    if (static_cast<std::size_t>(x.rows()) != y.size())
        throw Error(ErrorKind::InvalidArgument, "sample count and label count differ");
    if (cfg.num_trees < 1)
        throw Error(ErrorKind::InvalidArgument, "num_trees must be at least 1");
    if (cfg.max_features && (*cfg.max_features < 1 || (x.cols() > 0 && *cfg.max_features > static_cast<std::size_t>(x.cols()))))
        throw Error(ErrorKind::InvalidArgument, "max_features must lie in [1, d]");
    if (!x.allFinite())
        throw Error(ErrorKind::InvalidArgument, "features contain NaN or infinity");

    RandomForest forest;
    forest.width_ = static_cast<std::size_t>(x.cols());
    forest.classes_.assign(y.begin(), y.end());
    std::sort(forest.classes_.begin(), forest.classes_.end());
    forest.classes_.erase(std::unique(forest.classes_.begin(), forest.classes_.end()), forest.classes_.end());

    if (forest.classes_.size() == 1 || x.cols() == 0)
    {
        std::vector<std::size_t> counts(forest.classes_.size(), 0);
        for (ClassId c : y)
            ++counts[static_cast<std::size_t>(std::lower_bound(forest.classes_.begin(), forest.classes_.end(), c) -
                                              forest.classes_.begin())];
        forest.trees_.assign(1, DecisionTree::constant(majority(counts)));
        forest.degenerate_ = forest.classes_.size() == 1;
        return forest;
    }

    std::vector<std::size_t> y_index(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        y_index[i] = static_cast<std::size_t>(
            std::lower_bound(forest.classes_.begin(), forest.classes_.end(), y[i]) - forest.classes_.begin());
    }

    forest.trees_.resize(cfg.num_trees);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t t = next++; t < cfg.num_trees; t = next++)
        {
            TreeBuilder builder(x, y_index, forest.classes_.size(), cfg, mix_seed(cfg.seed, t));
            forest.trees_[t] = builder.build();
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(cfg.jobs, 1, cfg.num_trees);
    if (jobs == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }
    return forest;
}

std::vector<ClassId> RandomForest::predict(const Eigen::MatrixXd& rows) const
{
    if (rows.rows() > 0 && static_cast<std::size_t>(rows.cols()) != width_)
    {
        throw Error(ErrorKind::WidthMismatch,
                    "expected " + std::to_string(width_) + " features, got " + std::to_string(rows.cols()));
    }
    std::vector<ClassId> out;
    out.reserve(static_cast<std::size_t>(rows.rows()));
    std::vector<std::size_t> votes(classes_.size());
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
    {
        std::fill(votes.begin(), votes.end(), 0);
        for (const auto& tree : trees_)
            ++votes[tree.predict(rows.row(r))];
        out.push_back(classes_[majority(votes)]);
    }
    return out;
}

std::vector<ClassId> predict(const RandomForest& forest, const Eigen::MatrixXd& rows)
{
    return forest.predict(rows);
}

std::vector<std::size_t> stratified_kfold(std::span<const ClassId> class_labels, std::size_t k, std::uint64_t seed)
{
    if (k < 2 || k > class_labels.size())
    {
        throw Error(ErrorKind::TooFewSamples,
                    std::to_string(k) + " folds requested for " + std::to_string(class_labels.size()) + " samples");
    }
    std::map<ClassId, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < class_labels.size(); ++i)
        members[class_labels[i]].push_back(i);

    Rng rng(mix_seed(seed, 0xf01d));
    std::vector<std::size_t> fold(class_labels.size());
    std::size_t offset = 0;
    for (auto& [cls, idx] : members)
    {
        shuffle(idx, rng);
        for (std::size_t pos = 0; pos < idx.size(); ++pos)
            fold[idx[pos]] = (offset + pos) % k;
        offset = (offset + idx.size()) % k;
    }
    return fold;
}

Eigen::MatrixXd to_matrix(const FeatureMatrix& features)
{
    Eigen::MatrixXd x(static_cast<Eigen::Index>(features.rows.size()), static_cast<Eigen::Index>(features.width()));
    for (std::size_t r = 0; r < features.rows.size(); ++r)
    {
        const auto& row = features.rows[r];
        if (row.values.size() != features.width())
            throw Error(ErrorKind::WidthMismatch, "feature row width differs from vocabulary");
        for (std::size_t c = 0; c < row.values.size(); ++c)
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row.values[c];
    }
    return x;
}

CVReport cross_validate(const Eigen::MatrixXd& x, std::span<const ClassId> y, std::size_t k, const ForestConfig& cfg)
{
    if (static_cast<std::size_t>(x.rows()) != y.size())
        throw Error(ErrorKind::InvalidArgument, "sample count and label count differ");
    const auto folds = stratified_kfold(y, k, cfg.seed);

    CVReport report;
    report.seed = cfg.seed;
    report.k = k;
    report.config = cfg;
    report.classes.assign(y.begin(), y.end());
    std::sort(report.classes.begin(), report.classes.end());
    report.classes.erase(std::unique(report.classes.begin(), report.classes.end()), report.classes.end());
    report.confusion.assign(report.classes.size(), std::vector<std::size_t>(report.classes.size(), 0));
    auto class_pos = [&](ClassId c) {
        return static_cast<std::size_t>(std::lower_bound(report.classes.begin(), report.classes.end(), c) -
                                        report.classes.begin());
    };

    for (std::size_t f = 0; f < k; ++f)
    {
        std::vector<Eigen::Index> train_idx;
        std::vector<Eigen::Index> test_idx;
        for (std::size_t i = 0; i < folds.size(); ++i)
            (folds[i] == f ? test_idx : train_idx).push_back(static_cast<Eigen::Index>(i));

        const Eigen::MatrixXd x_train = x(train_idx, Eigen::all);
        const Eigen::MatrixXd x_test = x(test_idx, Eigen::all);
        std::vector<ClassId> y_train;
        y_train.reserve(train_idx.size());
        for (auto i : train_idx)
            y_train.push_back(y[static_cast<std::size_t>(i)]);

        ForestConfig fold_cfg = cfg;
        fold_cfg.seed = mix_seed(cfg.seed, 1000 + f);
        const RandomForest forest = train(x_train, y_train, fold_cfg);
        const auto predicted = forest.predict(x_test);

        std::size_t correct = 0;
        for (std::size_t i = 0; i < test_idx.size(); ++i)
        {
            const ClassId truth = y[static_cast<std::size_t>(test_idx[i])];
            correct += predicted[i] == truth ? 1 : 0;
            ++report.confusion[class_pos(truth)][class_pos(predicted[i])];
        }
        report.fold_accuracies.push_back(test_idx.empty() ? 0.0
                                                          : static_cast<double>(correct) /
                                                                static_cast<double>(test_idx.size()));
    }

    double sum = 0.0;
    for (double a : report.fold_accuracies)
        sum += a;
    report.mean_accuracy = sum / static_cast<double>(k);
    double var = 0.0;
    for (double a : report.fold_accuracies)
        var += (a - report.mean_accuracy) * (a - report.mean_accuracy);
    report.std_accuracy = std::sqrt(var / static_cast<double>(k));
    return report;
}

CVReport cross_validate(const FeatureMatrix& features, std::size_t k, const ForestConfig& cfg)
{
    const auto y = features.classes();
    return cross_validate(to_matrix(features), y, k, cfg);
}

}   // namespace sdff
