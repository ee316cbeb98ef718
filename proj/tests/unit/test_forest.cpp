#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "sdff/forest.hpp"

#include "../support/expect.hpp"

using namespace sdff;

namespace {

struct Data
{
    Eigen::MatrixXd x;
    std::vector<ClassId> y;
};

// 2-D clouds: class 0 near the origin, class 1 near (10, 10).
Data separable(std::size_t per_class, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Data d{Eigen::MatrixXd(static_cast<Eigen::Index>(2 * per_class), 2), {}};
    for (std::size_t i = 0; i < 2 * per_class; ++i)
    {
        const ClassId c = i < per_class ? 0 : 1;
        const double centre = c == 0 ? 0.0 : 10.0;
        d.x(static_cast<Eigen::Index>(i), 0) = centre + noise(rng);
        d.x(static_cast<Eigen::Index>(i), 1) = centre + noise(rng);
        d.y.push_back(c);
    }
    return d;
}

Data noise_features(std::size_t n, std::size_t d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Data out{Eigen::MatrixXd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d)), {}};
    for (Eigen::Index i = 0; i < out.x.rows(); ++i)
        for (Eigen::Index j = 0; j < out.x.cols(); ++j)
            out.x(i, j) = u(rng);
    for (std::size_t i = 0; i < n; ++i)
        out.y.push_back(static_cast<ClassId>(i % 2));
    std::shuffle(out.y.begin(), out.y.end(), rng);
    return out;
}

double accuracy(const std::vector<ClassId>& a, const std::vector<ClassId>& b)
{
    std::size_t hit = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        hit += a[i] == b[i];
    return static_cast<double>(hit) / static_cast<double>(a.size());
}

bool same_structure(const RandomForest& a, const RandomForest& b, bool compare_thresholds)
{
    if (a.trees().size() != b.trees().size())
        return false;
    for (std::size_t t = 0; t < a.trees().size(); ++t)
    {
        const auto& na = a.trees()[t].nodes();
        const auto& nb = b.trees()[t].nodes();
        if (na.size() != nb.size())
            return false;
        for (std::size_t k = 0; k < na.size(); ++k)
        {
            if (na[k].feature != nb[k].feature || na[k].left != nb[k].left || na[k].right != nb[k].right ||
                na[k].prediction != nb[k].prediction)
                return false;
            if (compare_thresholds && na[k].threshold != nb[k].threshold)
                return false;
        }
    }
    return true;
}

}   // namespace

TEST_SUITE("forest")
{
    TEST_CASE("stratified folds: balanced ten")
    {
        const std::vector<ClassId> y = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
        const auto folds = stratified_kfold(y, 10, 4);
        std::vector<int> sizes(10, 0);
        for (const auto f : folds)
            ++sizes.at(f);
        CHECK(std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 1; }));
    }

    TEST_CASE("stratified folds: 188 samples")
    {
        std::vector<ClassId> y(125, 1);
        y.insert(y.end(), 63, -1);
        for (const std::uint64_t seed : {0u, 1u, 77u})
        {
            const auto folds = stratified_kfold(y, 10, seed);
            REQUIRE(folds.size() == 188);
            std::vector<int> sizes(10, 0);
            std::vector<int> pos(10, 0);
            for (std::size_t i = 0; i < y.size(); ++i)
            {
                ++sizes[folds[i]];
                pos[folds[i]] += y[i] == 1;
            }
            CHECK(std::count(sizes.begin(), sizes.end(), 19) == 8);
            CHECK(std::count(sizes.begin(), sizes.end(), 18) == 2);
            for (int k = 0; k < 10; ++k)
            {
                // 12.5 positives expected per fold
                CHECK(pos[k] >= 12);
                CHECK(pos[k] <= 13);
            }
            CHECK(stratified_kfold(y, 10, seed) == folds);
        }
        CHECK(stratified_kfold(y, 10, 1) != stratified_kfold(y, 10, 2));
    }

    TEST_CASE("fold errors")
    {
        const std::vector<ClassId> y = {0, 1, 0};
        SDFF_CHECK_THROWS_KIND(stratified_kfold(y, 1, 0), ErrorKind::TooFewSamples);
        SDFF_CHECK_THROWS_KIND(stratified_kfold(y, 4, 0), ErrorKind::TooFewSamples);
    }

    TEST_CASE("separable clouds are fit exactly")
    {
        const auto d = separable(50, 1);
        const auto forest = train(d.x, d.y, ForestConfig{});
        CHECK(forest.trees().size() == 100);
        CHECK(forest.classes() == std::vector<ClassId>{0, 1});
        CHECK(accuracy(predict(forest, d.x), d.y) == 1.0);
        CHECK_FALSE(forest.degenerate());
    }

    TEST_CASE("constant features predict the majority")
    {
        Eigen::MatrixXd x = Eigen::MatrixXd::Constant(30, 3, 2.5);
        std::vector<ClassId> y(30, 4);
        std::fill(y.begin(), y.begin() + 11, 9);
        const auto forest = train(x, y, ForestConfig{});
        Eigen::MatrixXd probe(3, 3);
        probe << 0, 0, 0, 2.5, 2.5, 2.5, 100, -1, 7;
        CHECK(predict(forest, probe) == std::vector<ClassId>{4, 4, 4});
    }

    TEST_CASE("single training sample")
    {
        Eigen::MatrixXd x(1, 2);
        x << 0.3, 0.7;
        const std::vector<ClassId> y = {5};
        const auto forest = train(x, y, ForestConfig{});
        CHECK(forest.degenerate());
        Eigen::MatrixXd probe = Eigen::MatrixXd::Random(4, 2);
        CHECK(predict(forest, probe) == std::vector<ClassId>(4, 5));
    }

    TEST_CASE("predict edge cases and input errors")
    {
        const auto d = separable(5, 2);
        const auto forest = train(d.x, d.y, ForestConfig{.num_trees = 5});
        CHECK(predict(forest, Eigen::MatrixXd(0, 2)).empty());
        SDFF_CHECK_THROWS_KIND(predict(forest, Eigen::MatrixXd::Zero(2, 3)), ErrorKind::WidthMismatch);

        const std::vector<ClassId> short_y = {0, 1};
        SDFF_CHECK_THROWS_KIND(train(d.x, short_y, ForestConfig{}), ErrorKind::InvalidArgument);
        SDFF_CHECK_THROWS_KIND(train(Eigen::MatrixXd(0, 2), std::vector<ClassId>{}, ForestConfig{}),
                               ErrorKind::InvalidArgument);
        SDFF_CHECK_THROWS_KIND(train(d.x, d.y, ForestConfig{.max_features = 3}), ErrorKind::InvalidArgument);
        SDFF_CHECK_THROWS_KIND(train(d.x, d.y, ForestConfig{.num_trees = 0}), ErrorKind::InvalidArgument);
    }

    TEST_CASE("max_depth and features_per_split")
    {
        CHECK(ForestConfig{}.features_per_split(1) == 1);
        CHECK(ForestConfig{}.features_per_split(10) == 3);
        CHECK(ForestConfig{}.features_per_split(16) == 4);
        CHECK(ForestConfig{.max_features = 2}.features_per_split(10) == 2);

        const auto d = noise_features(80, 4, 3);
        const auto forest = train(d.x, d.y, ForestConfig{.num_trees = 10, .max_depth = 2});
        for (const auto& tree : forest.trees())
            CHECK(tree.depth() <= 2);
    }

    TEST_CASE("thread count does not change the forest")
    {
        const auto d = noise_features(60, 5, 11);
        const auto serial = train(d.x, d.y, ForestConfig{.num_trees = 40, .seed = 9, .jobs = 1});
        const auto threaded = train(d.x, d.y, ForestConfig{.num_trees = 40, .seed = 9, .jobs = 4});
        CHECK(same_structure(serial, threaded, true));
        const auto other = train(d.x, d.y, ForestConfig{.num_trees = 40, .seed = 10, .jobs = 1});
        CHECK_FALSE(same_structure(serial, other, true));

        const auto a = cross_validate(d.x, d.y, 5, ForestConfig{.num_trees = 20, .seed = 2, .jobs = 1});
        const auto b = cross_validate(d.x, d.y, 5, ForestConfig{.num_trees = 20, .seed = 2, .jobs = 3});
        CHECK(a.fold_accuracies == b.fold_accuracies);
        CHECK(a.confusion == b.confusion);
    }

    TEST_CASE("strictly increasing column transform keeps tree structure")
    {
        const auto d = noise_features(70, 4, 21);
        for (Eigen::Index col = 0; col < d.x.cols(); ++col)
        {
            Eigen::MatrixXd z = d.x;
            for (Eigen::Index i = 0; i < z.rows(); ++i)
                z(i, col) = std::exp(3.0 * z(i, col)) + z(i, col) * z(i, col) * z(i, col);
            const ForestConfig cfg{.num_trees = 25, .seed = 5};
            const auto fa = train(d.x, d.y, cfg);
            const auto fb = train(z, d.y, cfg);
            CHECK(same_structure(fa, fb, false));
            CHECK(predict(fa, d.x) == predict(fb, z));
        }
    }

    TEST_CASE("cross-validation on separable data")
    {
        const auto d = separable(50, 6);
        const auto r = cross_validate(d.x, d.y, 10, ForestConfig{.seed = 3});
        CHECK(r.mean_accuracy >= 0.95);
        CHECK(r.fold_accuracies.size() == 10);
        CHECK(r.k == 10);

        double mean = 0.0;
        for (const double a : r.fold_accuracies)
            mean += a;
        mean /= 10.0;
        CHECK(std::abs(mean - r.mean_accuracy) < 1e-15);

        std::size_t total = 0;
        for (const auto& row : r.confusion)
            for (const auto c : row)
                total += c;
        CHECK(total == 100);
    }

    TEST_CASE("shuffled labels sit near chance")
    {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed)
        {
            const auto d = noise_features(100, 6, 1000 + seed);
            const auto r = cross_validate(d.x, d.y, 10, ForestConfig{.num_trees = 50, .seed = seed});
            sum += r.mean_accuracy;
        }
        const double mean = sum / 10.0;
        CHECK(mean >= 0.35);
        CHECK(mean <= 0.65);
    }

    TEST_CASE("constant features with a 70/30 split")
    {
        Eigen::MatrixXd x = Eigen::MatrixXd::Ones(100, 3);
        std::vector<ClassId> y(100, 0);
        std::fill(y.begin() + 70, y.end(), 1);
        const auto r = cross_validate(x, y, 10, ForestConfig{.num_trees = 20, .seed = 1});
        CHECK(std::abs(r.mean_accuracy - 0.70) <= 0.05);
    }

    TEST_CASE("mix_seed streams differ")
    {
        CHECK(mix_seed(0, 0) != mix_seed(0, 1));
        CHECK(mix_seed(1, 0) != mix_seed(0, 1));
        CHECK(mix_seed(5, 5) == mix_seed(5, 5));
    }
}
