#ifndef SDFF_FEATURES_HPP
#define SDFF_FEATURES_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdff/complex.hpp"
#include "sdff/diffusion.hpp"
#include "sdff/variant.hpp"

namespace sdff {

using LabelSet = std::vector<Label>;

/// Values at or below this are treated as zero; their feature is 1/kDffFloor.
inline constexpr double kDffFloor = 1e-12;

/// Sorted, duplicate-free label sets of the p-simplices seen across a dataset.
struct FeatureVocabulary
{
    int dimension = 0;
    Variant variant = Variant::VertexUp;
    std::vector<LabelSet> entries;

    std::optional<std::size_t> index_of(const LabelSet& labels) const;
    std::size_t size() const { return entries.size(); }

    bool operator==(const FeatureVocabulary&) const = default;
};

struct FeatureRow
{
    std::int64_t graph_id = 0;
    ClassId class_label = 0;
    std::vector<double> values;

    bool operator==(const FeatureRow&) const = default;
};

struct FeatureMatrix
{
    std::string dataset;
    Variant variant = Variant::VertexUp;
    double t = 1.0;
    FeatureVocabulary vocabulary;
    std::vector<FeatureRow> rows;

    std::size_t width() const { return vocabulary.size(); }
    std::vector<ClassId> classes() const;

    bool operator==(const FeatureMatrix&) const = default;
};

FeatureVocabulary build_vocabulary(std::span<const SimplicialComplex> complexes, int p,
                                   Variant variant = Variant::VertexUp);

/// Vocabulary for a variant (dimension taken from the variant).
FeatureVocabulary build_vocabulary(std::span<const SimplicialComplex> complexes, Variant variant);

/**
 * Reciprocal-DFF feature row: 1/F for present label sets (1/kDffFloor when
 * F <= kDffFloor), 0 for absent ones. Throws VocabularyMismatch when a
 * simplex's label set is not in the vocabulary.
 */
std::vector<double> vectorize(const DFFValues& dff, const SimplicialComplex& complex,
                              const FeatureVocabulary& vocab);

/// "L3", "L3-L7", "L1-L4-L9".
std::string feature_name(const LabelSet& labels);
LabelSet parse_feature_name(const std::string& name);

/**
 * CSV with header `graph_id,class,<feature names>`; values use the shortest
 * representation that round-trips exactly.
 */
void write_feature_csv(const FeatureMatrix& features, std::ostream& out);

/// Inverse of write_feature_csv. Metadata fields are taken from the arguments.
FeatureMatrix read_feature_csv(std::istream& in, const std::string& dataset, Variant variant, double t);

/// Shortest round-trip text form of a double.
std::string format_double(double value);

}   // namespace sdff

#endif
