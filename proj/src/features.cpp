#include "sdff/features.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "sdff/error.hpp"

namespace sdff {

std::optional<std::size_t> FeatureVocabulary::index_of(const LabelSet& labels) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), labels);
    if (it == entries.end() || *it != labels)
        return std::nullopt;
    return static_cast<std::size_t>(it - entries.begin());
}

std::vector<ClassId> FeatureMatrix::classes() const
{
    std::vector<ClassId> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r.class_label);
    return out;
}

FeatureVocabulary build_vocabulary(std::span<const SimplicialComplex> complexes, int p, Variant variant)
{
    std::set<LabelSet> seen;
    for (const auto& cx : complexes)
    {
        if (p > cx.max_dim())
            throw Error(ErrorKind::DimensionUnavailable, "complex not built to dimension " + std::to_string(p));
        for (std::size_t i = 0; i < cx.count(p); ++i)
            seen.insert(cx.label_set(p, i));
    }
    FeatureVocabulary vocab;
    vocab.dimension = p;
    vocab.variant = variant;
    vocab.entries.assign(seen.begin(), seen.end());
    return vocab;
}

FeatureVocabulary build_vocabulary(std::span<const SimplicialComplex> complexes, Variant variant)
{
    return build_vocabulary(complexes, dimension(variant), variant);
}

std::vector<double> vectorize(const DFFValues& dff, const SimplicialComplex& complex, const FeatureVocabulary& vocab)
{
    const int p = vocab.dimension;
    const std::size_t n = complex.count(p);
    if (dff.values.size() != n)
    {
        throw Error(ErrorKind::VocabularyMismatch,
                    "DFF has " + std::to_string(dff.values.size()) + " values for " + std::to_string(n) +
                    " simplices of dimension " + std::to_string(p));
    }
    std::vector<double> row(vocab.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        const LabelSet labels = complex.label_set(p, i);
        const auto slot = vocab.index_of(labels);
        if (!slot)
            throw Error(ErrorKind::VocabularyMismatch, "label set " + feature_name(labels) + " not in vocabulary");
        const double f = dff.values[i];
        row[*slot] = f > kDffFloor ? 1.0 / f : 1.0 / kDffFloor;
    }
    return row;
}

std::string feature_name(const LabelSet& labels)
{
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i)
    {
        if (i > 0)
            out += '-';
        out += 'L';
        out += std::to_string(labels[i]);
    }
    return out;
}

LabelSet parse_feature_name(const std::string& name)
{
    LabelSet out;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, '-'))
    {
        // negative labels serialize as "L-3", which splits into "L" and "3"
        if (part == "L")
        {
            if (!std::getline(ss, part, '-'))
                break;
            part = "L-" + part;
        }
        if (part.size() < 2 || part[0] != 'L')
            throw Error(ErrorKind::MalformedLine, "bad feature name '" + name + "'");
        Label value = 0;
        const char* first = part.data() + 1;
        const char* last = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw Error(ErrorKind::MalformedLine, "bad feature name '" + name + "'");
        out.push_back(value);
    }
    if (out.empty())
        throw Error(ErrorKind::MalformedLine, "empty feature name");
    return out;
}

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_feature_csv(const FeatureMatrix& features, std::ostream& out)
{
    out << "graph_id,class";
    for (const auto& entry : features.vocabulary.entries)
        out << ',' << feature_name(entry);
    out << '\n';
    for (const auto& row : features.rows)
    {
        out << row.graph_id << ',' << row.class_label;
        for (double v : row.values)
            out << ',' << format_double(v);
        out << '\n';
    }
}

FeatureMatrix read_feature_csv(std::istream& in, const std::string& dataset, Variant variant, double t)
{
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    auto parse_int = [](const std::string& s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw Error(ErrorKind::MalformedLine, "expected integer, found '" + s + "'");
        return v;
    };

    FeatureMatrix fm;
    fm.dataset = dataset;
    fm.variant = variant;
    fm.t = t;
    fm.vocabulary.variant = variant;
    fm.vocabulary.dimension = dimension(variant);

    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorKind::MalformedLine, "feature CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "graph_id" || header[1] != "class")
        throw Error(ErrorKind::MalformedLine, "feature CSV header must start with graph_id,class");
    for (std::size_t c = 2; c < header.size(); ++c)
        fm.vocabulary.entries.push_back(parse_feature_name(header[c]));
    if (!std::is_sorted(fm.vocabulary.entries.begin(), fm.vocabulary.entries.end()))
        throw Error(ErrorKind::MalformedLine, "feature columns are not in vocabulary order");

    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw Error(ErrorKind::MalformedLine, "feature row width differs from header");
        FeatureRow row;
        row.graph_id = parse_int(cells[0]);
        row.class_label = parse_int(cells[1]);
        row.values.reserve(cells.size() - 2);
        for (std::size_t c = 2; c < cells.size(); ++c)
        {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
            if (ec != std::errc() || ptr != cells[c].data() + cells[c].size())
                throw Error(ErrorKind::MalformedLine, "bad feature value '" + cells[c] + "'");
            row.values.push_back(v);
        }
        fm.rows.push_back(std::move(row));
    }
    return fm;
}

}   // namespace sdff
