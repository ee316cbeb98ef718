#ifndef SDFF_VARIANT_HPP
#define SDFF_VARIANT_HPP

#include <array>
#include <string>
#include <string_view>

namespace sdff {

enum class LaplacianKind
{
    Up,
    Down,
    Full
};

/// The five (dimension, operator) pairs evaluated by the pipeline.
enum class Variant
{
    VertexUp,       // p=0, up
    EdgeDown,       // p=1, down
    EdgeUp,         // p=1, up
    EdgeBoth,       // p=1, up + down
    TriangleDown    // p=2, down
};

inline constexpr std::array<Variant, 5> kAllVariants = {
    Variant::VertexUp, Variant::EdgeDown, Variant::EdgeUp, Variant::EdgeBoth, Variant::TriangleDown};

constexpr int dimension(Variant v)
{
    switch (v)
    {
        case Variant::VertexUp: return 0;
        case Variant::EdgeDown:
        case Variant::EdgeUp:
        case Variant::EdgeBoth: return 1;
        case Variant::TriangleDown: return 2;
    }
    return 0;
}

constexpr LaplacianKind laplacian_kind(Variant v)
{
    switch (v)
    {
        case Variant::VertexUp:
        case Variant::EdgeUp: return LaplacianKind::Up;
        case Variant::EdgeDown:
        case Variant::TriangleDown: return LaplacianKind::Down;
        case Variant::EdgeBoth: return LaplacianKind::Full;
    }
    return LaplacianKind::Up;
}

std::string_view to_string(Variant v);
std::string_view to_string(LaplacianKind k);

/// Parses "vertex-up", "edge-down", ...; throws Error(InvalidArgument).
Variant parse_variant(std::string_view name);

}   // namespace sdff

#endif
