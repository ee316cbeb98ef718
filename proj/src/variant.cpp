#include "sdff/variant.hpp"

#include "sdff/error.hpp"

namespace sdff {

std::string_view to_string(Variant v)
{
    switch (v)
    {
        case Variant::VertexUp: return "vertex-up";
        case Variant::EdgeDown: return "edge-down";
        case Variant::EdgeUp: return "edge-up";
        case Variant::EdgeBoth: return "edge-both";
        case Variant::TriangleDown: return "triangle-down";
    }
    return "unknown";
}

std::string_view to_string(LaplacianKind k)
{
    switch (k)
    {
        case LaplacianKind::Up: return "up";
        case LaplacianKind::Down: return "down";
        case LaplacianKind::Full: return "full";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name)
{
    for (Variant v : kAllVariants)
    {
        if (to_string(v) == name)
            return v;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown variant '" + std::string(name) +
                "' (expected vertex-up, edge-down, edge-up, edge-both or triangle-down)");
}

}   // namespace sdff
