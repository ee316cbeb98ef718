#include "sdff/error.hpp"

namespace sdff {

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::InvalidArgument:      return "InvalidArgument";
        case ErrorKind::MissingFile:          return "MissingFile";
        case ErrorKind::MalformedLine:        return "MalformedLine";
        case ErrorKind::IndexOutOfRange:      return "IndexOutOfRange";
        case ErrorKind::EmptyDataset:         return "EmptyDataset";
        case ErrorKind::NotAClique:           return "NotAClique";
        case ErrorKind::DimensionUnavailable: return "DimensionUnavailable";
        case ErrorKind::NotSymmetric:         return "NotSymmetric";
        case ErrorKind::ConvergenceFailure:   return "ConvergenceFailure";
        case ErrorKind::NegativeSpectrum:     return "NegativeSpectrum";
        case ErrorKind::EmptyDimension:       return "EmptyDimension";
        case ErrorKind::VocabularyMismatch:   return "VocabularyMismatch";
        case ErrorKind::TooFewSamples:        return "TooFewSamples";
        case ErrorKind::DegenerateInput:      return "DegenerateInput";
        case ErrorKind::WidthMismatch:        return "WidthMismatch";
        case ErrorKind::MissingResults:       return "MissingResults";
    }
    return "Unknown";
}

}   // namespace sdff
