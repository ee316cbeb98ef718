#ifndef SDFF_ERROR_HPP
#define SDFF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdff {

enum class ErrorKind
{
    InvalidArgument,
    MissingFile,
    MalformedLine,
    IndexOutOfRange,
    EmptyDataset,
    NotAClique,
    DimensionUnavailable,
    NotSymmetric,
    ConvergenceFailure,
    NegativeSpectrum,
    EmptyDimension,
    VocabularyMismatch,
    TooFewSamples,
    DegenerateInput,
    WidthMismatch,
    MissingResults
};

std::string_view to_string(ErrorKind kind);

/**
 * Single exception type for the library. The kind drives the CLI exit code.
 */
class Error : public std::runtime_error
{
    public:
        Error(ErrorKind kind, const std::string& message)
            : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
        {
        }

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
};

}   // namespace sdff

#endif
