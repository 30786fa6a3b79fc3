#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opspec {

struct OpspecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Querying a nonempty-only operation on an empty region.
struct EmptyRegionError : OpspecError {
    EmptyRegionError() : OpspecError("region is empty") {}
    explicit EmptyRegionError(const std::string& what) : OpspecError(what) {}
};

// No sample of the region landed inside the requested window.
struct EmptyIntersectionError : OpspecError {
    explicit EmptyIntersectionError(const std::string& what) : OpspecError(what) {}
};

// Region JSON did not conform to the schema; primitive_index is the offending
// entry (-1 when the problem is outside the primitive list).
struct RegionParseError : OpspecError {
    RegionParseError(std::int64_t index, const std::string& what)
        : OpspecError(what), primitive_index(index) {}
    std::int64_t primitive_index;
};

struct IndexBeyondTruncationError : OpspecError {
    IndexBeyondTruncationError(std::uint64_t index, std::uint64_t truncation)
        : OpspecError("vector index " + std::to_string(index) +
                      " exceeds truncation level " + std::to_string(truncation)),
          index(index), truncation(truncation) {}
    std::uint64_t index;
    std::uint64_t truncation;
};

// lambda hit a multiplier exactly: lambda is an eigenvalue, the resolvent
// does not exist on vectors supported there.
struct SingularEntryError : OpspecError {
    explicit SingularEntryError(std::uint64_t index)
        : OpspecError("resolvent singular: lambda equals multiplier m_" +
                      std::to_string(index)),
          index(index) {}
    std::uint64_t index;
};

struct SearchBudgetExhaustedError : OpspecError {
    SearchBudgetExhaustedError(std::uint64_t reached, double threshold)
        : OpspecError("no multiplier above magnitude " + std::to_string(threshold) +
                      " within enumeration budget (reached n = " +
                      std::to_string(reached) + ")"),
          reached(reached) {}
    std::uint64_t reached;
};

struct DomainViolationError : OpspecError {
    explicit DomainViolationError(const std::string& what) : OpspecError(what) {}
};

// exp(lambda*h) is not representable; the caller should shrink h or rescale.
struct OverflowGuardError : OpspecError {
    explicit OverflowGuardError(const std::string& what) : OpspecError(what) {}
};

struct NonConvergenceError : OpspecError {
    explicit NonConvergenceError(int iterations)
        : OpspecError("norm estimate did not converge within " +
                      std::to_string(iterations) + " iterations"),
          iterations(iterations) {}
    int iterations;
};

struct GridTooCoarseError : OpspecError {
    explicit GridTooCoarseError(const std::string& what) : OpspecError(what) {}
};

}  // namespace opspec
