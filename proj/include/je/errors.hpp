#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace je {

enum class Errc {
    NotSymmetric,
    NotEven,
    NotPositiveDefinite,
    DimensionMismatch,
    BudgetExceeded,
    StabilizationFailure,
    BadPrime,
    OddRankUnsupported,
    NonSquareDeterminant,
    InconsistentInput,
    UnsupportedRank,
    UnsupportedLattice,
    WeightTooSmall,
    DeltaNotPositive,
    RankNotUnimodularEven,
    TruncationInsufficient,
    InvalidArgument,
    ParseError,
};

std::string_view errc_name(Errc c) noexcept;

// All library failures are reported through this type; the code selects
// the CLI exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace je
