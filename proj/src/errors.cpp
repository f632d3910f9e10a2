#include "je/errors.hpp"

namespace je {

std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NotSymmetric: return "NotSymmetric";
        case Errc::NotEven: return "NotEven";
        case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::StabilizationFailure: return "StabilizationFailure";
        case Errc::BadPrime: return "BadPrime";
        case Errc::OddRankUnsupported: return "OddRankUnsupported";
        case Errc::NonSquareDeterminant: return "NonSquareDeterminant";
        case Errc::InconsistentInput: return "InconsistentInput";
        case Errc::UnsupportedRank: return "UnsupportedRank";
        case Errc::UnsupportedLattice: return "UnsupportedLattice";
        case Errc::WeightTooSmall: return "WeightTooSmall";
        case Errc::DeltaNotPositive: return "DeltaNotPositive";
        case Errc::RankNotUnimodularEven: return "RankNotUnimodularEven";
        case Errc::TruncationInsufficient: return "TruncationInsufficient";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace je
