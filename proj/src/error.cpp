#include "gstab/error.hpp"

namespace gstab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroNormRow: return "ZeroNormRow";
    case ErrorKind::ConstantRow: return "ConstantRow";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::RankTooHigh: return "RankTooHigh";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::TooFewFeatures: return "TooFewFeatures";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::TooFewClasses: return "TooFewClasses";
    case ErrorKind::ClassTooSmall: return "ClassTooSmall";
    case ErrorKind::InvalidLabels: return "InvalidLabels";
    case ErrorKind::ZeroTotalVariance: return "ZeroTotalVariance";
    case ErrorKind::EmptyWithinPairs: return "EmptyWithinPairs";
    case ErrorKind::SingularWithinCovariance: return "SingularWithinCovariance";
    case ErrorKind::UnsupportedClassCount: return "UnsupportedClassCount";
    case ErrorKind::ConditionTooSmall: return "ConditionTooSmall";
    case ErrorKind::TooFewConditions: return "TooFewConditions";
    case ErrorKind::TooFewCells: return "TooFewCells";
    case ErrorKind::DegenerateShift: return "DegenerateShift";
    case ErrorKind::ZeroCentroid: return "ZeroCentroid";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::ZeroFrobenius: return "ZeroFrobenius";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::DegenerateBandwidth: return "DegenerateBandwidth";
    case ErrorKind::ZeroSpectrum: return "ZeroSpectrum";
    case ErrorKind::RejectionExhausted: return "RejectionExhausted";
    case ErrorKind::AllReplicatesDegenerate: return "AllReplicatesDegenerate";
    case ErrorKind::CollinearControls: return "CollinearControls";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::NoStablePoints: return "NoStablePoints";
    case ErrorKind::RowCountMismatch: return "RowCountMismatch";
    case ErrorKind::ZeroWeights: return "ZeroWeights";
    case ErrorKind::LabelRequired: return "LabelRequired";
    case ErrorKind::ReferenceRequired: return "ReferenceRequired";
    case ErrorKind::SpecParse: return "SpecParse";
    case ErrorKind::Io: return "Io";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace gstab
