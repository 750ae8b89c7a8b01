#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gstab {

// Every failure the library reports carries one of these kinds. The CLI
// prints the kind name verbatim, so renaming an enumerator is a breaking
// change for scripts that parse stderr.
enum class ErrorKind {
  InvalidShape,
  NonFinite,
  ZeroNormRow,
  ConstantRow,
  ConstantColumn,
  LengthMismatch,
  TooShort,
  Degenerate,
  RankTooHigh,
  SingularCovariance,
  TooFewFeatures,
  TooFewSamples,
  TooFewClasses,
  ClassTooSmall,
  InvalidLabels,
  ZeroTotalVariance,
  EmptyWithinPairs,
  SingularWithinCovariance,
  UnsupportedClassCount,
  ConditionTooSmall,
  TooFewConditions,
  TooFewCells,
  DegenerateShift,
  ZeroCentroid,
  ZeroNorm,
  ZeroFrobenius,
  DimMismatch,
  DegenerateBandwidth,
  ZeroSpectrum,
  RejectionExhausted,
  AllReplicatesDegenerate,
  CollinearControls,
  EmptySeries,
  LevelMismatch,
  SingleClass,
  NoStablePoints,
  RowCountMismatch,
  ZeroWeights,
  LabelRequired,
  ReferenceRequired,
  SpecParse,
  Io,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace gstab
