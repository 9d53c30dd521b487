#pragma once

// Shared domain types: utility profiles, tolerances, sorted views and the
// error type every module throws.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace welfare {

enum class ErrorKind {
  ParseError,
  EmptyProfile,
  NonFiniteValue,
  InvalidScale,
  InvalidReplication,
  InvalidTolerance,
  ZeroMean,
  ZeroTotal,
  NegativeValue,
  NonPositiveValue,
  InvalidParams,
  LengthMismatch,
  InvalidTable,
  DegenerateIdentical,
  InvalidShape,
  NonMonotoneBetas,
  DimensionMismatch,
  InvalidScenario,
  InternalNumeric,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every recoverable failure in the library is reported through this type;
// the kind doubles as the structured error name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UtilityProfile {
 public:
  /// Throws EmptyProfile for zero values and NonFiniteValue for NaN/Inf.
  explicit UtilityProfile(std::vector<double> values, std::string label = {});
  UtilityProfile(std::initializer_list<double> values);

  std::span<const double> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Compensated sum of the values.
  double sum() const;
  double mean() const { return sum() / static_cast<double>(size()); }
  double min() const;
  double max() const;

  bool all_positive() const;
  bool all_nonnegative() const;
  bool is_constant() const;

  UtilityProfile with_label(std::string label) const;

  friend bool operator==(const UtilityProfile& a, const UtilityProfile& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  std::string label_;
};

// Refinement checks for operations restricted to part of the real line.
void require_positive(const UtilityProfile& p, std::string_view who);
void require_nonnegative(const UtilityProfile& p, std::string_view who);

struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  /// Throws InvalidTolerance unless both are finite, non-negative and not
  /// both zero.
  static Tolerance make(double abs_eps, double rel_eps);

  double band(double a, double b) const;
  bool close(double a, double b) const;
};

inline constexpr Tolerance kDefaultTolerance{1e-9, 1e-9};
// Matches values printed to four significant figures.
inline constexpr Tolerance kPrintedTolerance{1e-3, 1e-3};

// Ascending view of a profile. `ranks()[i]` is the original index of the
// i-th lowest value; ties keep their original relative order.
class SortedProfileView {
 public:
  explicit SortedProfileView(const UtilityProfile& p);

  std::span<const double> ascending() const noexcept { return ascending_; }
  std::span<const std::size_t> source_index() const noexcept { return source_; }
  std::size_t size() const noexcept { return ascending_.size(); }
  double operator[](std::size_t i) const { return ascending_[i]; }

 private:
  std::vector<double> ascending_;
  std::vector<std::size_t> source_;
};

enum class ProfileFormat { csv_row, json_array };

UtilityProfile parse_profile(std::string_view text, ProfileFormat format);
/// Picks json_array when the text starts with '[', csv_row otherwise.
UtilityProfile parse_profile(std::string_view text);
/// Shortest round-trip representation of each value.
std::string serialize_profile(const UtilityProfile& p, ProfileFormat format);

SortedProfileView sort_view(const UtilityProfile& p);
UtilityProfile scale_profile(const UtilityProfile& p, double t);
UtilityProfile replicate_profile(const UtilityProfile& p, std::int64_t lambda);

// Neumaier-compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

}  // namespace welfare
