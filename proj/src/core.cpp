#include "welfare/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace welfare {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyProfile: return "EmptyProfile";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::InvalidScale: return "InvalidScale";
    case ErrorKind::InvalidReplication: return "InvalidReplication";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::ZeroTotal: return "ZeroTotal";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::DegenerateIdentical: return "DegenerateIdentical";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::NonMonotoneBetas: return "NonMonotoneBetas";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::InternalNumeric: return "InternalNumeric";
  }
  return "Unknown";
}

// --- UtilityProfile ---------------------------------------------------------

UtilityProfile::UtilityProfile(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) {
    throw Error(ErrorKind::EmptyProfile, "utility profile has no values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::NonFiniteValue,
                  "value at index " + std::to_string(i) + " is not finite");
    }
  }
}

UtilityProfile::UtilityProfile(std::initializer_list<double> values)
    : UtilityProfile(std::vector<double>(values)) {}

double UtilityProfile::sum() const { return compensated_sum(values_); }

double UtilityProfile::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double UtilityProfile::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool UtilityProfile::all_positive() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v > 0.0; });
}

bool UtilityProfile::all_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

bool UtilityProfile::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

UtilityProfile UtilityProfile::with_label(std::string label) const {
  UtilityProfile copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

void require_positive(const UtilityProfile& p, std::string_view who) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw Error(ErrorKind::NonPositiveValue,
                  std::string(who) + " requires positive values; index " +
                      std::to_string(i) + " is not");
    }
  }
}

void require_nonnegative(const UtilityProfile& p, std::string_view who) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) {
      throw Error(ErrorKind::NegativeValue,
                  std::string(who) + " requires non-negative values; index " +
                      std::to_string(i) + " is negative");
    }
  }
}

// --- Tolerance ----------------------------------------------------------------

Tolerance Tolerance::make(double abs_eps, double rel_eps) {
  if (!std::isfinite(abs_eps) || !std::isfinite(rel_eps) || abs_eps < 0.0 ||
      rel_eps < 0.0 || (abs_eps == 0.0 && rel_eps == 0.0)) {
    throw Error(ErrorKind::InvalidTolerance,
                "tolerance must be finite, non-negative and not both zero");
  }
  return Tolerance{abs_eps, rel_eps};
}

double Tolerance::band(double a, double b) const {
  return abs_eps + rel_eps * std::max(std::abs(a), std::abs(b));
}

bool Tolerance::close(double a, double b) const {
  return std::abs(a - b) <= band(a, b);
}

// --- SortedProfileView ------------------------------------------------------

SortedProfileView::SortedProfileView(const UtilityProfile& p)
    : source_(p.size()) {
  std::iota(source_.begin(), source_.end(), std::size_t{0});
  std::stable_sort(source_.begin(), source_.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  ascending_.reserve(p.size());
  for (std::size_t i : source_) ascending_.push_back(p[i]);
}

// --- parsing --------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::ParseError,
                "malformed number '" + std::string(token) + "'");
  }
  return value;
}

UtilityProfile parse_csv_row(std::string_view text) {
  std::vector<double> values;
  text = trim(text);
  if (text.find('\n') != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "CSV profile must be a single row");
  }
  if (text.empty()) {
    throw Error(ErrorKind::EmptyProfile, "utility profile has no values");
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return UtilityProfile(std::move(values));
}

UtilityProfile parse_json_array(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::ParseError, "profile JSON must be an array of numbers");
  }
  std::vector<double> values;
  values.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number()) {
      throw Error(ErrorKind::ParseError, "non-numeric entry " + v.dump());
    }
    values.push_back(v.get<double>());
  }
  return UtilityProfile(std::move(values));
}

}  // namespace

UtilityProfile parse_profile(std::string_view text, ProfileFormat format) {
  if (trim(text).empty()) {
    throw Error(ErrorKind::ParseError, "profile text is empty");
  }
  switch (format) {
    case ProfileFormat::csv_row: return parse_csv_row(text);
    case ProfileFormat::json_array: return parse_json_array(text);
  }
  throw Error(ErrorKind::ParseError, "unknown profile format");
}

UtilityProfile parse_profile(std::string_view text) {
  const auto t = trim(text);
  return parse_profile(text, !t.empty() && t.front() == '['
                                 ? ProfileFormat::json_array
                                 : ProfileFormat::csv_row);
}

std::string serialize_profile(const UtilityProfile& p, ProfileFormat format) {
  std::string out;
  if (format == ProfileFormat::json_array) out.push_back('[');
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out.push_back(',');
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p[i]);
    out.append(buf, ptr);
  }
  if (format == ProfileFormat::json_array) out.push_back(']');
  return out;
}

// --- transforms -----------------------------------------------------------------

SortedProfileView sort_view(const UtilityProfile& p) {
  return SortedProfileView(p);
}

UtilityProfile scale_profile(const UtilityProfile& p, double t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw Error(ErrorKind::InvalidScale, "scale factor must be finite and > 0");
  }
  std::vector<double> out(p.values().begin(), p.values().end());
  for (double& v : out) v *= t;
  return UtilityProfile(std::move(out), p.label());
}

UtilityProfile replicate_profile(const UtilityProfile& p, std::int64_t lambda) {
  if (lambda < 1) {
    throw Error(ErrorKind::InvalidReplication, "replication factor must be >= 1");
  }
  std::vector<double> out;
  out.reserve(p.size() * static_cast<std::size_t>(lambda));
  for (std::int64_t r = 0; r < lambda; ++r) {
    out.insert(out.end(), p.values().begin(), p.values().end());
  }
  return UtilityProfile(std::move(out), p.label());
}

// --- summation ------------------------------------------------------------------

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace welfare
