#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace railnet {

enum class Side { L, R };
enum class StationKind { Station, Wye, Auxiliary };

/// Which arc weights an expanded graph carries: kilometres or minutes.
enum class WeightKind { Distance, Time };

constexpr Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }

std::string_view to_string(Side s);
std::string_view to_string(StationKind k);
std::string_view to_string(WeightKind w);
/// Unit label printed next to costs: "km" or "min".
std::string_view unit(WeightKind w);

Side parse_side(std::string_view text);
StationKind parse_station_kind(std::string_view text);
WeightKind parse_weight_kind(std::string_view text);

/// Non-negative quantity that may be unbounded, e.g. the cost of an
/// unreachable pair or the NRI of a disconnecting deletion.
class Extended {
 public:
  constexpr Extended() = default;
  constexpr Extended(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Extended infinite() {
    Extended e;
    e.value_ = std::numeric_limits<double>::infinity();
    return e;
  }
  static constexpr Extended from_raw(double v) { return Extended(v); }

  constexpr bool is_finite() const { return value_ != std::numeric_limits<double>::infinity(); }
  /// Raw value, +inf when unbounded.
  constexpr double raw() const { return value_; }
  double value() const {
    if (!is_finite()) throw std::logic_error("value() on an infinite quantity");
    return value_;
  }

  friend constexpr bool operator==(Extended a, Extended b) { return a.value_ == b.value_; }

 private:
  double value_ = 0.0;
};

/// Malformed or inconsistent input data (network documents, scenarios, configs).
class DataError : public std::runtime_error {
 public:
  enum class Code { Syntax, DuplicateId, DanglingReference, InvalidValue, UnknownKey, Config, Io };

  DataError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// A well-formed request that cannot be answered on the given network.
class AnalysisError : public std::runtime_error {
 public:
  enum class Code { UnknownSection, UnknownStation, InvalidArgument, DisconnectedNetwork, ZeroCostPair, Invariant };

  AnalysisError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace railnet
