#include "railnet/types.hpp"

#include <string>

namespace railnet {

std::string_view to_string(Side s) { return s == Side::L ? "L" : "R"; }

std::string_view to_string(StationKind k) {
  switch (k) {
    case StationKind::Station: return "station";
    case StationKind::Wye: return "wye";
    case StationKind::Auxiliary: return "auxiliary";
  }
  return "station";
}

std::string_view to_string(WeightKind w) { return w == WeightKind::Distance ? "distance" : "time"; }

std::string_view unit(WeightKind w) { return w == WeightKind::Distance ? "km" : "min"; }

Side parse_side(std::string_view text) {
  if (text == "L") return Side::L;
  if (text == "R") return Side::R;
  throw DataError(DataError::Code::InvalidValue, "side must be \"L\" or \"R\", got \"" + std::string(text) + "\"");
}

StationKind parse_station_kind(std::string_view text) {
  if (text == "station") return StationKind::Station;
  if (text == "wye") return StationKind::Wye;
  if (text == "auxiliary") return StationKind::Auxiliary;
  throw DataError(DataError::Code::InvalidValue, "unknown station kind \"" + std::string(text) + "\"");
}

WeightKind parse_weight_kind(std::string_view text) {
  if (text == "distance") return WeightKind::Distance;
  if (text == "time") return WeightKind::Time;
  throw DataError(DataError::Code::InvalidValue, "weight must be \"distance\" or \"time\", got \"" + std::string(text) + "\"");
}

}  // namespace railnet
