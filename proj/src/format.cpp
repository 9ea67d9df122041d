#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "railnet/report.hpp"

namespace railnet {

namespace {

std::string group_digits(const std::string& digits) {
  std::string out;
  const std::size_t n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

const WeightOutcome* outcome_for(const ScenarioOutcome& o, WeightKind w) {
  for (const auto& x : o.by_weight)
    if (x.weight_kind == w) return &x;
  return nullptr;
}

std::string extended_text(Extended e, int decimals, std::string_view unit_label) {
  if (!e.is_finite()) return "INFINITE";
  return format_fixed(e.value(), decimals) + " " + std::string(unit_label);
}

}  // namespace

std::string format_grouped(std::int64_t value, bool plus) {
  const bool negative = value < 0;
  const auto magnitude = negative ? -static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
  std::string out = group_digits(std::to_string(magnitude));
  if (negative) return "-" + out;
  if (plus && value > 0) return "+" + out;
  return out;
}

std::string format_fixed(double value, int decimals, bool plus) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::fabs(value));
  std::string text = buf;
  const bool is_zero = text.find_first_not_of("0.") == std::string::npos;
  const auto dot = text.find('.');
  std::string grouped = group_digits(text.substr(0, dot));
  if (dot != std::string::npos) grouped += text.substr(dot);
  if (is_zero) return grouped;
  if (value < 0) return "-" + grouped;
  if (plus) return "+" + grouped;
  return grouped;
}

std::string format_count_change(std::int64_t delta, std::optional<double> percent) {
  std::string out = format_grouped(delta, true);
  if (percent) out += " (" + format_fixed(*percent, 1, true) + "%)";
  else out += " (n/a)";
  return out;
}

std::string format_comparison_table(const ScenarioReport& r, WeightKind w) {
  const WeightOutcome* base = outcome_for(r.baseline, w);
  if (base == nullptr) return {};
  std::ostringstream out;
  out << "Scenario comparison, " << to_string(w) << " weights\n";
  out << "baseline total " << format_fixed(base->total, 2) << " " << unit(w) << "; busiest section "
      << base->busiest.section << " at " << format_fixed(base->busiest.share_before, 2) << "% of paths\n";

  const std::vector<std::string> labels{"Decrease in total network cost (%)",
                                        "Decrease in busiest-section share (pp)",
                                        "Decrease in busiest-section share (rel. %)"};
  std::size_t label_width = 0;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  label_width += 2;

  std::vector<std::size_t> widths;
  for (const auto& s : r.scenarios) widths.push_back(std::max<std::size_t>(10, s.name.size() + 2));

  out << pad_right("", label_width);
  for (std::size_t k = 0; k < r.scenarios.size(); ++k) out << pad_left(r.scenarios[k].name, widths[k]);
  out << "\n";
  for (std::size_t row = 0; row < labels.size(); ++row) {
    out << pad_right(labels[row], label_width);
    for (std::size_t k = 0; k < r.scenarios.size(); ++k) {
      const WeightOutcome* o = r.scenarios[k].ok ? outcome_for(r.scenarios[k], w) : nullptr;
      std::string cell = "failed";
      if (o != nullptr) {
        const double value = row == 0 ? o->decrease_percent : row == 1 ? o->busiest.pp_delta : o->busiest.relative_delta;
        cell = format_fixed(value, 2);
      }
      out << pad_left(cell, widths[k]);
    }
    out << "\n";
  }
  for (const auto& s : r.scenarios)
    if (!s.ok) out << "scenario " << s.name << " failed: " << s.error << "\n";
  return out.str();
}

std::string format_redistribution_table(const std::vector<RedistributionTable>& tables) {
  if (tables.empty()) return {};
  const WeightKind w = tables.front().weight_kind;
  std::vector<std::string> watched;
  for (const auto& row : tables.front().rows) watched.push_back(row.section);

  // cells[r][c]; row 0 is the header, the last row holds baseline counts
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"disrupted"};
  header.insert(header.end(), watched.begin(), watched.end());
  cells.push_back(header);
  for (const auto& t : tables) {
    std::vector<std::string> line{t.disrupted};
    for (const auto& row : t.rows) line.push_back(format_count_change(row.delta_count, row.delta_percent));
    cells.push_back(line);
  }
  std::vector<std::string> baseline{"baseline"};
  for (const auto& row : tables.front().rows) baseline.push_back(format_grouped(static_cast<std::int64_t>(row.baseline_count)));
  cells.push_back(baseline);

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());

  std::ostringstream out;
  out << "Redistribution, " << to_string(w) << " weights: change in paths per watched section (% of own baseline)\n";
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      text += c == 0 ? pad_right(line[c], widths[c]) : pad_left(line[c], widths[c]);
      if (c + 1 < line.size()) text += "   ";
    }
    out << text << "\n";
  }
  return out.str();
}

std::string format_flows(const SectionUsage& u) {
  std::ostringstream out;
  out << "Section flows, " << to_string(u.weight_kind) << " weights (" << format_grouped(static_cast<std::int64_t>(u.pair_count))
      << " pairs)\n";
  std::size_t width = 7;
  for (const auto& id : u.section_ids) width = std::max(width, id.size());
  for (std::size_t k = 0; k < u.section_ids.size(); ++k) {
    out << pad_right(u.section_ids[k], width + 2) << pad_left(format_grouped(static_cast<std::int64_t>(u.counts[k])), 12)
        << pad_left(format_fixed(u.share_percent(k), 2) + "%", 10) << "\n";
  }
  return out.str();
}

std::string format_nri(const std::vector<NriResult>& results, const std::string& network) {
  std::ostringstream out;
  if (results.empty()) return {};
  out << "Network Robustness Index, " << to_string(results.front().weight_kind) << " weights (network " << network
      << ")\n";
  std::size_t width = 7;
  for (const auto& r : results) width = std::max(width, r.section.size());
  for (const auto& r : results)
    out << pad_right(r.section, width + 2) << extended_text(r.q, 3, unit(r.weight_kind)) << "\n";
  return out.str();
}

std::string format_redundancy(const std::vector<RedundancyResult>& results, bool per_v, bool verbose) {
  std::ostringstream out;
  if (results.empty()) return {};
  const auto& first = results.front();
  out << "Redundancy, " << to_string(first.weight_kind) << " weights, "
      << (first.restricted ? "pairs avoiding u at baseline" : "all pairs") << " (network " << first.network
      << "; compare only within this network)\n";
  for (const auto& r : results) {
    out << r.section << ": r' = " << format_fixed(r.r_reciprocal_normalized, 6)
        << "  reciprocal sum = " << format_fixed(r.r_reciprocal_sum, 9)
        << "  plain = " << extended_text(r.r_plain, 3, unit(r.weight_kind)) << "\n";
    if (verbose) {
      out << "  " << (r.restricted ? "all pairs" : "restricted") << ": r' = " << format_fixed(r.alternate.normalized, 6)
          << "  reciprocal sum = " << format_fixed(r.alternate.reciprocal_sum, 9)
          << "  plain = " << extended_text(r.alternate.plain, 3, unit(r.weight_kind)) << "\n";
    }
    if (per_v) {
      for (const auto& t : r.per_v)
        out << "  v=" << t.v << "  reciprocal " << format_fixed(t.reciprocal, 9) << "  plain "
            << extended_text(t.plain, 3, unit(r.weight_kind)) << "\n";
    }
  }
  return out.str();
}

std::string format_path(const PathResult& p, const std::string& from, const std::string& to, WeightKind w) {
  std::ostringstream out;
  out << from << " -> " << to << " (" << to_string(w) << ")\n";
  if (!p.reachable()) {
    out << "cost:      UNREACHABLE\n";
    return out.str();
  }
  out << "cost:      " << format_fixed(p.cost.value(), 3) << " " << unit(w) << "\n";
  out << "sections: ";
  for (const auto& s : p.sections) out << " " << s;
  out << "\nreversals: " << p.reversals << "\n";
  return out.str();
}

}  // namespace railnet
