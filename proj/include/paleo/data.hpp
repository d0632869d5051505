#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paleo/model.hpp"
#include "paleo/rng.hpp"

namespace paleo::data {

/// One occupation phase of one site; multi-phase sites appear as several
/// records sharing a site_id.
struct SettlementRecord {
    std::string site_id;
    int start_year = 0;
    int end_year = 0;  // >= start_year
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// CSV with header `site_id,start_year,end_year`, integer years, BCE
/// negative. Throws ParseError with the offending line number (or site_id
/// for span violations).
std::vector<SettlementRecord> parse_settlements(std::istream& in);

/// Contemporaneity rule for assigning occupation spans to bins.
enum class BinningRule {
    // Count a record in a bin when the overlap covers at least half the bin
    // width, or the whole span lies inside the bin.
    HalfOverlap,
    // Count every bin the span overlaps at all.
    AnyOverlap,
};

/// Occupied-settlement counts per bin; records that overlap no grid bin are
/// dropped.
model::ObservedCounts bin_occupations(std::span<const SettlementRecord> records,
                                      const model::TimeGrid& grid,
                                      BinningRule rule = BinningRule::HalfOverlap);

struct SyntheticTruth {
    model::ModelParams params;
    std::uint64_t seed = 0;
};

/// Forward-samples counts_t ~ Poisson(expected_observed(...)), independent
/// across bins; deterministic given the rng state.
model::ObservedCounts simulate_dataset(const SyntheticTruth& truth, const model::TimeGrid& grid,
                                       dists::RngState& rng);

// Period-label companion table: `period_label,start_year,end_year`.
struct PeriodRange {
    int start_year = 0;
    int end_year = 0;
};
std::map<std::string, PeriodRange> parse_period_table(std::istream& in);

/// Rows `site_id,period_label` resolved through the period table into
/// year-span records. Unknown labels raise ParseError.
std::vector<SettlementRecord> parse_period_settlements(
    std::istream& in, const std::map<std::string, PeriodRange>& periods);

// ObservedCounts CSV: `bin_start_year,bin_end_year,count`, one row per bin.
void write_counts_csv(std::ostream& out, const model::ObservedCounts& counts,
                      const model::TimeGrid& grid);
model::ObservedCounts read_counts_csv(std::istream& in, const model::TimeGrid& grid);

}  // namespace paleo::data
