#include "paleo/data.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace paleo::data {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

int parse_year(const std::string& field, std::size_t line_no) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad year '" + field + "'");
    }
    return value;
}

long long parse_count(const std::string& field, std::size_t line_no) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": bad count '" + field + "'");
    }
    return value;
}

void expect_header(std::istream& in, const std::string& want, const char* what) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != want) {
        throw ParseError(std::string(what) + ": expected header '" + want + "'");
    }
}

}  // namespace

std::vector<SettlementRecord> parse_settlements(std::istream& in) {
    expect_header(in, "site_id,start_year,end_year", "parse_settlements");
    std::vector<SettlementRecord> records;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3 || fields[0].empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        SettlementRecord rec;
        rec.site_id = fields[0];
        rec.start_year = parse_year(fields[1], line_no);
        rec.end_year = parse_year(fields[2], line_no);
        if (rec.end_year < rec.start_year) {
            throw ParseError("site " + rec.site_id + ": end_year precedes start_year");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

model::ObservedCounts bin_occupations(std::span<const SettlementRecord> records,
                                      const model::TimeGrid& grid, BinningRule rule) {
    model::ObservedCounts out;
    out.counts.assign(grid.n_bins(), 0);
    double half = 0.5 * grid.bin_width();
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < grid.n_bins(); ++i) {
            double bs = grid.bin_start(i), be = grid.bin_end(i);
            double overlap = std::min<double>(rec.end_year, be) -
                             std::max<double>(rec.start_year, bs);
            bool inside = rec.start_year >= bs && rec.end_year <= be;
            bool hit = rule == BinningRule::HalfOverlap ? (overlap >= half || inside)
                                                        : (overlap > 0.0 || inside);
            if (hit) ++out.counts[i];
        }
    }
    return out;
}

model::ObservedCounts simulate_dataset(const SyntheticTruth& truth, const model::TimeGrid& grid,
                                       dists::RngState& rng) {
    if (truth.params.populations.size() != grid.n_bins()) {
        throw std::invalid_argument("simulate_dataset: trajectory/grid dimension mismatch");
    }
    model::ObservedCounts out;
    out.counts.reserve(grid.n_bins());
    for (std::size_t i = 0; i < grid.n_bins(); ++i) {
        double mu = model::expected_observed(
            truth.params.populations[i], truth.params.scaling_factor,
            truth.params.scaling_exponent, truth.params.loss_rate, grid.delta_t(i),
            truth.params.sampling_prob);
        out.counts.push_back(dists::sample_poisson(rng, mu));
    }
    return out;
}

std::map<std::string, PeriodRange> parse_period_table(std::istream& in) {
    expect_header(in, "period_label,start_year,end_year", "parse_period_table");
    std::map<std::string, PeriodRange> table;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3 || fields[0].empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        PeriodRange range{parse_year(fields[1], line_no), parse_year(fields[2], line_no)};
        if (range.end_year < range.start_year) {
            throw ParseError("period " + fields[0] + ": end_year precedes start_year");
        }
        table[fields[0]] = range;
    }
    return table;
}

std::vector<SettlementRecord> parse_period_settlements(
    std::istream& in, const std::map<std::string, PeriodRange>& periods) {
    expect_header(in, "site_id,period_label", "parse_period_settlements");
    std::vector<SettlementRecord> records;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2 || fields[0].empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 2 fields");
        }
        auto it = periods.find(fields[1]);
        if (it == periods.end()) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown period '" +
                             fields[1] + "'");
        }
        records.push_back({fields[0], it->second.start_year, it->second.end_year});
    }
    return records;
}

void write_counts_csv(std::ostream& out, const model::ObservedCounts& counts,
                      const model::TimeGrid& grid) {
    if (counts.counts.size() != grid.n_bins()) {
        throw std::invalid_argument("write_counts_csv: counts/grid dimension mismatch");
    }
    out << "bin_start_year,bin_end_year,count\n";
    for (std::size_t i = 0; i < grid.n_bins(); ++i) {
        out << grid.bin_start(i) << ',' << grid.bin_end(i) << ',' << counts.counts[i] << '\n';
    }
}

model::ObservedCounts read_counts_csv(std::istream& in, const model::TimeGrid& grid) {
    expect_header(in, "bin_start_year,bin_end_year,count", "read_counts_csv");
    model::ObservedCounts out;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        std::size_t i = out.counts.size();
        if (i >= grid.n_bins()) {
            throw ParseError("read_counts_csv: more rows than grid bins");
        }
        if (parse_year(fields[0], line_no) != grid.bin_start(i) ||
            parse_year(fields[1], line_no) != grid.bin_end(i)) {
            throw ParseError("line " + std::to_string(line_no) + ": bin edges do not match grid");
        }
        out.counts.push_back(parse_count(fields[2], line_no));
    }
    if (out.counts.size() != grid.n_bins()) {
        throw ParseError("read_counts_csv: fewer rows than grid bins");
    }
    return out;
}

}  // namespace paleo::data
