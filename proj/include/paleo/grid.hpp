#pragma once

#include <cstddef>
#include <stdexcept>

namespace paleo::model {

/// Uniform calendar-year binning of the study window. BCE years are negative
/// (-11000 = 11,000 BCE). Elapsed time to observation is measured from the
/// bin midpoint.
class TimeGrid {
  public:
    TimeGrid(int start_year, int end_year, int bin_width, int observation_year)
        : start_year_(start_year),
          end_year_(end_year),
          bin_width_(bin_width),
          observation_year_(observation_year) {
        if (bin_width <= 0) {
            throw std::invalid_argument("TimeGrid: bin_width must be positive");
        }
        if (end_year < start_year) {
            throw std::invalid_argument("TimeGrid: end_year before start_year");
        }
        if ((end_year - start_year) % bin_width != 0) {
            throw std::invalid_argument("TimeGrid: span not divisible by bin_width");
        }
        if (observation_year < end_year) {
            throw std::invalid_argument("TimeGrid: observation year precedes end of grid");
        }
    }

    int start_year() const { return start_year_; }
    int end_year() const { return end_year_; }
    int bin_width() const { return bin_width_; }
    int observation_year() const { return observation_year_; }

    std::size_t n_bins() const {
        return static_cast<std::size_t>((end_year_ - start_year_) / bin_width_);
    }

    int bin_start(std::size_t i) const { return start_year_ + bin_width_ * static_cast<int>(i); }
    int bin_end(std::size_t i) const { return bin_start(i) + bin_width_; }

    double midpoint(std::size_t i) const {
        return static_cast<double>(bin_start(i)) + 0.5 * bin_width_;
    }

    /// Elapsed years between the bin midpoint and observation; always > 0.
    double delta_t(std::size_t i) const {
        return static_cast<double>(observation_year_) - midpoint(i);
    }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

  private:
    int start_year_;
    int end_year_;
    int bin_width_;
    int observation_year_;
};

}  // namespace paleo::model
