#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace pollq {

using Minutes = double;

struct ProfileSegment {
    Minutes start;
    Minutes end;
    double hourly_fraction;  // share of the day's voters arriving per hour in [start, end)

    Minutes length() const { return end - start; }
};

/// Piecewise-constant arrival intensity over the polling day.
///
/// Segments partition [0, day_length) and the fractions integrate to one,
/// so `hourly_fraction * expected_voters / 60` is the per-minute Poisson rate
/// on a segment.
class ArrivalProfile {
public:
    static constexpr double kNormalizationTolerance = 1e-9;

    // Throws DomainError for gaps, overlaps or negative fractions and
    // NormalizationError when the integrated fraction is not 1.
    ArrivalProfile(Minutes day_length, std::vector<ProfileSegment> segments);

    Minutes day_length() const { return day_length_; }
    const std::vector<ProfileSegment>& segments() const { return segments_; }

    // Per-minute arrival rate at time t for the given expected daily volume.
    double rate_at(Minutes t, double expected_voters) const;

    // Expected share of the day's voters arriving in [from, to).
    double mass_between(Minutes from, Minutes to) const;

    // Hour-by-hour fractions when every segment is a whole clock hour;
    // empty otherwise.
    std::vector<double> hourly_fractions() const;

private:
    Minutes day_length_;
    std::vector<ProfileSegment> segments_;
};

// One fraction per hour; day_length must be a positive whole number of hours.
ArrivalProfile build_profile(Minutes day_length, std::span<const double> hourly_fractions);

// 13-hour day from 7 am: 10%/h at 7-9 am, 12-2 pm and 5-8 pm, 5%/h otherwise.
ArrivalProfile maryland_profile();

// Same day with the midday peak at 11 am-1 pm instead of 12-2 pm.
ArrivalProfile maryland_caption_profile();

ArrivalProfile uniform_profile(Minutes day_length);

// "maryland", "maryland-caption" or "uniform" (uniform uses day_length).
ArrivalProfile named_profile(std::string_view name, Minutes day_length = 780.0);

}  // namespace pollq
