#include "pollq/profile.hpp"

#include <cmath>
#include <string>

#include "pollq/errors.hpp"

namespace pollq {

ArrivalProfile::ArrivalProfile(Minutes day_length, std::vector<ProfileSegment> segments)
    : day_length_(day_length), segments_(std::move(segments)) {
    if (!(day_length_ > 0.0) || !std::isfinite(day_length_)) {
        throw DomainError("profile: day length must be positive");
    }
    if (segments_.empty()) {
        throw DomainError("profile: no segments");
    }
    Minutes cursor = 0.0;
    double total = 0.0;
    for (const auto& seg : segments_) {
        if (seg.start != cursor) {
            throw DomainError("profile: segments must be contiguous from 0 (gap or overlap at minute " +
                              std::to_string(seg.start) + ")");
        }
        if (!(seg.end > seg.start)) {
            throw DomainError("profile: empty or reversed segment at minute " +
                              std::to_string(seg.start));
        }
        if (!(seg.hourly_fraction >= 0.0) || !std::isfinite(seg.hourly_fraction)) {
            throw DomainError("profile: negative hourly fraction at minute " +
                              std::to_string(seg.start));
        }
        total += seg.hourly_fraction * seg.length() / 60.0;
        cursor = seg.end;
    }
    if (cursor != day_length_) {
        throw DomainError("profile: segments end at " + std::to_string(cursor) +
                          ", day length is " + std::to_string(day_length_));
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw NormalizationError("profile: fractions integrate to " + std::to_string(total) +
                                 ", expected 1");
    }
}

double ArrivalProfile::rate_at(Minutes t, double expected_voters) const {
    for (const auto& seg : segments_) {
        if (t >= seg.start && t < seg.end) {
            return expected_voters * seg.hourly_fraction / 60.0;
        }
    }
    return 0.0;
}

double ArrivalProfile::mass_between(Minutes from, Minutes to) const {
    double mass = 0.0;
    for (const auto& seg : segments_) {
        const Minutes lo = std::max(from, seg.start);
        const Minutes hi = std::min(to, seg.end);
        if (hi > lo) {
            mass += seg.hourly_fraction * (hi - lo) / 60.0;
        }
    }
    return mass;
}

std::vector<double> ArrivalProfile::hourly_fractions() const {
    std::vector<double> out;
    for (const auto& seg : segments_) {
        if (std::fmod(seg.start, 60.0) != 0.0 || std::fmod(seg.end, 60.0) != 0.0) {
            return {};
        }
        for (Minutes m = seg.start; m < seg.end; m += 60.0) {
            out.push_back(seg.hourly_fraction);
        }
    }
    return out;
}

ArrivalProfile build_profile(Minutes day_length, std::span<const double> hourly_fractions) {
    const double hours = day_length / 60.0;
    if (!(day_length > 0.0) || hours != std::floor(hours)) {
        throw DomainError("profile: day length must be a positive whole number of hours");
    }
    if (hourly_fractions.size() != static_cast<std::size_t>(hours)) {
        throw DomainError("profile: " + std::to_string(hourly_fractions.size()) +
                          " fractions for a " + std::to_string(static_cast<int>(hours)) +
                          "-hour day");
    }
    std::vector<ProfileSegment> segments;
    segments.reserve(hourly_fractions.size());
    for (std::size_t h = 0; h < hourly_fractions.size(); ++h) {
        segments.push_back({60.0 * static_cast<double>(h), 60.0 * static_cast<double>(h + 1),
                            hourly_fractions[h]});
    }
    return ArrivalProfile(day_length, std::move(segments));
}

ArrivalProfile maryland_profile() {
    //                            7    8    9    10   11   12   1    2    3    4    5    6    7 pm
    static constexpr double f[] = {.10, .10, .05, .05, .05, .10, .10, .05, .05, .05, .10, .10, .10};
    return build_profile(780.0, f);
}

ArrivalProfile maryland_caption_profile() {
    static constexpr double f[] = {.10, .10, .05, .05, .10, .10, .05, .05, .05, .05, .10, .10, .10};
    return build_profile(780.0, f);
}

ArrivalProfile uniform_profile(Minutes day_length) {
    return ArrivalProfile(day_length, {{0.0, day_length, 60.0 / day_length}});
}

ArrivalProfile named_profile(std::string_view name, Minutes day_length) {
    if (name == "maryland") {
        return maryland_profile();
    }
    if (name == "maryland-caption") {
        return maryland_caption_profile();
    }
    if (name == "uniform") {
        return uniform_profile(day_length);
    }
    throw DomainError("unknown arrival profile '" + std::string(name) +
                      "' (expected maryland, maryland-caption or uniform)");
}

}  // namespace pollq
