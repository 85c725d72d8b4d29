#pragma once

#include <random>
#include <string>
#include <string_view>

#include "pollq/profile.hpp"

namespace pollq {

enum class ServiceKind { deterministic, exponential, lognormal };

std::string_view to_string(ServiceKind kind);
ServiceKind parse_service_kind(std::string_view name);

/// Per-voter occupancy of one station (booth, scanner, check-in terminal).
/// `dispersion` is the coefficient of variation and only used by lognormal.
class ServiceModel {
public:
    ServiceModel(ServiceKind kind, Minutes mean_minutes, double dispersion = 0.0);

    static ServiceModel deterministic(Minutes mean) { return {ServiceKind::deterministic, mean}; }
    static ServiceModel exponential(Minutes mean) { return {ServiceKind::exponential, mean}; }
    static ServiceModel lognormal(Minutes mean, double cv) { return {ServiceKind::lognormal, mean, cv}; }

    ServiceKind kind() const { return kind_; }
    Minutes mean_minutes() const { return mean_; }
    double dispersion() const { return dispersion_; }

    template <class Engine>
    Minutes draw(Engine& engine) const {
        switch (kind_) {
            case ServiceKind::deterministic:
                return mean_;
            case ServiceKind::exponential:
                return std::exponential_distribution<double>(1.0 / mean_)(engine);
            case ServiceKind::lognormal:
                return std::lognormal_distribution<double>(log_mu_, log_sigma_)(engine);
        }
        return mean_;
    }

private:
    ServiceKind kind_;
    Minutes mean_;
    double dispersion_;
    double log_mu_ = 0.0;
    double log_sigma_ = 0.0;
};

}  // namespace pollq
