#include "pollq/service.hpp"

#include <cmath>

#include "pollq/errors.hpp"

namespace pollq {

std::string_view to_string(ServiceKind kind) {
    switch (kind) {
        case ServiceKind::deterministic: return "deterministic";
        case ServiceKind::exponential: return "exponential";
        case ServiceKind::lognormal: return "lognormal";
    }
    return "?";
}

ServiceKind parse_service_kind(std::string_view name) {
    if (name == "deterministic") return ServiceKind::deterministic;
    if (name == "exponential") return ServiceKind::exponential;
    if (name == "lognormal") return ServiceKind::lognormal;
    throw DomainError("unknown service distribution '" + std::string(name) +
                      "' (expected deterministic, exponential or lognormal)");
}

ServiceModel::ServiceModel(ServiceKind kind, Minutes mean_minutes, double dispersion)
    : kind_(kind), mean_(mean_minutes), dispersion_(dispersion) {
    if (!(mean_ > 0.0) || !std::isfinite(mean_)) {
        throw DomainError("service: mean must be positive");
    }
    if (!(dispersion_ >= 0.0) || !std::isfinite(dispersion_)) {
        throw DomainError("service: dispersion must be nonnegative");
    }
    if (kind_ == ServiceKind::lognormal) {
        if (!(dispersion_ > 0.0)) {
            throw DomainError("service: lognormal requires dispersion > 0");
        }
        // Match mean and coefficient of variation.
        const double s2 = std::log1p(dispersion_ * dispersion_);
        log_sigma_ = std::sqrt(s2);
        log_mu_ = std::log(mean_) - s2 / 2.0;
    }
}

}  // namespace pollq
