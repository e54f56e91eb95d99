#include "cbloch/model.hpp"

#include "cbloch/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace cbloch {

void ModelParams::validate() const {
    if (!(j_x >= 0.0) || !std::isfinite(j_x) || !(j_y >= 0.0) || !std::isfinite(j_y))
        throw ConfigError("hopping amplitudes j_x and j_y must be non-negative and finite");
    if (!std::isfinite(alpha))
        throw ConfigError("alpha must be finite");
    if (!(omega_x >= 0.0) || !(omega_y >= 0.0) || !std::isfinite(omega_x) || !std::isfinite(omega_y))
        throw ConfigError("drive frequencies omega_x and omega_y must be finite and non-negative");
}

double ModelParams::tunneling_period() const { return kTwoPi / j_x; }

ModelParams ModelParams::with_drive(double omega, double ratio) const {
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ConfigError("drive magnitude must be finite and non-negative");
    if (!(ratio >= 0.0) || !std::isfinite(ratio))
        throw ConfigError("frequency ratio must be finite and non-negative");
    ModelParams out = *this;
    out.omega_y = omega / std::sqrt(1.0 + ratio * ratio);
    out.omega_x = ratio * out.omega_y;
    return out;
}

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::slow_driving: return "slow_driving";
    case Regime::fast_driving: return "fast_driving";
    case Regime::critical: return "critical";
    }
    return "unknown";
}

FrequencyRatio FrequencyRatio::rational(std::int64_t r, std::int64_t q) {
    if (r < 0 || q <= 0)
        throw ConfigError("rational frequency ratio needs r >= 0 and q > 0");
    if (std::gcd(r, q) != 1)
        throw ConfigError("rational frequency ratio must be in lowest terms, got " +
                          std::to_string(r) + "/" + std::to_string(q));
    FrequencyRatio out;
    out.rational_ = true;
    out.r_ = r;
    out.q_ = q;
    out.value_ = static_cast<double>(r) / static_cast<double>(q);
    return out;
}

FrequencyRatio FrequencyRatio::irrational(double value) {
    if (!std::isfinite(value) || value < 0.0)
        throw ConfigError("frequency ratio must be finite and non-negative");
    FrequencyRatio out;
    out.value_ = value;
    return out;
}

std::optional<int> FrequencyRatio::nu() const {
    if (!rational_)
        return std::nullopt;
    if (r_ == 0)
        return 0;
    return static_cast<int>(r_ + q_ - 1);
}

double critical_frequency(const ModelParams& params) {
    return kTwoPi * std::abs(params.alpha) * params.j_x;
}

double drive_magnitude(const ModelParams& params) {
    return std::hypot(params.omega_x, params.omega_y);
}

Regime classify_regime(const ModelParams& params, double band) {
    const double omega = drive_magnitude(params);
    const double omega_cr = critical_frequency(params);
    if (omega < omega_cr * (1.0 - band))
        return Regime::slow_driving;
    if (omega > omega_cr * (1.0 + band))
        return Regime::fast_driving;
    return Regime::critical;
}

double predicted_drift_velocity(const ModelParams& params) {
    if (params.alpha == 0.0)
        throw DegenerateField("no cyclotron drift without a magnetic field (alpha = 0)");
    return params.omega_y / (kTwoPi * params.alpha);
}

RatePrediction predicted_ballistic_rate(const ModelParams& params, const FrequencyRatio& ratio) {
    if (classify_regime(params) != Regime::fast_driving)
        throw RegimeMismatch("ballistic rate prediction only holds for fast driving (omega > omega_cr)");

    RatePrediction out;
    if (params.omega_x == 0.0 || (ratio.is_rational() && ratio.numerator() == 0)) {
        out.kind = RatePrediction::Kind::linear_growth;
        out.rate = params.j_x / std::sqrt(2.0);
        return out;
    }
    // Drive along x only: Bloch oscillation along the measured axis.
    if (params.omega_y == 0.0 || !ratio.is_rational())
        return out;

    const double omega = drive_magnitude(params);
    out.kind = RatePrediction::Kind::linear_growth;
    out.rate = 0.5 * params.j_x * std::pow(params.j_y / omega, *ratio.nu());
    return out;
}

} // namespace cbloch
