#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace cbloch {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Relative half-width of the band around the critical frequency that is
// reported as Regime::critical instead of slow or fast.
inline constexpr double kCriticalBand = 0.05;

// Physical parameters of the driven lattice. Units: hbar = e = a = 1, energies
// in units of the hopping, so a static force F enters only through its Bloch
// frequency omega = F. alpha is the Peierls phase (flux quanta per cell).
struct ModelParams {
    double j_x = 1.0;
    double j_y = 1.0;
    double alpha = 0.1;
    double omega_x = 0.0;
    double omega_y = 0.1;

    // Throws ConfigError on negative hopping, negative or non-finite
    // frequencies, or a non-finite alpha.
    void validate() const;

    // T_J = h / J = 2 pi / j_x.
    double tunneling_period() const;

    // Parameters with drive magnitude `omega` split so that
    // omega_x / omega_y == ratio. ratio must be finite and >= 0.
    ModelParams with_drive(double omega, double ratio) const;

    bool operator==(const ModelParams&) const = default;
};

enum class Regime { slow_driving, fast_driving, critical };

std::string_view to_string(Regime regime);

// Ratio omega_x / omega_y, either rational r/q in lowest terms or irrational.
// The axis-aligned drive omega_x = 0 is the rational 0/1 with nu = 0.
class FrequencyRatio {
public:
    static FrequencyRatio rational(std::int64_t r, std::int64_t q);
    static FrequencyRatio irrational(double value);

    bool is_rational() const { return rational_; }
    std::int64_t numerator() const { return r_; }
    std::int64_t denominator() const { return q_; }
    double value() const { return value_; }

    // nu = r + q - 1 for rationals, absent otherwise.
    std::optional<int> nu() const;

private:
    FrequencyRatio() = default;

    bool rational_ = false;
    std::int64_t r_ = 0;
    std::int64_t q_ = 1;
    double value_ = 0.0;
};

// Prediction for the asymptotic spreading rate sigma(t) ~ A t.
struct RatePrediction {
    enum class Kind { linear_growth, bounded_oscillation };

    Kind kind = Kind::bounded_oscillation;
    double rate = 0.0; // sites per unit time; meaningful for linear_growth

    bool oscillating() const { return kind == Kind::bounded_oscillation; }
};

double critical_frequency(const ModelParams& params);
double drive_magnitude(const ModelParams& params);
Regime classify_regime(const ModelParams& params, double band = kCriticalBand);

// Drift velocity omega_y / (2 pi alpha) in sites per unit time. Throws
// DegenerateField for alpha == 0.
double predicted_drift_velocity(const ModelParams& params);

// Asymptotic ballistic rate in the fast-driving regime:
//   omega_x == 0        -> j_x / sqrt(2)
//   omega_x/omega_y=r/q -> (j_x / 2) (j_y / omega)^(r + q - 1)
//   irrational or omega_y == 0 -> bounded oscillation
// Throws RegimeMismatch unless classify_regime() reports fast driving.
RatePrediction predicted_ballistic_rate(const ModelParams& params, const FrequencyRatio& ratio);

} // namespace cbloch
