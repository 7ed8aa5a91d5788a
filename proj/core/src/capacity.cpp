#include "capflow/capacity.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "capflow/error.hpp"
#include "capflow/philox.hpp"

namespace capflow {

namespace {

constexpr double kTwoPow53 = 9007199254740992.0;

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(text)};
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    return parts;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

DistributionSpec DistributionSpec::constant(const Rational& c) {
    require(c >= Rational(0), "constant capacity must be >= 0");
    return {Kind::Constant, c, Rational(0)};
}

DistributionSpec DistributionSpec::bernoulli(const Rational& p_one) {
    require(p_one >= Rational(0) && p_one <= Rational(1), "Bernoulli parameter must lie in [0, 1]");
    return {Kind::Bernoulli, p_one, Rational(0)};
}

DistributionSpec DistributionSpec::exponential(const Rational& rate) {
    require(rate > Rational(0), "exponential rate must be > 0");
    return {Kind::Exponential, rate, Rational(0)};
}

DistributionSpec DistributionSpec::uniform(const Rational& lo, const Rational& hi) {
    require(lo >= Rational(0) && lo < hi, "uniform law needs 0 <= lo < hi");
    return {Kind::Uniform, lo, hi};
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() == 2 && parts[0] == "const") return constant(Rational::parse(parts[1]));
    if (parts.size() == 2 && parts[0] == "bern") return bernoulli(Rational::parse(parts[1]));
    if (parts.size() == 2 && parts[0] == "exp") return exponential(Rational::parse(parts[1]));
    if (parts.size() == 3 && parts[0] == "unif") return uniform(Rational::parse(parts[1]), Rational::parse(parts[2]));
    throw Error(ErrorCode::InvalidArgument, "unknown distribution '" + std::string(text) + "'");
}

std::string DistributionSpec::str() const {
    switch (kind) {
        case Kind::Constant: return "const:" + first.str();
        case Kind::Bernoulli: return "bern:" + first.str();
        case Kind::Exponential: return "exp:" + first.str();
        case Kind::Uniform: return "unif:" + first.str() + ":" + second.str();
    }
    return {};
}

ZeroMass mass_at_zero(const DistributionSpec& spec) {
    Rational mass(0);
    switch (spec.kind) {
        case DistributionSpec::Kind::Constant: mass = spec.first == Rational(0) ? Rational(1) : Rational(0); break;
        case DistributionSpec::Kind::Bernoulli: mass = Rational(1) - spec.first; break;
        case DistributionSpec::Kind::Exponential:
        case DistributionSpec::Kind::Uniform: mass = Rational(0); break;
    }
    return {mass, mass >= Rational(1, 2)};
}

TheoremHypotheses validate_for_theorems(const DistributionSpec& spec) {
    const ZeroMass zm = mass_at_zero(spec);
    // Bounded laws have every exponential moment; Exponential(rate) has them for c < rate.
    return {zm.mass, !zm.warning, true};
}

CapacityField::CapacityField(DistributionSpec spec, std::uint64_t master_seed, std::int64_t scale)
    : spec_(std::move(spec)), seed_(master_seed), scale_(scale) {
    require(scale_ >= 1, "scale must be >= 1");
    switch (spec_.kind) {
        case DistributionSpec::Kind::Constant:
            constant_value_ = std::min((spec_.first * Rational(scale_)).round(), kCapacityCap);
            break;
        case DistributionSpec::Kind::Bernoulli: {
            // u < p * 2^53  <=>  u < ceil(p * 2^53) for integer u
            const __int128 num = static_cast<__int128>(spec_.first.num()) << 53;
            const __int128 den = spec_.first.den();
            threshold_ = static_cast<std::uint64_t>((num + den - 1) / den);
            break;
        }
        default: break;
    }
}

std::int64_t CapacityField::capacity(const Bond& e) const {
    if (overrides_) {
        if (auto it = overrides_->find(e); it != overrides_->end()) return it->second;
    }
    return sample(e);
}

std::int64_t CapacityField::sample(const Bond& e) const noexcept {
    if (spec_.kind == DistributionSpec::Kind::Constant) return constant_value_;

    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(e.a.x), static_cast<std::uint32_t>(e.a.y),
                                  e.horizontal() ? 0u : 1u, 0u};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = Philox4x32::generate(ctr, key);
    const std::uint64_t bits = (std::uint64_t{out[0]} << 32) | out[1];
    const std::uint64_t u53 = bits >> 11;

    switch (spec_.kind) {
        case DistributionSpec::Kind::Bernoulli: return u53 < threshold_ ? scale_ : 0;
        case DistributionSpec::Kind::Exponential: {
            const double u = (static_cast<double>(u53) + 0.5) / kTwoPow53;  // in (0, 1)
            const double v = static_cast<double>(scale_) * (-portable_log(u)) / spec_.first.to_double();
            const auto q = static_cast<std::int64_t>(std::llround(v));
            return q > kCapacityCap ? kCapacityCap : q;
        }
        case DistributionSpec::Kind::Uniform: {
            const double u = (static_cast<double>(u53) + 0.5) / kTwoPow53;
            const double lo = spec_.first.to_double();
            const double hi = spec_.second.to_double();
            const auto q = static_cast<std::int64_t>(std::llround(static_cast<double>(scale_) * (lo + (hi - lo) * u)));
            return q > kCapacityCap ? kCapacityCap : q;
        }
        case DistributionSpec::Kind::Constant: break;
    }
    return constant_value_;
}

CapacityField CapacityField::with_override(const Bond& e, std::int64_t value) const {
    require(value >= 0, "capacities are nonnegative");
    auto copy = overrides_ ? std::make_shared<std::map<Bond, std::int64_t>>(*overrides_)
                           : std::make_shared<std::map<Bond, std::int64_t>>();
    (*copy)[e] = value;
    CapacityField out = *this;
    out.overrides_ = std::move(copy);
    return out;
}

double portable_log(double x) noexcept {
    if (!(x > 0.0)) return x == 0.0 ? -HUGE_VAL : NAN;
    if (std::isinf(x)) return x;
    int exponent = 0;
    double m = std::frexp(x, &exponent);  // x = m * 2^exponent, m in [1/2, 1)
    if (m < 0.70710678118654752440) {
        m *= 2.0;
        --exponent;
    }
    // ln m = 2 atanh(s), s = (m - 1)/(m + 1), |s| < 0.1716
    const double s = (m - 1.0) / (m + 1.0);
    const double s2 = s * s;
    double series = 0.0;
    for (int k = 23; k >= 3; k -= 2) series = (series + 1.0 / k) * s2;
    const double ln_m = 2.0 * s * (1.0 + series);
    constexpr double kLn2Hi = 6.93147180369123816490e-01;
    constexpr double kLn2Lo = 1.90821492927058770002e-10;
    return exponent * kLn2Hi + (ln_m + exponent * kLn2Lo);
}

}  // namespace capflow
