#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "capflow/lattice.hpp"
#include "capflow/rational.hpp"

namespace capflow {

/// Fixed-point quantum: one capacity unit is 2^20 micro-units.
inline constexpr std::int64_t kDefaultScale = std::int64_t{1} << 20;
/// Ceiling applied to samples of unbounded laws, in micro-units.
inline constexpr std::int64_t kCapacityCap = std::int64_t{1} << 32;

/// Common law m of the bond capacities.
struct DistributionSpec {
    enum class Kind { Constant, Bernoulli, Exponential, Uniform };

    Kind kind = Kind::Constant;
    Rational first{1};   // c, p_one, rate, or lo
    Rational second{0};  // hi for Uniform, unused otherwise

    static DistributionSpec constant(const Rational& c);
    static DistributionSpec bernoulli(const Rational& p_one);
    static DistributionSpec exponential(const Rational& rate);
    static DistributionSpec uniform(const Rational& lo, const Rational& hi);

    /// "const:1", "bern:0.7", "exp:1.0", "unif:0:2".
    static DistributionSpec parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct ZeroMass {
    Rational mass;
    bool warning = false;  // m(0) >= 1/2
};

/// m({0}) for the law.
ZeroMass mass_at_zero(const DistributionSpec& spec);

struct TheoremHypotheses {
    Rational zero_mass;
    bool zero_mass_ok = false;    // m(0) < 1/2
    bool exp_moment_ok = false;   // some exponential moment is finite
};

TheoremHypotheses validate_for_theorems(const DistributionSpec& spec);

/// Lazily evaluated i.i.d. capacities on every bond of Z^2.
///
/// capacity(e) = round(scale * sample), where sample is drawn from the law with
/// the uniform variate produced by Philox4x32-10 keyed by the master seed at
/// counter (e.a.x, e.a.y, orientation, 0). The value depends only on
/// (spec, seed, scale, e), so fields can be shared freely between threads.
class CapacityField {
public:
    CapacityField(DistributionSpec spec, std::uint64_t master_seed, std::int64_t scale = kDefaultScale);

    const DistributionSpec& spec() const noexcept { return spec_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::int64_t scale() const noexcept { return scale_; }

    std::int64_t capacity(const Bond& e) const;

    /// Copy of this field with e pinned to `value`; other bonds are unchanged.
    CapacityField with_override(const Bond& e, std::int64_t value) const;

private:
    std::int64_t sample(const Bond& e) const noexcept;

    DistributionSpec spec_;
    std::uint64_t seed_;
    std::int64_t scale_;
    // Bernoulli threshold on the 53-bit uniform integer; constant value for Constant.
    std::uint64_t threshold_ = 0;
    std::int64_t constant_value_ = 0;
    std::shared_ptr<const std::map<Bond, std::int64_t>> overrides_;
};

/// Natural logarithm built only from IEEE-exact operations, so that quantized
/// exponential samples agree across libm implementations.
double portable_log(double x) noexcept;

}  // namespace capflow
