#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace logsle {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for stream `index` derived from the master seed. Streams are a pure
/// function of (master, index), so ensembles are reproducible for any
/// worker count and schedule.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t s = master;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ (index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64(s);
}

/// Deterministic standard-normal stream (Box-Muller on a seeded mt19937_64).
/// Kept self-contained so outputs do not depend on library internals.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double uniform01()
    {
        // (0,1], so the logarithm below is always finite
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double standard_normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Gaussian increment of mean 0 and variance dt.
    double increment(double dt) { return standard_normal() * std::sqrt(dt); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// n independent Gaussian increments of variance dt; identical output for
/// identical (seed, n, dt).
inline std::vector<double> brownian_increments(std::uint64_t seed, std::size_t n, double dt)
{
    GaussianStream stream(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = stream.increment(dt);
    return out;
}

} // namespace logsle
