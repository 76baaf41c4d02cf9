#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sqdisk/packer.hpp"

namespace sqdisk {

const char* to_string(Distribution d) {
    switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::Powerlaw: return "powerlaw";
    case Distribution::Equal: return "equal";
    default: return "adversarial_top4";
    }
}

std::optional<Distribution> parse_distribution(const std::string& name) {
    for (Distribution d : {Distribution::Uniform, Distribution::Powerlaw, Distribution::Equal,
                           Distribution::AdversarialTop4}) {
        if (name == to_string(d)) return d;
    }
    return std::nullopt;
}

Instance gen_worst_case(double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be a finite number >= 0");
    const double s = DiskConstants::worst_side + epsilon;
    return Instance{{s, s}};
}

namespace {

// Scales `sides` to total area `target`, then recomputes the last side so
// the sum of squares matches the target up to rounding.
void scale_to_area(std::vector<double>& sides, double target) {
    if (sides.empty()) return;
    double sum = 0.0;
    for (double s : sides) sum += s * s;
    const double f = std::sqrt(target / sum);
    for (double& s : sides) s *= f;
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < sides.size(); ++i) head += sides[i] * sides[i];
    const double last = target - head;
    if (last > 0.0) sides.back() = std::sqrt(last);
}

}  // namespace

Instance gen_random(std::uint64_t seed, std::size_t n, double target_area, Distribution dist) {
    if (n == 0) throw InputError("n must be positive");
    if (!(target_area > 0.0) || !std::isfinite(target_area)) throw InputError("target area must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> sides(n);

    switch (dist) {
    case Distribution::Uniform:
        for (double& s : sides) s = 0.05 + 0.95 * unit(rng);
        scale_to_area(sides, target_area);
        break;
    case Distribution::Powerlaw:
        // Pareto with tail index 1.5, truncated to keep the ratio bounded.
        for (double& s : sides) s = std::min(std::pow(1.0 - unit(rng), -1.0 / 1.5), 1e4);
        scale_to_area(sides, target_area);
        break;
    case Distribution::Equal:
        std::fill(sides.begin(), sides.end(), std::sqrt(target_area / static_cast<double>(n)));
        break;
    case Distribution::AdversarialTop4: {
        if (n < 4) throw InputError("adversarial_top4 needs n >= 4");
        if (target_area < 39.0 / 25.0) throw InputError("adversarial_top4 needs area >= 1.56");
        if (target_area > 2.0 + 1e-12 && n == 4) throw InputError("four squares of side at most 1/sqrt 2 exceed area 2");
        const double top = n == 4 ? target_area : 39.0 / 25.0 + (std::min(target_area, 2.0) - 39.0 / 25.0) * unit(rng);
        // Four areas around top/4, each at most 1/2.
        double a[4];
        double mean = 0.0;
        for (double& v : a) {
            v = 0.08 * (unit(rng) - 0.5);
            mean += v / 4.0;
        }
        for (double& v : a) v = std::min(0.5, top / 4.0 + v - mean);
        const double deficit = top - (a[0] + a[1] + a[2] + a[3]);
        for (double& v : a) v = std::min(0.5, v + deficit / 4.0);
        for (int i = 0; i < 4; ++i) sides[i] = std::sqrt(a[i]);
        std::sort(sides.begin(), sides.begin() + 4, std::greater<>());
        if (n > 4) {
            const double head = a[0] + a[1] + a[2] + a[3];
            const double rest = target_area - head;
            if (rest <= 0.0) throw InputError("adversarial_top4: no area left for the remaining squares");
            std::vector<double> tail(n - 4);
            for (double& s : tail) s = 0.05 + 0.95 * unit(rng);
            scale_to_area(tail, rest);
            const double cap = sides[3];
            if (*std::max_element(tail.begin(), tail.end()) > cap) {
                std::fill(tail.begin(), tail.end(), std::sqrt(rest / static_cast<double>(tail.size())));
            }
            std::copy(tail.begin(), tail.end(), sides.begin() + 4);
        }
        break;
    }
    }
    return Instance{std::move(sides)};
}

}  // namespace sqdisk
