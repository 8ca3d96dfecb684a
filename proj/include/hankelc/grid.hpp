#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <iomanip>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hankelc/bessel.hpp"
#include "hankelc/error.hpp"

namespace hankelc {

inline constexpr std::size_t kDefaultGridPointCap = 50'000'000;

/// Tensor-product grid; each axis strictly increasing.
class GridSpec {
public:
    GridSpec() = default;
    explicit GridSpec(std::vector<std::vector<double>> axes, std::size_t cap = kDefaultGridPointCap)
        : axes_(std::move(axes)) {
        if (axes_.empty()) throw DimensionMismatch("grid needs at least one axis");
        for (const auto& a : axes_) {
            if (a.empty()) throw DomainError("grid axis is empty");
            for (std::size_t i = 1; i < a.size(); ++i)
                if (!(a[i] > a[i - 1])) throw DomainError("grid axis must be strictly increasing");
        }
        if (total() > cap)
            throw LimitExceeded("grid with " + std::to_string(total()) + " points exceeds cap " +
                                std::to_string(cap));
    }

    /// Same node sequence on every axis.
    static GridSpec uniform_axes(std::size_t n, const std::vector<double>& axis) {
        return GridSpec(std::vector<std::vector<double>>(n, axis));
    }

    std::size_t dim() const noexcept { return axes_.size(); }
    const std::vector<double>& axis(std::size_t i) const { return axes_[i]; }
    const std::vector<std::vector<double>>& axes() const noexcept { return axes_; }

    std::size_t total() const {
        std::size_t t = 1;
        for (const auto& a : axes_) t *= a.size();
        return t;
    }

    /// Multi-index of flat position (row-major, last axis fastest).
    std::vector<std::size_t> unflatten(std::size_t flat) const {
        std::vector<std::size_t> idx(dim());
        for (std::size_t i = dim(); i-- > 0;) {
            idx[i] = flat % axes_[i].size();
            flat /= axes_[i].size();
        }
        return idx;
    }

    void point(std::size_t flat, std::span<double> out) const {
        for (std::size_t i = dim(); i-- > 0;) {
            out[i] = axes_[i][flat % axes_[i].size()];
            flat /= axes_[i].size();
        }
    }

private:
    std::vector<std::vector<double>> axes_;
};

/// count points evenly spaced on [lo, hi] (inclusive).
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw DomainError("linspace count must be positive");
    if (count == 1) return {lo};
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    v.back() = hi;
    return v;
}

/// count points geometrically spaced on [lo, hi], lo > 0.
inline std::vector<double> geomspace(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("geomspace needs 0 < lo < hi");
    std::vector<double> v = linspace(std::log(lo), std::log(hi), count);
    for (auto& x : v) x = std::exp(x);
    v.front() = lo;
    v.back() = hi;
    return v;
}

/// Sampled field on a grid (values row-major, last axis fastest).
struct GridFunction {
    GridSpec spec;
    std::vector<double> values;
    std::optional<MuVector> mu;

    GridFunction() = default;
    GridFunction(GridSpec s, std::vector<double> v, std::optional<MuVector> m = std::nullopt)
        : spec(std::move(s)), values(std::move(v)), mu(std::move(m)) {
        if (values.size() != spec.total())
            throw DimensionMismatch("grid function has " + std::to_string(values.size()) +
                                    " values for " + std::to_string(spec.total()) + " points");
    }

    std::size_t dim() const noexcept { return spec.dim(); }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    void write_csv(std::ostream& os) const {
        for (std::size_t i = 0; i < dim(); ++i) os << "x" << (i + 1) << ",";
        os << "value\n";
        os << std::setprecision(17);
        std::vector<double> p(dim());
        for (std::size_t f = 0; f < values.size(); ++f) {
            spec.point(f, p);
            for (double x : p) os << x << ",";
            os << values[f] << "\n";
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["spec"] = {{"axes", spec.axes()}};
        j["values"] = values;
        if (mu) {
            nlohmann::json m = nlohmann::json::array();
            for (const auto& q : mu->orders()) m.push_back(format_rational(q));
            j["mu"] = m;
        }
        return j;
    }

    static GridFunction from_json(const nlohmann::json& j) {
        GridSpec s(j.at("spec").at("axes").get<std::vector<std::vector<double>>>());
        std::optional<MuVector> m;
        if (j.contains("mu")) {
            std::vector<Rational> orders;
            for (const auto& e : j.at("mu")) orders.push_back(parse_rational(e.get<std::string>()));
            m = MuVector(std::move(orders));
        }
        return GridFunction(std::move(s), j.at("values").get<std::vector<double>>(), std::move(m));
    }
};

/// Local 4-point Lagrange interpolation on a uniform axis starting at 0,
/// extended evenly (v(-y) = v(y)) for the stencil near the origin.
/// Tensorised over all axes; intended for smooth even u-parts.
class EvenUniformInterpolator {
public:
    EvenUniformInterpolator(std::vector<std::size_t> counts, double step, std::vector<double> values)
        : counts_(std::move(counts)), step_(step), values_(std::move(values)) {
        std::size_t total = 1;
        for (auto c : counts_) {
            if (c < 4) throw DomainError("interpolation axis needs at least 4 points");
            total *= c;
        }
        if (total != values_.size()) throw DimensionMismatch("interpolator value count mismatch");
    }

    std::size_t dim() const noexcept { return counts_.size(); }

    /// Zero outside [0, (count-1) step] on any axis.
    double operator()(std::span<const double> y) const {
        const std::size_t n = dim();
        std::vector<std::array<std::size_t, 4>> idx(n);
        std::vector<std::array<double, 4>> wts(n);
        for (std::size_t a = 0; a < n; ++a) {
            const double t = y[a] / step_;
            const double last = static_cast<double>(counts_[a] - 1);
            if (t < 0.0 || t > last) return 0.0;
            long base = static_cast<long>(std::floor(t)) - 1;
            base = std::min<long>(base, static_cast<long>(counts_[a]) - 4);
            const double s = t - static_cast<double>(base);
            for (int m = 0; m < 4; ++m) {
                const long node = base + m;
                idx[a][m] = static_cast<std::size_t>(node < 0 ? -node : node);
                double w = 1.0;
                for (int q = 0; q < 4; ++q)
                    if (q != m) w *= (s - q) / static_cast<double>(m - q);
                wts[a][m] = w;
            }
        }
        double sum = 0.0;
        const std::size_t combos = std::size_t{1} << (2 * n);
        for (std::size_t c = 0; c < combos; ++c) {
            std::size_t flat = 0;
            double w = 1.0;
            for (std::size_t a = 0; a < n; ++a) {
                const std::size_t m = (c >> (2 * a)) & 3u;
                flat = flat * counts_[a] + idx[a][m];
                w *= wts[a][m];
            }
            sum += w * values_[flat];
        }
        return sum;
    }

private:
    std::vector<std::size_t> counts_;
    double step_;
    std::vector<double> values_;
};

}  // namespace hankelc
