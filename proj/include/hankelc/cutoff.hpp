#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hankelc/error.hpp"
#include "hankelc/multiindex.hpp"

namespace hankelc {

/// Truncated Taylor series a_0 + a_1 e + ... + a_N e^N.
class Jet {
public:
    explicit Jet(std::size_t order, double value = 0.0, double slope = 0.0) : c_(order + 1, 0.0) {
        c_[0] = value;
        if (order > 0) c_[1] = slope;
    }

    std::size_t order() const noexcept { return c_.size() - 1; }
    double operator[](std::size_t i) const { return c_[i]; }

    /// m-th derivative at the expansion point.
    double derivative(std::size_t m) const { return c_[m] * factorial(m).convert_to<double>(); }

    friend Jet operator+(Jet a, const Jet& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend Jet operator-(Jet a, const Jet& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; i + j < a.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c_[0] == 0.0) throw DomainError("jet division by zero");
        Jet r(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            double s = a.c_[i];
            for (std::size_t j = 1; j <= i; ++j) s -= b.c_[j] * r.c_[i - j];
            r.c_[i] = s / b.c_[0];
        }
        return r;
    }
    friend Jet operator*(double s, Jet a) {
        for (auto& v : a.c_) v *= s;
        return a;
    }

    friend Jet exp(const Jet& a) {
        // e' = a' e, solved coefficient by coefficient.
        Jet r(a.order());
        r.c_[0] = std::exp(a.c_[0]);
        for (std::size_t k = 1; k < a.c_.size(); ++k) {
            double s = 0.0;
            for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
            r.c_[k] = s / static_cast<double>(k);
        }
        return r;
    }

private:
    std::vector<double> c_;
};

/// Radial cutoff ψ(x) = ψ̃(||x||²): 1 for ||x|| <= a/2, 0 for ||x|| >= a,
/// with the e^{-1/t} bridge in s = ||x||² between.
class CutoffSpec {
public:
    explicit CutoffSpec(double outer = 1.0) : outer_(outer) {
        if (!(outer > 0.0)) throw DomainError("cutoff radius must be positive");
    }

    double inner() const noexcept { return outer_ / 2; }
    double outer() const noexcept { return outer_; }

    /// ψ̃ and its first `order` derivatives in s.
    Jet profile(double s, std::size_t order) const {
        const double lo = inner() * inner(), hi = outer_ * outer_;
        if (s <= lo) return Jet(order, 1.0);
        if (s >= hi) return Jet(order, 0.0);
        const Jet t(order, (hi - s) / (hi - lo), -1.0 / (hi - lo));
        const Jet one(order, 1.0);
        const Jet g = exp(Jet(order, -1.0) / t);
        const Jet h = exp(Jet(order, -1.0) / (one - t));
        return g / (g + h);
    }

    double operator()(std::span<const double> x) const { return profile(norm2(x), 0)[0]; }

    /// T^k ψ(x) = 2^{|k|} ψ̃^{(|k|)}(||x||²), since T_i ψ̃(s) = 2 ψ̃'(s).
    double Tk(const MultiIndex& k, std::span<const double> x) const {
        const std::size_t m = k.length();
        return std::ldexp(profile(norm2(x), m).derivative(m), static_cast<int>(m));
    }

private:
    static double norm2(std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    }

    double outer_;
};

}  // namespace hankelc
