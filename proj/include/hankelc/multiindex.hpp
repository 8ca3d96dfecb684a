#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "hankelc/error.hpp"
#include "hankelc/rational.hpp"

namespace hankelc {

/// n-tuple of naturals indexing operator powers and monomial exponents.
///
/// Ordering is graded-lexicographic: first by length |k|, then
/// lexicographically by entries. Every container keyed by MultiIndex in
/// this library therefore iterates in the canonical output order.
class MultiIndex {
public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
    MultiIndex(std::initializer_list<value_type> init) : entries_(init) {}
    explicit MultiIndex(std::vector<value_type> entries) : entries_(std::move(entries)) {}

    static MultiIndex unit(std::size_t n, std::size_t axis) {
        MultiIndex e(n);
        e[axis] = 1;
        return e;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    value_type operator[](std::size_t i) const { return entries_[i]; }
    value_type& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<value_type>& entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    std::uint64_t length() const noexcept {
        return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
    }
    bool is_zero() const noexcept {
        return std::all_of(entries_.begin(), entries_.end(), [](value_type v) { return v == 0; });
    }

    /// Componentwise j <= k.
    bool dominated_by(const MultiIndex& k) const {
        check_same(k);
        for (std::size_t i = 0; i < size(); ++i)
            if (entries_[i] > k.entries_[i]) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        check_same(o);
        MultiIndex r(*this);
        for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += o.entries_[i];
        return r;
    }

    /// Componentwise difference; requires o <= *this.
    MultiIndex operator-(const MultiIndex& o) const {
        check_same(o);
        MultiIndex r(*this);
        for (std::size_t i = 0; i < size(); ++i) {
            if (o.entries_[i] > entries_[i])
                throw ComponentExceeds("multi-index subtraction with negative component");
            r.entries_[i] -= o.entries_[i];
        }
        return r;
    }

    std::strong_ordering operator<=>(const MultiIndex& o) const {
        if (auto c = size() <=> o.size(); c != 0) return c;
        if (auto c = length() <=> o.length(); c != 0) return c;
        return entries_ <=> o.entries_;
    }
    bool operator==(const MultiIndex& o) const = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        return s + ")";
    }

    void check_same(const MultiIndex& o) const {
        if (size() != o.size())
            throw DimensionMismatch("multi-index dimensions differ: " + std::to_string(size()) +
                                    " vs " + std::to_string(o.size()));
    }

private:
    std::vector<value_type> entries_;
};

inline std::uint64_t mi_length(const MultiIndex& k) { return k.length(); }

inline BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    BigInt out = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        out *= n - r + i;
        out /= i;
    }
    return out;
}

/// k! = k1!...kn!
inline BigInt mi_factorial(const MultiIndex& k) {
    BigInt r = 1;
    for (auto v : k) r *= factorial(v);
    return r;
}

inline BigInt mi_binomial(const MultiIndex& k, const MultiIndex& j) {
    k.check_same(j);
    BigInt r = 1;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (j[i] > k[i])
            throw ComponentExceeds("binomial(" + k.str() + ", " + j.str() + "): component " +
                                   std::to_string(i) + " exceeds");
        r *= binomial(k[i], j[i]);
    }
    return r;
}

namespace detail {

inline void enumerate_box(const MultiIndex& k, std::size_t axis, MultiIndex& cur,
                          std::vector<MultiIndex>& out) {
    if (axis == k.size()) {
        out.push_back(cur);
        return;
    }
    for (MultiIndex::value_type v = 0; v <= k[axis]; ++v) {
        cur[axis] = v;
        enumerate_box(k, axis + 1, cur, out);
    }
    cur[axis] = 0;
}

// All indices of exact length `remaining` on axes [axis, n), lexicographic.
inline void enumerate_exact(std::size_t n, std::size_t axis, std::uint32_t remaining,
                            MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (axis + 1 == n) {
        cur[axis] = remaining;
        out.push_back(cur);
        cur[axis] = 0;
        return;
    }
    for (std::uint32_t v = 0; v <= remaining; ++v) {
        cur[axis] = v;
        enumerate_exact(n, axis + 1, remaining - v, cur, out);
    }
    cur[axis] = 0;
}

}  // namespace detail

/// All j with 0 <= j <= k componentwise, graded-lex order.
inline std::vector<MultiIndex> mi_below(const MultiIndex& k) {
    std::vector<MultiIndex> out;
    MultiIndex cur(k.size());
    detail::enumerate_box(k, 0, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Multi-indices of exact length d in n variables, lexicographic.
inline std::vector<MultiIndex> mi_of_length(std::size_t n, std::uint32_t d) {
    if (n == 0) throw DimensionMismatch("multi-index dimension must be >= 1");
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    detail::enumerate_exact(n, 0, d, cur, out);
    return out;
}

/// All k with |k| <= D, graded then lexicographic.
inline std::vector<MultiIndex> mi_graded_enumerate(std::size_t n, std::uint32_t max_degree) {
    std::vector<MultiIndex> out;
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        auto layer = mi_of_length(n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace hankelc
