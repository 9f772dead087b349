#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace disloc {

/// Uniform periodic grid on [-L, L) with n points, n a power of two >= 16.
class Grid {
public:
    /// Throws DomainError unless n >= 16 is a power of two and L > 0.
    Grid(int n, double half_length);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_); }
    double half_length() const noexcept { return half_length_; }
    double spacing() const noexcept { return spacing_; }

    double x(std::size_t j) const noexcept { return -half_length_ + static_cast<double>(j) * spacing_; }

    /// Physical frequency of integer wavenumber k.
    double frequency(std::size_t k) const noexcept {
        return std::numbers::pi * static_cast<double>(k) / half_length_;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_;
    double half_length_;
    double spacing_;
};

/// Real samples on a Grid; values[j] lives at grid.x(j).
struct Field {
    Grid grid;
    std::vector<double> values;

    explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}
    Field(const Grid& g, std::vector<double> v);

    static Field sample(const Grid& g, const std::function<double(double)>& fn);

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }
    std::span<const double> span() const noexcept { return values; }

    double mean() const;
    bool all_finite() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// max_j |a_j - b_j|; grids must agree.
double max_abs_diff(const Field& a, const Field& b);

}  // namespace disloc
