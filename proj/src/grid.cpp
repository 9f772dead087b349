#include "disloc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disloc/errors.hpp"

namespace disloc {

Grid::Grid(int n, double half_length) : n_(n), half_length_(half_length) {
    if (n < 16 || (n & (n - 1)) != 0) {
        throw DomainError("grid size must be a power of two >= 16, got " + std::to_string(n));
    }
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw DomainError("grid half-length must be positive and finite");
    }
    // n is a power of two, so this division is exact.
    spacing_ = 2.0 * half_length / static_cast<double>(n);
}

Field::Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw ValidationError("field has " + std::to_string(values.size()) + " values, grid has " +
                              std::to_string(grid.size()));
    }
}

Field Field::sample(const Grid& g, const std::function<double(double)>& fn) {
    Field f(g);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = fn(g.x(j));
    return f;
}

double Field::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

bool Field::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& other) {
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += other.values[j];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    for (std::size_t j = 0; j < values.size(); ++j) values[j] -= other.values[j];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

double max_abs_diff(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw MismatchError("fields live on different grids");
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace disloc
