#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jhit {

/// Uniform (N+1) x (N+1) vertex grid on [0,1]^2, node (i, j) at (i/N, j/N).
class Grid {
public:
    explicit Grid(int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double h() const noexcept { return 1.0 / n_; }
    [[nodiscard]] double x(int i) const noexcept { return static_cast<double>(i) / n_; }
    [[nodiscard]] double z(int j) const noexcept { return static_cast<double>(j) / n_; }
    [[nodiscard]] std::size_t nodes() const noexcept {
        return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1);
    }

    static constexpr int kMinN = 4;

private:
    int n_;
};

/// Nodal values V_{i,j}, stored row by row in j (rows are solved in j order).
/// Reads outside the grid through value() return 0; ghosts are never stored.
class FieldGrid {
public:
    explicit FieldGrid(int n, double fill = 0.0);
    FieldGrid(int n, std::vector<double> values);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] Grid grid() const { return Grid(n_); }

    [[nodiscard]] double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
    [[nodiscard]] double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }

    /// Ghost-aware read: 0 for i < 0, i > N or j < 0.
    [[nodiscard]] double value(int i, int j) const noexcept {
        if (i < 0 || i > n_ || j < 0 || j > n_) return 0.0;
        return values_[index(i, j)];
    }

    [[nodiscard]] std::span<double> row(int j) noexcept {
        return {values_.data() + index(0, j), static_cast<std::size_t>(n_ + 1)};
    }
    [[nodiscard]] std::span<const double> row(int j) const noexcept {
        return {values_.data() + index(0, j), static_cast<std::size_t>(n_ + 1)};
    }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Bilinear interpolation; (x, z) is clamped to the unit square.
    [[nodiscard]] double interpolate(double x, double z) const noexcept;

    bool operator==(const FieldGrid&) const = default;

private:
    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(i);
    }

    int n_;
    std::vector<double> values_;
};

}  // namespace jhit
