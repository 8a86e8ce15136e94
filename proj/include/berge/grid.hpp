#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "berge/errors.hpp"

namespace berge {

/// Uniform axis-aligned lattice over a bounded window, with the Euclidean
/// metric. Point 0 is the all-lo corner, the last point the all-hi corner;
/// points enumerate in lexicographic coordinate order (axis 0 slowest).
class GridSpace {
public:
    /// Throws InvalidWindow unless lo < hi and count >= 2 on every axis.
    GridSpace(std::vector<std::pair<double, double>> windows, std::vector<std::size_t> counts);

    std::size_t dim() const { return windows_.size(); }
    std::size_t size() const { return total_; }
    double lo(std::size_t axis) const { return windows_[axis].first; }
    double hi(std::size_t axis) const { return windows_[axis].second; }
    std::size_t count(std::size_t axis) const { return counts_[axis]; }
    double step(std::size_t axis) const { return steps_[axis]; }

    /// Largest per-axis spacing; the "one mesh width" unit.
    double mesh_width() const { return mesh_; }

    std::vector<double> point(std::size_t index) const;
    std::vector<std::size_t> unflatten(std::size_t index) const;
    std::size_t flatten(const std::vector<std::size_t>& multi) const;

    /// Index of the lattice point nearest to an arbitrary position.
    std::size_t nearest(const std::vector<double>& pos) const;

    double distance(std::size_t a, std::size_t b) const;

    /// True if any coordinate of the point sits on the window edge.
    bool on_boundary(std::size_t index) const;

private:
    std::vector<std::pair<double, double>> windows_;
    std::vector<std::size_t> counts_;
    std::vector<double> steps_;
    std::size_t total_ = 1;
    double mesh_ = 0.0;
};

using GridPtr = std::shared_ptr<const GridSpace>;

GridPtr build_grid(std::vector<std::pair<double, double>> windows, std::vector<std::size_t> counts);

/// Nonempty axis-aligned sub-box of a grid, by inclusive index ranges.
class CompactWindow {
public:
    CompactWindow(GridPtr grid, std::vector<std::size_t> lo, std::vector<std::size_t> hi);

    static CompactWindow whole(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    bool contains(std::size_t index) const;
    /// Member indices in ascending (lexicographic) order.
    std::vector<std::size_t> indices() const;
    std::size_t size() const;

    const std::vector<std::size_t>& lo() const { return lo_; }
    const std::vector<std::size_t>& hi() const { return hi_; }

private:
    GridPtr grid_;
    std::vector<std::size_t> lo_, hi_;
};

/// All grid points q != p with d(p, q) <= delta, ascending by index.
std::vector<std::size_t> neighbors(const GridSpace& grid, std::size_t p, double delta);

/// Finite stand-in for a convergent sequence: points with nonincreasing
/// distance to a designated limit, ending within one mesh width of it.
struct SequencePath {
    std::vector<std::size_t> points;  // length >= 2
    std::size_t limit = 0;
};

/// Validates the SequencePath invariants against a grid.
void validate_path(const GridSpace& grid, const SequencePath& path);

/// Deterministic path sampler. Always emits the constant path at `limit`
/// and one axis-aligned approach per axis with room, then seeded paths with
/// geometrically shrinking distance until at least `count` paths exist.
std::vector<SequencePath> generate_paths(const GridPtr& grid, std::size_t limit, std::size_t length,
                                         std::size_t count, std::uint64_t seed);

/// One length-2 constant path per ordered pair (a, b) with a within one mesh
/// width of b (including a == b): points (a, a), limit b. These probes drive
/// the net-based checks at mesh scale and are what "exhaustive paths" means
/// on a grid.
std::vector<SequencePath> exhaustive_probe_paths(const GridPtr& grid);

}  // namespace berge
