#include "berge/grid.hpp"

#include <algorithm>
#include <cmath>

#include "berge/rng.hpp"

namespace berge {

GridSpace::GridSpace(std::vector<std::pair<double, double>> windows,
                     std::vector<std::size_t> counts)
    : windows_(std::move(windows)), counts_(std::move(counts)) {
    if (windows_.empty() || windows_.size() != counts_.size())
        throw InvalidWindow("window and count lists must be nonempty and of equal length");
    steps_.reserve(windows_.size());
    for (std::size_t k = 0; k < windows_.size(); ++k) {
        auto [lo, hi] = windows_[k];
        if (!(lo < hi))
            throw InvalidWindow("axis " + std::to_string(k + 1) + ": window [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "] is empty");
        if (counts_[k] < 2)
            throw InvalidWindow("axis " + std::to_string(k + 1) + ": need at least 2 points");
        double h = (hi - lo) / static_cast<double>(counts_[k] - 1);
        steps_.push_back(h);
        mesh_ = std::max(mesh_, h);
        total_ *= counts_[k];
    }
}

std::vector<double> GridSpace::point(std::size_t index) const {
    std::vector<std::size_t> multi = unflatten(index);
    std::vector<double> p(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        // Endpoints are exact; interior points by uniform stepping.
        p[k] = multi[k] + 1 == counts_[k] ? windows_[k].second
                                          : windows_[k].first + steps_[k] * static_cast<double>(multi[k]);
    }
    return p;
}

std::vector<std::size_t> GridSpace::unflatten(std::size_t index) const {
    std::vector<std::size_t> multi(dim());
    for (std::size_t k = dim(); k-- > 0;) {
        multi[k] = index % counts_[k];
        index /= counts_[k];
    }
    return multi;
}

std::size_t GridSpace::flatten(const std::vector<std::size_t>& multi) const {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dim(); ++k) index = index * counts_[k] + multi[k];
    return index;
}

std::size_t GridSpace::nearest(const std::vector<double>& pos) const {
    std::vector<std::size_t> multi(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        double t = (pos[k] - windows_[k].first) / steps_[k];
        long i = std::lround(t);
        i = std::clamp(i, 0l, static_cast<long>(counts_[k] - 1));
        multi[k] = static_cast<std::size_t>(i);
    }
    return flatten(multi);
}

double GridSpace::distance(std::size_t a, std::size_t b) const {
    std::vector<double> pa = point(a), pb = point(b);
    double s = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) s += (pa[k] - pb[k]) * (pa[k] - pb[k]);
    return std::sqrt(s);
}

bool GridSpace::on_boundary(std::size_t index) const {
    std::vector<std::size_t> multi = unflatten(index);
    for (std::size_t k = 0; k < dim(); ++k)
        if (multi[k] == 0 || multi[k] + 1 == counts_[k]) return true;
    return false;
}

GridPtr build_grid(std::vector<std::pair<double, double>> windows,
                   std::vector<std::size_t> counts) {
    return std::make_shared<const GridSpace>(std::move(windows), std::move(counts));
}

CompactWindow::CompactWindow(GridPtr grid, std::vector<std::size_t> lo, std::vector<std::size_t> hi)
    : grid_(std::move(grid)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != grid_->dim() || hi_.size() != grid_->dim())
        throw InvalidWindow("window index ranges must match the grid dimension");
    for (std::size_t k = 0; k < lo_.size(); ++k)
        if (lo_[k] > hi_[k] || hi_[k] >= grid_->count(k))
            throw InvalidWindow("axis " + std::to_string(k + 1) + ": bad index range [" +
                                std::to_string(lo_[k]) + ", " + std::to_string(hi_[k]) + "]");
}

CompactWindow CompactWindow::whole(GridPtr grid) {
    std::vector<std::size_t> lo(grid->dim(), 0), hi(grid->dim());
    for (std::size_t k = 0; k < grid->dim(); ++k) hi[k] = grid->count(k) - 1;
    return CompactWindow(std::move(grid), std::move(lo), std::move(hi));
}

bool CompactWindow::contains(std::size_t index) const {
    std::vector<std::size_t> multi = grid_->unflatten(index);
    for (std::size_t k = 0; k < multi.size(); ++k)
        if (multi[k] < lo_[k] || multi[k] > hi_[k]) return false;
    return true;
}

std::vector<std::size_t> CompactWindow::indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    std::vector<std::size_t> multi = lo_;
    for (;;) {
        out.push_back(grid_->flatten(multi));
        std::size_t k = multi.size();
        bool advanced = false;
        while (k-- > 0) {
            if (multi[k] < hi_[k]) {
                ++multi[k];
                for (std::size_t j = k + 1; j < multi.size(); ++j) multi[j] = lo_[j];
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
}

std::size_t CompactWindow::size() const {
    std::size_t n = 1;
    for (std::size_t k = 0; k < lo_.size(); ++k) n *= hi_[k] - lo_[k] + 1;
    return n;
}

std::vector<std::size_t> neighbors(const GridSpace& grid, std::size_t p, double delta) {
    if (!(delta > 0.0)) throw Error("neighbors: delta must be positive");
    std::vector<std::size_t> pm = grid.unflatten(p);
    // Bounding box of candidate offsets per axis, then exact filter.
    std::vector<std::size_t> lo(grid.dim()), hi(grid.dim());
    for (std::size_t k = 0; k < grid.dim(); ++k) {
        auto radius = static_cast<std::size_t>(std::floor(delta / grid.step(k) + 1e-12));
        lo[k] = pm[k] >= radius ? pm[k] - radius : 0;
        hi[k] = std::min(pm[k] + radius, grid.count(k) - 1);
    }
    std::vector<std::size_t> out;
    std::vector<std::size_t> multi = lo;
    for (;;) {
        std::size_t q = grid.flatten(multi);
        if (q != p && grid.distance(p, q) <= delta * (1.0 + 1e-12)) out.push_back(q);
        std::size_t k = multi.size();
        bool done = true;
        while (k-- > 0) {
            if (multi[k] < hi[k]) {
                ++multi[k];
                for (std::size_t j = k + 1; j < multi.size(); ++j) multi[j] = lo[j];
                done = false;
                break;
            }
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

void validate_path(const GridSpace& grid, const SequencePath& path) {
    if (path.points.size() < 2) throw Error("sequence path needs at least 2 points");
    if (path.limit >= grid.size()) throw Error("path limit outside the grid");
    double prev = grid.distance(path.points.front(), path.limit);
    for (std::size_t i = 1; i < path.points.size(); ++i) {
        double d = grid.distance(path.points[i], path.limit);
        if (d > prev * (1.0 + 1e-12) + 1e-12)
            throw Error("path distances to the limit must be nonincreasing");
        prev = d;
    }
    if (grid.distance(path.points.back(), path.limit) > grid.mesh_width() * (1.0 + 1e-9))
        throw Error("path must end within one mesh width of its limit");
}

namespace {

// Snap the straight segment from `start` toward `limit` at geometrically
// shrinking distances; repair any rounding that breaks monotonicity.
SequencePath segment_path(const GridSpace& grid, std::size_t start, std::size_t limit,
                          std::size_t length) {
    std::vector<double> a = grid.point(start), b = grid.point(limit);
    SequencePath path;
    path.limit = limit;
    path.points.reserve(length);
    double prev_dist = grid.distance(start, limit);
    std::size_t prev = start;
    for (std::size_t k = 0; k < length; ++k) {
        double t = k == 0 ? 1.0 : std::pow(0.5, static_cast<double>(k));
        std::vector<double> pos(grid.dim());
        for (std::size_t j = 0; j < grid.dim(); ++j) pos[j] = b[j] + (a[j] - b[j]) * t;
        std::size_t q = k + 1 == length ? limit : grid.nearest(pos);
        double d = grid.distance(q, limit);
        if (d > prev_dist) {
            q = prev;
            d = prev_dist;
        }
        path.points.push_back(q);
        prev = q;
        prev_dist = d;
    }
    return path;
}

}  // namespace

std::vector<SequencePath> generate_paths(const GridPtr& grid, std::size_t limit,
                                         std::size_t length, std::size_t count,
                                         std::uint64_t seed) {
    if (length < 2) throw Error("generate_paths: length must be at least 2");
    if (count < 1) throw Error("generate_paths: count must be at least 1");
    if (limit >= grid->size()) throw Error("generate_paths: limit outside the grid");

    std::vector<SequencePath> out;
    out.push_back(SequencePath{std::vector<std::size_t>(length, limit), limit});

    // One straight axis walk per axis, approaching from the roomier side.
    std::vector<std::size_t> lm = grid->unflatten(limit);
    for (std::size_t k = 0; k < grid->dim(); ++k) {
        std::size_t room_below = lm[k];
        std::size_t room_above = grid->count(k) - 1 - lm[k];
        if (room_below == 0 && room_above == 0) continue;
        bool from_below = room_below >= room_above;
        std::size_t room = from_below ? room_below : room_above;
        SequencePath path;
        path.limit = limit;
        for (std::size_t i = 0; i < length; ++i) {
            std::size_t offset = std::min(length - 1 - i, room);
            std::vector<std::size_t> multi = lm;
            multi[k] = from_below ? lm[k] - offset : lm[k] + offset;
            path.points.push_back(grid->flatten(multi));
        }
        out.push_back(std::move(path));
    }

    std::mt19937_64 rng(mix_seed(seed, limit));
    while (out.size() < count) {
        std::size_t start = uniform_below(rng, grid->size());
        out.push_back(segment_path(*grid, start, limit, length));
    }
    for (const SequencePath& p : out) validate_path(*grid, p);
    return out;
}

std::vector<SequencePath> exhaustive_probe_paths(const GridPtr& grid) {
    std::vector<SequencePath> out;
    double mesh = grid->mesh_width();
    for (std::size_t b = 0; b < grid->size(); ++b) {
        out.push_back(SequencePath{{b, b}, b});
        for (std::size_t a : neighbors(*grid, b, mesh))
            out.push_back(SequencePath{{a, a}, b});
    }
    return out;
}

}  // namespace berge
