#include "mixdenoise/nonlocal_prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mixdenoise/parallel.hpp"

namespace mixdenoise {

AggregationWeights parse_aggregation_weights(std::string_view text) {
    if (text == "uniform") return AggregationWeights::Uniform;
    if (text == "inverse_sparsity") return AggregationWeights::InverseSparsity;
    throw std::invalid_argument("unknown aggregation weights '" + std::string(text) +
                                "' (expected uniform or inverse_sparsity)");
}

std::string_view to_string(AggregationWeights w) noexcept {
    return w == AggregationWeights::Uniform ? "uniform" : "inverse_sparsity";
}

namespace {

struct WindowRange {
    int first;  // first candidate top-left coordinate
    int last;   // last candidate top-left coordinate, inclusive
};

WindowRange window_range(int ref, int extent, const NonlocalConfig& cfg) {
    const int begin = std::max(0, ref - (cfg.window - cfg.block_size) / 2);
    const int end = std::min(extent, ref - (cfg.window - cfg.block_size) / 2 + cfg.window);
    return {begin, end - cfg.block_size};
}

int candidate_count(WindowRange r) { return std::max(0, r.last - r.first + 1); }

}  // namespace

void NonlocalConfig::validate(int image_width, int image_height) const {
    if (block_size < 2) throw std::invalid_argument("nonlocal.block_size must be >= 2");
    if (group_size < 1) throw std::invalid_argument("nonlocal.group_size must be >= 1");
    if (window < block_size) throw std::invalid_argument("nonlocal.window must be >= block_size");
    if (step < 1) throw std::invalid_argument("nonlocal.step must be >= 1");
    if (image_width < block_size || image_height < block_size) {
        throw std::invalid_argument("image " + std::to_string(image_width) + "x" +
                                    std::to_string(image_height) + " is smaller than block size " +
                                    std::to_string(block_size));
    }
    // The tightest window sits at a corner or, for tiny images, spans the image.
    for (int row : reference_grid(image_height, block_size, step)) {
        for (int col : reference_grid(image_width, block_size, step)) {
            const long long n = static_cast<long long>(candidate_count(window_range(row, image_height, *this))) *
                                candidate_count(window_range(col, image_width, *this));
            if (n < group_size) {
                throw std::invalid_argument(
                    "nonlocal.group_size " + std::to_string(group_size) +
                    " exceeds the " + std::to_string(n) + " candidate blocks available at (" +
                    std::to_string(row) + ", " + std::to_string(col) + ")");
            }
        }
    }
}

std::vector<int> reference_grid(int extent, int block_size, int step) {
    std::vector<int> grid;
    const int last = extent - block_size;
    if (last < 0) return grid;
    for (int p = 0; p <= last; p += step) grid.push_back(p);
    if (grid.back() != last) grid.push_back(last);
    return grid;
}

std::vector<Position> reference_positions(int width, int height, const NonlocalConfig& cfg) {
    const auto rows = reference_grid(height, cfg.block_size, cfg.step);
    const auto cols = reference_grid(width, cfg.block_size, cfg.step);
    std::vector<Position> refs;
    refs.reserve(rows.size() * cols.size());
    for (int r : rows) {
        for (int c : cols) refs.push_back({r, c});
    }
    return refs;
}

double block_distance(const Image& img, Position a, Position b, int block_size) noexcept {
    const auto px = img.pixels();
    const auto w = static_cast<std::size_t>(img.width());
    double sum = 0.0;
    for (int i = 0; i < block_size; ++i) {
        const double* pa = px.data() + static_cast<std::size_t>(a.row + i) * w + static_cast<std::size_t>(a.col);
        const double* pb = px.data() + static_cast<std::size_t>(b.row + i) * w + static_cast<std::size_t>(b.col);
        for (int j = 0; j < block_size; ++j) {
            const double d = pa[j] - pb[j];
            sum += d * d;
        }
    }
    return sum;
}

std::vector<Position> match_blocks(const Image& img, Position ref, const NonlocalConfig& cfg) {
    if (ref.row < 0 || ref.col < 0 || ref.row + cfg.block_size > img.height() ||
        ref.col + cfg.block_size > img.width()) {
        throw std::invalid_argument("reference block lies outside the image");
    }
    const WindowRange rows = window_range(ref.row, img.height(), cfg);
    const WindowRange cols = window_range(ref.col, img.width(), cfg);
    const int available = candidate_count(rows) * candidate_count(cols);
    if (available < cfg.group_size) {
        throw std::invalid_argument("only " + std::to_string(available) +
                                    " candidate blocks for group size " +
                                    std::to_string(cfg.group_size));
    }

    struct Candidate {
        double dist;
        Position pos;
        bool operator<(const Candidate& o) const noexcept {
            return std::tie(dist, pos.row, pos.col) < std::tie(o.dist, o.pos.row, o.pos.col);
        }
    };
    std::vector<Candidate> cands;
    cands.reserve(static_cast<std::size_t>(available));
    for (int r = rows.first; r <= rows.last; ++r) {
        for (int c = cols.first; c <= cols.last; ++c) {
            if (r == ref.row && c == ref.col) continue;
            cands.push_back({block_distance(img, ref, {r, c}, cfg.block_size), {r, c}});
        }
    }
    const auto keep = static_cast<std::ptrdiff_t>(cfg.group_size - 1);
    std::partial_sort(cands.begin(), cands.begin() + keep, cands.end());

    std::vector<Position> members;
    members.reserve(static_cast<std::size_t>(cfg.group_size));
    members.push_back(ref);
    for (std::ptrdiff_t i = 0; i < keep; ++i) members.push_back(cands[static_cast<std::size_t>(i)].pos);
    return members;
}

namespace {

void gather(const Image& img, std::span<const Position> members, int bs, std::span<double> stack) {
    std::size_t k = 0;
    for (const Position& p : members) {
        for (int i = 0; i < bs; ++i) {
            for (int j = 0; j < bs; ++j) stack[k++] = img(p.row + i, p.col + j);
        }
    }
}

}  // namespace

BlockGroup make_group(const Image& img, Position ref, const NonlocalConfig& cfg) {
    BlockGroup g{ref, match_blocks(img, ref, cfg), {}};
    g.stack.resize(static_cast<std::size_t>(cfg.block_size * cfg.block_size) *
                   static_cast<std::size_t>(cfg.group_size));
    gather(img, g.members, cfg.block_size, g.stack);
    return g;
}

std::size_t GroupSpectrum::total_length() const noexcept {
    return static_cast<std::size_t>(block_size * block_size) * static_cast<std::size_t>(group_size) *
           groups.size();
}

std::size_t GroupSpectrum::count_nonzero() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups) {
        for (double c : g.coeffs) n += std::abs(c) > kNonzeroEpsilon ? 1 : 0;
    }
    return n;
}

GroupSpectrum compute_spectrum(const Image& img, const NonlocalConfig& cfg) {
    cfg.validate(img.width(), img.height());
    const GroupTransform t3d(cfg.block_size, cfg.group_size);
    const auto refs = reference_positions(img.width(), img.height(), cfg);
    GroupSpectrum spec{cfg.block_size, cfg.group_size, {}};
    spec.groups.resize(refs.size());
    parallel_for(static_cast<int>(refs.size()), [&](int i) {
        auto g = make_group(img, refs[static_cast<std::size_t>(i)], cfg);
        t3d.forward(g.stack);
        spec.groups[static_cast<std::size_t>(i)] = {g.ref_pos, std::move(g.members), std::move(g.stack)};
    });
    return spec;
}

std::size_t phi_nc(const Image& img, const NonlocalConfig& cfg) {
    cfg.validate(img.width(), img.height());
    const GroupTransform t3d(cfg.block_size, cfg.group_size);
    const auto refs = reference_positions(img.width(), img.height(), cfg);
    std::vector<std::size_t> partial(static_cast<std::size_t>(worker_count()), 0);
    parallel_chunks(static_cast<int>(refs.size()), [&](int worker, int begin, int end) {
        std::size_t n = 0;
        for (int i = begin; i < end; ++i) {
            auto g = make_group(img, refs[static_cast<std::size_t>(i)], cfg);
            t3d.forward(g.stack);
            for (double c : g.stack) n += std::abs(c) > kNonzeroEpsilon ? 1 : 0;
        }
        partial[static_cast<std::size_t>(worker)] = n;
    });
    std::size_t total = 0;
    for (std::size_t n : partial) total += n;
    return total;
}

void hard_threshold(std::span<double> coeffs, double a) noexcept {
    for (double& c : coeffs) c = hard_threshold(c, a);
}

double w_threshold(int width, int height, double beta, double mu2, const NonlocalConfig& cfg) {
    const auto refs = reference_positions(width, height, cfg);
    const double k = static_cast<double>(cfg.block_size * cfg.block_size) * cfg.group_size *
                     static_cast<double>(refs.size());
    const double n = static_cast<double>(width) * static_cast<double>(height);
    return std::sqrt(k * beta / (n * mu2));
}

Image collaborative_hard_threshold(const Image& r, double threshold, const NonlocalConfig& cfg) {
    cfg.validate(r.width(), r.height());
    const GroupTransform t3d(cfg.block_size, cfg.group_size);
    const auto refs = reference_positions(r.width(), r.height(), cfg);
    const int bs = cfg.block_size;

    // Per-worker accumulators, reduced in worker order for bit-stable output.
    const int workers = std::min(worker_count(), static_cast<int>(refs.size()));
    std::vector<std::vector<double>> num(static_cast<std::size_t>(workers)),
        den(static_cast<std::size_t>(workers));
    parallel_chunks(static_cast<int>(refs.size()), [&](int worker, int begin, int end) {
        auto& acc = num[static_cast<std::size_t>(worker)];
        auto& wsum = den[static_cast<std::size_t>(worker)];
        acc.assign(r.size(), 0.0);
        wsum.assign(r.size(), 0.0);
        std::vector<double> stack(t3d.length());
        for (int i = begin; i < end; ++i) {
            const auto members = match_blocks(r, refs[static_cast<std::size_t>(i)], cfg);
            gather(r, members, bs, stack);
            t3d.forward(stack);
            std::size_t nnz = 0;
            for (double& c : stack) {
                c = hard_threshold(c, threshold);
                nnz += c != 0.0 ? 1 : 0;
            }
            t3d.inverse(stack);
            const double weight = cfg.weights == AggregationWeights::Uniform
                                      ? 1.0
                                      : 1.0 / static_cast<double>(std::max<std::size_t>(1, nnz));
            std::size_t k = 0;
            for (const Position& p : members) {
                for (int a = 0; a < bs; ++a) {
                    const std::size_t base = static_cast<std::size_t>(p.row + a) *
                                                 static_cast<std::size_t>(r.width()) +
                                             static_cast<std::size_t>(p.col);
                    for (int b = 0; b < bs; ++b) {
                        acc[base + static_cast<std::size_t>(b)] += weight * stack[k++];
                        wsum[base + static_cast<std::size_t>(b)] += weight;
                    }
                }
            }
        }
    });

    Image out = r;
    for (std::size_t i = 0; i < r.size(); ++i) {
        double a = 0.0, w = 0.0;
        for (int k = 0; k < workers; ++k) {
            if (num[static_cast<std::size_t>(k)].empty()) continue;
            a += num[static_cast<std::size_t>(k)][i];
            w += den[static_cast<std::size_t>(k)][i];
        }
        if (w > 0.0) out[i] = a / w;
    }
    return out;
}

Image solve_w(const Image& r, double beta, double mu2, const NonlocalConfig& cfg) {
    if (!(beta > 0.0) || !(mu2 > 0.0)) throw std::invalid_argument("solve_w requires beta, mu2 > 0");
    return collaborative_hard_threshold(r, w_threshold(r.width(), r.height(), beta, mu2, cfg), cfg);
}

}  // namespace mixdenoise
