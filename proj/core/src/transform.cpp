#include "mixdenoise/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mixdenoise {

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> dct_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dct size must be positive");
    std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double alpha = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int i = 0; i < n; ++i) {
            m[static_cast<std::size_t>(k * n + i)] =
                alpha * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
        }
    }
    return m;
}

std::vector<double> haar_matrix(int n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("haar size must be a power of two, got " + std::to_string(n));
    }
    std::vector<double> h{1.0};
    const double s = 1.0 / std::numbers::sqrt2;
    for (int size = 1; size < n; size *= 2) {
        const int next = 2 * size;
        std::vector<double> g(static_cast<std::size_t>(next) * static_cast<std::size_t>(next), 0.0);
        // Top half: coarser basis applied to pairwise sums.
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const double v = s * h[static_cast<std::size_t>(r * size + c)];
                g[static_cast<std::size_t>(r * next + 2 * c)] = v;
                g[static_cast<std::size_t>(r * next + 2 * c + 1)] = v;
            }
        }
        // Bottom half: finest-scale differences.
        for (int r = 0; r < size; ++r) {
            g[static_cast<std::size_t>((size + r) * next + 2 * r)] = s;
            g[static_cast<std::size_t>((size + r) * next + 2 * r + 1)] = -s;
        }
        h = std::move(g);
    }
    return h;
}

GroupTransform::GroupTransform(int block_size, int group_size)
    : bs_(block_size), gs_(group_size), dct_(dct_matrix(block_size)) {
    if (block_size < 1 || group_size < 1) {
        throw std::invalid_argument("group transform sizes must be positive");
    }
    group_ = is_power_of_two(group_size) ? haar_matrix(group_size) : dct_matrix(group_size);
}

void GroupTransform::check(std::span<const double> data) const {
    if (data.size() != length()) {
        throw std::invalid_argument("group transform expects " + std::to_string(length()) +
                                    " values, got " + std::to_string(data.size()));
    }
}

void GroupTransform::apply(std::span<double> data, bool transpose) const {
    const std::size_t bs = static_cast<std::size_t>(bs_);
    const std::size_t gs = static_cast<std::size_t>(gs_);
    const std::size_t slice = bs * bs;
    // Basis entry for (output k, input i): forward uses M[k][i], inverse M[i][k].
    const auto basis = [transpose](const std::vector<double>& m, std::size_t n, std::size_t k,
                                   std::size_t i) { return transpose ? m[i * n + k] : m[k * n + i]; };

    // Forward rows k >= 1 of both bases sum to zero, so they can act on data
    // shifted by its first sample. Constant input then gives exact zeros.
    const auto centered = [transpose](std::size_t k) { return !transpose && k > 0; };

    std::vector<double> tmp(slice);
    const auto slices_2d = [&] {
        for (std::size_t m = 0; m < gs; ++m) {
            double* s = data.data() + m * slice;
            // rows
            for (std::size_t r = 0; r < bs; ++r) {
                const double* row = s + r * bs;
                for (std::size_t k = 0; k < bs; ++k) {
                    const double pivot = centered(k) ? row[0] : 0.0;
                    double acc = 0.0;
                    for (std::size_t i = 0; i < bs; ++i) acc += (row[i] - pivot) * basis(dct_, bs, k, i);
                    tmp[r * bs + k] = acc;
                }
            }
            // columns
            for (std::size_t k = 0; k < bs; ++k) {
                for (std::size_t c = 0; c < bs; ++c) {
                    const double pivot = centered(k) ? tmp[c] : 0.0;
                    double acc = 0.0;
                    for (std::size_t i = 0; i < bs; ++i) acc += basis(dct_, bs, k, i) * (tmp[i * bs + c] - pivot);
                    s[k * bs + c] = acc;
                }
            }
        }
    };
    const auto along_group = [&] {
        if (gs == 1) return;
        std::vector<double> col(gs);
        for (std::size_t p = 0; p < slice; ++p) {
            for (std::size_t m = 0; m < gs; ++m) col[m] = data[m * slice + p];
            for (std::size_t k = 0; k < gs; ++k) {
                const double pivot = centered(k) ? col[0] : 0.0;
                double acc = 0.0;
                for (std::size_t i = 0; i < gs; ++i) acc += basis(group_, gs, k, i) * (col[i] - pivot);
                data[k * slice + p] = acc;
            }
        }
    };

    // The two stages commute; the order only matters for rounding.
    if (transpose) {
        along_group();
        slices_2d();
    } else {
        slices_2d();
        along_group();
    }
}

void GroupTransform::forward(std::span<double> data) const {
    check(data);
    apply(data, false);
}

void GroupTransform::inverse(std::span<double> data) const {
    check(data);
    apply(data, true);
}

std::vector<double> GroupTransform::forward_copy(std::span<const double> stack) const {
    std::vector<double> out(stack.begin(), stack.end());
    forward(out);
    return out;
}

std::vector<double> GroupTransform::inverse_copy(std::span<const double> coeffs) const {
    std::vector<double> out(coeffs.begin(), coeffs.end());
    inverse(out);
    return out;
}

}  // namespace mixdenoise
