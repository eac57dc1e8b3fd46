#pragma once

#include "sef/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace sef::testsupport {

struct LabeledData {
    Matrix X;
    Labels labels;
};

// Gaussian blobs with optional nuisance dimensions whose variance drowns
// the class signal under a plain Euclidean metric. Class centers come from
// center_seed so train/test splits can share geometry while resampling.
inline LabeledData gaussian_blobs(int n_per_class, int n_classes, int dims,
                                  double noise, std::uint64_t seed,
                                  int nuisance_dims = 0, double nuisance_scale = 0.0,
                                  std::uint64_t center_seed = 0) {
    if (center_seed == 0) center_seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int total_dims = dims + nuisance_dims;
    LabeledData data;
    data.X.resize(n_per_class * n_classes, total_dims);
    Matrix centers(n_classes, dims);
    {
        std::mt19937_64 center_rng(center_seed);
        std::normal_distribution<double> center_normal(0.0, 1.0);
        for (int c = 0; c < n_classes; ++c) {
            for (int j = 0; j < dims; ++j) centers(c, j) = 3.0 * center_normal(center_rng);
        }
    }
    int row = 0;
    for (int c = 0; c < n_classes; ++c) {
        for (int i = 0; i < n_per_class; ++i, ++row) {
            for (int j = 0; j < dims; ++j) {
                data.X(row, j) = centers(c, j) + noise * normal(rng);
            }
            for (int j = dims; j < total_dims; ++j) {
                data.X(row, j) = nuisance_scale * normal(rng);
            }
            data.labels.push_back(c);
        }
    }
    return data;
}

// A noisy spiral ribbon slice, the usual manifold test bed. The parameter
// range is kept short enough that a few hundred points sample it densely.
inline Matrix swiss_roll(int n, std::uint64_t seed, double noise = 0.02) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, noise);
    Matrix X(n, 3);
    for (int i = 0; i < n; ++i) {
        const double t = 3.14159265358979 * (1.0 + 1.5 * unit(rng));
        X(i, 0) = t * std::cos(t) + gauss(rng);
        X(i, 1) = 2.0 * unit(rng);
        X(i, 2) = t * std::sin(t) + gauss(rng);
    }
    return X;
}

// Synthetic 8x8 digit-style glyphs: ten fixed binary prototypes rendered
// with per-sample shifts, intensity jitter, pixel dropout and additive
// noise. Class identity is spread over many pixels, so a low-dimensional
// variance-maximizing projection loses part of it.
class GlyphSampler {
public:
    explicit GlyphSampler(std::uint64_t seed) : rng_(seed) {}

    LabeledData sample(int n) {
        LabeledData data;
        data.X.resize(n, 64);
        std::uniform_int_distribution<int> pick_class(0, 9);
        std::uniform_int_distribution<int> pick_shift(-1, 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int s = 0; s < n; ++s) {
            const int cls = pick_class(rng_);
            const int dx = pick_shift(rng_);
            const int dy = pick_shift(rng_);
            const double intensity = 0.7 + 0.6 * unit(rng_);
            for (int r = 0; r < 8; ++r) {
                for (int c = 0; c < 8; ++c) {
                    const int src_r = r - dy;
                    const int src_c = c - dx;
                    double v = 0.0;
                    if (src_r >= 0 && src_r < 8 && src_c >= 0 && src_c < 8) {
                        v = prototypes()[cls][src_r][src_c] ? intensity : 0.0;
                    }
                    if (v > 0.0 && unit(rng_) < 0.08) v = 0.0; // dropout
                    v += 0.25 * gauss(rng_);
                    data.X(s, r * 8 + c) = v;
                }
            }
            data.labels.push_back(cls);
        }
        return data;
    }

private:
    using Glyph = std::array<std::array<int, 8>, 8>;

    static const std::array<Glyph, 10>& prototypes();

    std::mt19937_64 rng_;
};

inline const std::array<GlyphSampler::Glyph, 10>& GlyphSampler::prototypes() {
    auto parse = [](const char* rows[8]) {
        Glyph g{};
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) g[r][c] = rows[r][c] == '#' ? 1 : 0;
        }
        return g;
    };
    static const std::array<Glyph, 10> glyphs = [&] {
        const char* zero[8] = {"..####..", ".#....#.", "#......#", "#......#",
                               "#......#", "#......#", ".#....#.", "..####.."};
        const char* one[8] = {"...#....", "..##....", ".#.#....", "...#....",
                              "...#....", "...#....", "...#....", ".#####.."};
        const char* two[8] = {".#####..", "#.....#.", "......#.", ".....#..",
                              "...##...", "..#.....", ".#......", "#######."};
        const char* three[8] = {".#####..", "......#.", "......#.", "..####..",
                                "......#.", "......#.", "......#.", ".#####.."};
        const char* four[8] = {"....##..", "...#.#..", "..#..#..", ".#...#..",
                               "#....#..", "#######.", ".....#..", ".....#.."};
        const char* five[8] = {"######..", "#.......", "#.......", "#####...",
                               ".....#..", "......#.", ".....#..", "#####..."};
        const char* six[8] = {"..####..", ".#......", "#.......", "#####...",
                              "#....#..", "#....#..", ".#...#..", "..###..."};
        const char* seven[8] = {"#######.", "......#.", ".....#..", "....#...",
                                "...#....", "..#.....", "..#.....", "..#....."};
        const char* eight[8] = {"..####..", ".#....#.", ".#....#.", "..####..",
                                ".#....#.", "#......#", "#......#", ".######."};
        const char* nine[8] = {"..####..", ".#....#.", ".#....#.", "..#####.",
                               "......#.", "......#.", ".....#..", "..###..."};
        return std::array<Glyph, 10>{parse(zero),  parse(one),  parse(two), parse(three),
                                     parse(four),  parse(five), parse(six), parse(seven),
                                     parse(eight), parse(nine)};
    }();
    return glyphs;
}

} // namespace sef::testsupport
