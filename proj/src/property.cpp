#include <hexashrink/error.hpp>
#include <hexashrink/property.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <utility>

namespace hexashrink {

ContinuousDetailSet haar_analyze_block(std::span<const std::int64_t> block)
{
    const auto m = static_cast<std::int64_t>(block.size());
    ContinuousDetailSet out;
    for (auto v : block)
        out.approx += v;
    out.details.reserve(block.size() - 1);
    for (std::size_t n = 1; n < block.size(); ++n)
        out.details.push_back(m * block[n] - out.approx);
    return out;
}

std::vector<std::int64_t> haar_synthesize_block(const ContinuousDetailSet& set)
{
    const auto m = static_cast<std::int64_t>(set.details.size() + 1);
    std::vector<std::int64_t> block(set.details.size() + 1);
    std::int64_t rest = 0;
    for (std::size_t n = 0; n < set.details.size(); ++n) {
        const std::int64_t num = set.details[n] + set.approx;
        if (num % m != 0)
            fail(ErrorKind::CorruptDetail,
                 fmt::format("detail {} is not congruent with block sum {} modulo {}", set.details[n], set.approx, m));
        block[n + 1] = num / m;
        rest += block[n + 1];
    }
    block[0] = set.approx - rest;
    return block;
}

double haar_display_value(std::int64_t sum, std::int64_t aggregated_cells, std::int64_t scale)
{
    return double(sum) / (double(scale) * double(aggregated_cells));
}

double haar_display_value_full(std::int64_t sum, int depth, std::int64_t scale)
{
    return haar_display_value(sum, std::int64_t(1) << (3 * depth), scale);
}

bool in_universe(std::span<const std::int64_t> universe, std::int64_t v)
{
    return std::binary_search(universe.begin(), universe.end(), v);
}

namespace {

// Small class histogram: blocks hold at most 8 values and shells at most 56.
struct ClassCounts
{
    std::array<std::pair<std::int64_t, int>, 64> entries{};
    int used = 0;

    void add(std::int64_t v)
    {
        for (int e = 0; e < used; ++e) {
            if (entries[e].first == v) {
                ++entries[e].second;
                return;
            }
        }
        entries[used++] = {v, 1};
    }
    int count(std::int64_t v) const
    {
        for (int e = 0; e < used; ++e)
            if (entries[e].first == v)
                return entries[e].second;
        return 0;
    }
};

}  // namespace

std::int64_t modelet_mode(std::span<const std::int64_t> block, std::span<const std::int64_t> shell)
{
    ClassCounts counts;
    for (auto v : block)
        counts.add(v);

    int best = 0;
    for (int e = 0; e < counts.used; ++e)
        best = std::max(best, counts.entries[e].second);

    std::array<std::int64_t, 8> tied{};
    int n_tied = 0;
    for (int e = 0; e < counts.used; ++e)
        if (counts.entries[e].second == best)
            tied[n_tied++] = counts.entries[e].first;
    std::sort(tied.begin(), tied.begin() + n_tied);
    if (n_tied == 1)
        return tied[0];

    ClassCounts around;
    for (auto v : shell)
        around.add(v);
    std::int64_t choice = tied[0];
    int choice_count = around.count(tied[0]);
    for (int t = 1; t < n_tied; ++t) {
        const int c = around.count(tied[t]);
        if (c > choice_count) {
            choice = tied[t];
            choice_count = c;
        }
    }
    return choice;
}

std::int64_t modelet_detail(std::int64_t value, std::int64_t mode, std::span<const std::int64_t> universe)
{
    const std::int64_t d = value - mode;
    if (d < 0 && !in_universe(universe, 2 * mode - value))
        return -d;
    return d;
}

std::int64_t modelet_value(std::int64_t detail, std::int64_t mode, std::span<const std::int64_t> universe)
{
    const std::int64_t direct = mode + detail;
    if (in_universe(universe, direct))
        return direct;
    const std::int64_t mirrored = mode - detail;
    if (!in_universe(universe, mirrored))
        fail(ErrorKind::Unreconstructible,
             fmt::format("neither {} nor {} belongs to the class universe (mode {}, detail {})", direct, mirrored, mode,
                         detail));
    return mirrored;
}

CategoricalDetailSet modelet_analyze_block(std::span<const std::int64_t> block, std::span<const std::int64_t> universe,
                                           std::span<const std::int64_t> shell)
{
    for (auto v : block)
        if (!in_universe(universe, v))
            fail(ErrorKind::ValueOutsideUniverse, fmt::format("class {} is not in the universe", v));
    CategoricalDetailSet out;
    out.mode = modelet_mode(block, shell);
    out.details.reserve(block.size());
    for (auto v : block)
        out.details.push_back(modelet_detail(v, out.mode, universe));
    return out;
}

std::vector<std::int64_t> modelet_synthesize_block(const CategoricalDetailSet& set,
                                                   std::span<const std::int64_t> universe)
{
    if (!in_universe(universe, set.mode))
        fail(ErrorKind::Unreconstructible, fmt::format("mode {} is not in the universe", set.mode));
    std::vector<std::int64_t> block;
    block.reserve(set.details.size());
    for (auto d : set.details)
        block.push_back(modelet_value(d, set.mode, universe));
    return block;
}

std::size_t property_detail_offset(PropertyKind kind, const GridDims& fine, int K)
{
    const std::size_t fine_cells = std::size_t(fine.ni) * fine.nj * std::min(2 * K, fine.nk);
    if (kind == PropertyKind::Categorical)
        return fine_cells;
    const GridDims coarse = coarsen(fine);
    return fine_cells - std::size_t(coarse.ni) * coarse.nj * K;
}

namespace {

constexpr std::int64_t kHaarInputLimit = kWorkingRangeLimit / 8;

struct BlockBox
{
    AxisBlock i, j, k;
};

BlockBox block_box(const GridDims& fine, int I, int J, int K)
{
    return {axis_block(I, fine.ni), axis_block(J, fine.nj), axis_block(K, fine.nk)};
}

template <class Get>
void gather_block(const BlockBox& b, Get&& get, std::vector<std::int64_t>& out)
{
    out.clear();
    for (int k = b.k.lo; k < b.k.hi; ++k)
        for (int j = b.j.lo; j < b.j.hi; ++j)
            for (int i = b.i.lo; i < b.i.hi; ++i)
                out.push_back(get(i, j, k));
}

void gather_shell(const BlockBox& b, const CellWindow& w, std::vector<std::int64_t>& out)
{
    out.clear();
    const GridDims& d = w.dims;
    for (int k = std::max(b.k.lo - 1, 0); k < std::min(b.k.hi + 1, d.nk); ++k)
        for (int j = std::max(b.j.lo - 1, 0); j < std::min(b.j.hi + 1, d.nj); ++j)
            for (int i = std::max(b.i.lo - 1, 0); i < std::min(b.i.hi + 1, d.ni); ++i) {
                const bool inside = i >= b.i.lo && i < b.i.hi && j >= b.j.lo && j < b.j.hi && k >= b.k.lo &&
                                    k < b.k.hi;
                if (!inside)
                    out.push_back(w.at(i, j, k));
            }
}

}  // namespace

void analyze_property_layers(const PropertyScheme& scheme, const CellWindow& fine, int K_begin, int K_end,
                             std::span<std::int64_t> coarse, std::span<std::int64_t> details)
{
    const GridDims cd = coarsen(fine.dims);
    std::size_t at = property_detail_offset(scheme.kind, fine.dims, K_begin);
    std::vector<std::int64_t> block;
    std::vector<std::int64_t> shell;
    auto get = [&](int i, int j, int k) { return fine.at(i, j, k); };

    for (int K = K_begin; K < K_end; ++K)
        for (int J = 0; J < cd.nj; ++J)
            for (int I = 0; I < cd.ni; ++I) {
                const BlockBox box = block_box(fine.dims, I, J, K);
                gather_block(box, get, block);
                const std::size_t c = cd.cell_index(I, J, K);
                if (scheme.kind == PropertyKind::Continuous) {
                    for (auto v : block)
                        if (v > kHaarInputLimit || v < -kHaarInputLimit)
                            fail(ErrorKind::OverflowRisk,
                                 fmt::format("value {} at coarse cell ({},{},{}) would overflow the block sum", v, I,
                                             J, K));
                    const auto set = haar_analyze_block(block);
                    coarse[c] = set.approx;
                    std::copy(set.details.begin(), set.details.end(), details.begin() + at);
                    at += set.details.size();
                } else {
                    gather_shell(box, fine, shell);
                    const auto set = modelet_analyze_block(block, scheme.universe, shell);
                    coarse[c] = set.mode;
                    std::copy(set.details.begin(), set.details.end(), details.begin() + at);
                    at += set.details.size();
                }
            }
}

void synthesize_property_level(const PropertyScheme& scheme, const GridDims& fine_dims,
                               std::span<const std::int64_t> coarse, std::span<const std::int64_t> details,
                               std::span<std::int64_t> fine)
{
    const GridDims cd = coarsen(fine_dims);
    if (coarse.size() != cd.cell_count() || details.size() != property_detail_count(scheme.kind, fine_dims) ||
        fine.size() != fine_dims.cell_count())
        fail(ErrorKind::CorruptDetail, fmt::format("property level sizes do not match a {}x{}x{} grid", fine_dims.ni,
                                                   fine_dims.nj, fine_dims.nk));
    std::size_t at = 0;
    for (int K = 0; K < cd.nk; ++K)
        for (int J = 0; J < cd.nj; ++J)
            for (int I = 0; I < cd.ni; ++I) {
                const BlockBox box = block_box(fine_dims, I, J, K);
                const std::size_t m = std::size_t(box.i.size()) * box.j.size() * box.k.size();
                const std::int64_t approx = coarse[cd.cell_index(I, J, K)];
                std::vector<std::int64_t> block;
                if (scheme.kind == PropertyKind::Continuous) {
                    ContinuousDetailSet set{approx, {details.begin() + at, details.begin() + at + (m - 1)}};
                    at += m - 1;
                    block = haar_synthesize_block(set);
                } else {
                    CategoricalDetailSet set{approx, {details.begin() + at, details.begin() + at + m}};
                    at += m;
                    block = modelet_synthesize_block(set, scheme.universe);
                }
                std::size_t n = 0;
                for (int k = box.k.lo; k < box.k.hi; ++k)
                    for (int j = box.j.lo; j < box.j.hi; ++j)
                        for (int i = box.i.lo; i < box.i.hi; ++i)
                            fine[fine_dims.cell_index(i, j, k)] = block[n++];
            }
}

PropertyDecomposition transform_field(const CellPropertyField& field, const GridDims& dims, int levels)
{
    const PropertyScheme scheme{field.kind, field.universe};
    PropertyDecomposition dec;
    std::vector<std::int64_t> current = field.values;
    GridDims fine = dims;
    for (int l = 0; l < levels; ++l) {
        const GridDims cd = coarsen(fine);
        std::vector<std::int64_t> next(cd.cell_count());
        std::vector<std::int64_t> det(property_detail_count(field.kind, fine));
        analyze_property_layers(scheme, CellWindow{fine, 0, current}, 0, cd.nk, next, det);
        dec.details.push_back(std::move(det));
        current = std::move(next);
        fine = cd;
    }
    dec.coarsest = std::move(current);
    return dec;
}

std::vector<std::int64_t> inverse_transform_field(const PropertyDecomposition& dec, const CellPropertyField& meta,
                                                  const GridDims& dims, int target_depth)
{
    const int levels = static_cast<int>(dec.details.size());
    if (target_depth < 0 || target_depth > levels)
        fail(ErrorKind::LevelOutOfRange, fmt::format("depth {} outside [0, {}]", target_depth, levels));
    std::vector<GridDims> ladder{dims};
    for (int l = 0; l < levels; ++l)
        ladder.push_back(coarsen(ladder.back()));

    const PropertyScheme scheme{meta.kind, meta.universe};
    std::vector<std::int64_t> current = dec.coarsest;
    for (int l = levels - 1; l >= target_depth; --l) {
        std::vector<std::int64_t> fine(ladder[l].cell_count());
        synthesize_property_level(scheme, ladder[l], current, dec.details[l], fine);
        current = std::move(fine);
    }
    return current;
}

}  // namespace hexashrink
