#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hexashrink {

/// Output of one rounded CDF 5/3 analysis step: ceil(n/2) approximations and
/// floor(n/2) details.
struct LiftPair
{
    std::vector<std::int64_t> approx;
    std::vector<std::int64_t> details;
    bool odd_length = true;

    std::size_t length() const { return approx.size() + details.size(); }
    bool operator==(const LiftPair&) const = default;
};

/// Integer-to-integer lifting with border-preserving virtual details:
///   d[n] = z[2n+1] - floor((z[2n] + z[2n+2]) / 2)
///   a[n] = z[2n]   + floor((d[n-1] + d[n]) / 4)
/// with d[-1] = -d[0]. Odd lengths use the virtual ceil detail -d[last];
/// even lengths store a modified last detail that pins a[last] = z[last].
/// Length 2 keeps a[0] = z[0] and stores d[0] = z[1] - z[0].
LiftPair analyze_1d(std::span<const std::int64_t> z);

/// Exact inverse of analyze_1d. Throws CorruptPair on inconsistent sizes.
std::vector<std::int64_t> synthesize_1d(const LiftPair& pair);

/// Per-coefficient forms of the analysis, reading samples through an accessor.
/// They evaluate exactly the same arithmetic as analyze_1d and are used where a
/// signal is only partially resident.
template <class Sample>
std::int64_t lift_detail_at(const Sample& z, int n, int m)
{
    if (n == 2)
        return z(1) - z(0);
    if (n % 2 == 0 && m == n / 2 - 1) {
        const std::int64_t prev = z(2 * m - 1) - ((z(2 * m - 2) + z(2 * m)) >> 1);
        return -prev + 4 * z(n - 1) - 4 * z(n - 2);
    }
    return z(2 * m + 1) - ((z(2 * m) + z(2 * m + 2)) >> 1);
}

template <class Sample>
std::int64_t lift_approx_at(const Sample& z, int n, int m)
{
    if (n == 1)
        return z(0);
    const int nd = n / 2;
    const std::int64_t left = m == 0 ? -lift_detail_at(z, n, 0) : lift_detail_at(z, n, m - 1);
    const std::int64_t right = m < nd ? lift_detail_at(z, n, m) : -lift_detail_at(z, n, nd - 1);
    return z(2 * m) + ((left + right) >> 2);
}

/// Split of a node line spanning `cells` cells into coarse nodes and details.
/// Coarse nodes sit at even fine nodes plus the last fine node. For an even
/// cell count the whole line (odd node count) is lifted; for an odd cell count
/// the first `cells` nodes are lifted and the last node passes through.
struct NodeLinePlan
{
    int cells = 1;

    explicit NodeLinePlan(int cells_) : cells(cells_) {}

    int nodes() const { return cells + 1; }
    int lifted() const { return cells % 2 == 0 ? cells + 1 : cells; }
    int coarse_nodes() const { return (cells + 1) / 2 + 1; }
    int details() const { return lifted() / 2; }
    int lifted_approx() const { return (lifted() + 1) / 2; }
    bool has_passthrough() const { return cells % 2 == 1; }
    /// Fine node carried by coarse node K.
    int fine_of_coarse(int K) const { return K < lifted_approx() ? 2 * K : cells; }
    /// Fine node carrying detail m.
    int fine_of_detail(int m) const { return 2 * m + 1; }
};

/// Node-line analysis: coarse nodes (plan.coarse_nodes()) and details (plan.details()).
void analyze_node_line(std::span<const std::int64_t> fine, std::span<std::int64_t> coarse,
                       std::span<std::int64_t> details);
void synthesize_node_line(std::span<const std::int64_t> coarse, std::span<const std::int64_t> details,
                          std::span<std::int64_t> fine);

/// Dense integer array of up to three dimensions, first axis fastest.
struct IntArray
{
    std::array<int, 3> extent{1, 1, 1};
    std::vector<std::int64_t> data;

    IntArray() = default;
    IntArray(int n0, int n1 = 1, int n2 = 1)
        : extent{n0, n1, n2}, data(std::size_t(n0) * n1 * n2, 0) {}

    std::size_t index(int x, int y, int z) const
    {
        return (std::size_t(z) * extent[1] + y) * extent[0] + x;
    }
    std::int64_t& at(int x, int y = 0, int z = 0) { return data[index(x, y, z)]; }
    std::int64_t at(int x, int y = 0, int z = 0) const { return data[index(x, y, z)]; }

    bool operator==(const IntArray&) const = default;
};

struct AxisSplit
{
    IntArray approx;
    IntArray details;
};

/// analyze_1d along every line parallel to `axis`.
AxisSplit analyze_axis(const IntArray& field, int axis);
IntArray synthesize_axis(const AxisSplit& split, int axis);

/// Node-line lifting along every line parallel to `axis`; the extent along
/// `axis` is a node count (cells + 1).
AxisSplit analyze_node_axis(const IntArray& field, int axis);
IntArray synthesize_node_axis(const AxisSplit& split, int axis);

}  // namespace hexashrink
