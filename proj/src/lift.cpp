#include <hexashrink/error.hpp>
#include <hexashrink/lift.hpp>

#include <fmt/format.h>

namespace hexashrink {

LiftPair analyze_1d(std::span<const std::int64_t> z)
{
    const int n = static_cast<int>(z.size());
    LiftPair out;
    out.odd_length = n % 2 == 1;
    if (n == 0)
        return out;
    if (n == 1) {
        out.approx = {z[0]};
        return out;
    }
    if (n == 2) {
        out.approx = {z[0]};
        out.details = {z[1] - z[0]};
        return out;
    }

    const int nd = n / 2;
    const int na = (n + 1) / 2;
    out.details.resize(nd);
    out.approx.resize(na);

    auto& d = out.details;
    const int raw_count = out.odd_length ? nd : nd - 1;
    for (int m = 0; m < raw_count; ++m)
        d[m] = z[2 * m + 1] - ((z[2 * m] + z[2 * m + 2]) >> 1);
    if (!out.odd_length)
        d[nd - 1] = -d[nd - 2] + 4 * z[n - 1] - 4 * z[n - 2];

    for (int m = 0; m < na; ++m) {
        const std::int64_t left = m == 0 ? -d[0] : d[m - 1];
        const std::int64_t right = m < nd ? d[m] : -d[nd - 1];
        out.approx[m] = z[2 * m] + ((left + right) >> 2);
    }
    return out;
}

std::vector<std::int64_t> synthesize_1d(const LiftPair& pair)
{
    const auto& a = pair.approx;
    const auto& d = pair.details;
    const int n = static_cast<int>(pair.length());
    if (a.size() != std::size_t((n + 1) / 2) || d.size() != std::size_t(n / 2) || pair.odd_length != (n % 2 == 1))
        fail(ErrorKind::CorruptPair, fmt::format("{} approximations and {} details do not form a signal with the "
                                                 "declared parity",
                                                 a.size(), d.size()));

    std::vector<std::int64_t> z(n);
    if (n == 0)
        return z;
    if (n == 1) {
        z[0] = a[0];
        return z;
    }
    if (n == 2) {
        z[0] = a[0];
        z[1] = d[0] + a[0];
        return z;
    }

    const int nd = n / 2;
    const int na = (n + 1) / 2;
    for (int m = 0; m < na; ++m) {
        const std::int64_t left = m == 0 ? -d[0] : d[m - 1];
        const std::int64_t right = m < nd ? d[m] : -d[nd - 1];
        z[2 * m] = a[m] - ((left + right) >> 2);
    }
    const int raw_count = pair.odd_length ? nd : nd - 1;
    for (int m = 0; m < raw_count; ++m)
        z[2 * m + 1] = d[m] + ((z[2 * m] + z[2 * m + 2]) >> 1);
    if (!pair.odd_length) {
        const std::int64_t num = d[nd - 1] + d[nd - 2] + 4 * z[n - 2];
        if (num % 4 != 0)
            fail(ErrorKind::CorruptPair, "modified ceil detail is not consistent with its neighbours");
        z[n - 1] = num / 4;
    }
    return z;
}

void analyze_node_line(std::span<const std::int64_t> fine, std::span<std::int64_t> coarse,
                       std::span<std::int64_t> details)
{
    const NodeLinePlan plan(static_cast<int>(fine.size()) - 1);
    const LiftPair pair = analyze_1d(fine.first(plan.lifted()));
    std::copy(pair.approx.begin(), pair.approx.end(), coarse.begin());
    if (plan.has_passthrough())
        coarse[plan.coarse_nodes() - 1] = fine.back();
    std::copy(pair.details.begin(), pair.details.end(), details.begin());
}

void synthesize_node_line(std::span<const std::int64_t> coarse, std::span<const std::int64_t> details,
                          std::span<std::int64_t> fine)
{
    const NodeLinePlan plan(static_cast<int>(fine.size()) - 1);
    if (coarse.size() != std::size_t(plan.coarse_nodes()) || details.size() != std::size_t(plan.details()))
        fail(ErrorKind::CorruptPair, "node line sizes do not match the fine extent");
    LiftPair pair;
    pair.odd_length = plan.lifted() % 2 == 1;
    pair.approx.assign(coarse.begin(), coarse.begin() + plan.lifted_approx());
    pair.details.assign(details.begin(), details.end());
    const auto z = synthesize_1d(pair);
    std::copy(z.begin(), z.end(), fine.begin());
    if (plan.has_passthrough())
        fine.back() = coarse.back();
}

namespace {

// Calls fn(line_of_positions) for every line parallel to `axis`, where the
// callback addresses element t of the line through pos.
template <class Fn>
void for_each_line(const std::array<int, 3>& extent, int axis, Fn&& fn)
{
    const int u = axis == 0 ? 1 : 0;
    const int v = axis == 2 ? 1 : 2;
    std::array<int, 3> pos{};
    for (int b = 0; b < extent[v]; ++b)
        for (int a = 0; a < extent[u]; ++a) {
            pos[u] = a;
            pos[v] = b;
            fn(pos);
        }
}

std::vector<std::int64_t> read_line(const IntArray& f, std::array<int, 3> pos, int axis, int n)
{
    std::vector<std::int64_t> line(n);
    for (int t = 0; t < n; ++t) {
        pos[axis] = t;
        line[t] = f.at(pos[0], pos[1], pos[2]);
    }
    return line;
}

void write_line(IntArray& f, std::array<int, 3> pos, int axis, std::span<const std::int64_t> line)
{
    for (std::size_t t = 0; t < line.size(); ++t) {
        pos[axis] = int(t);
        f.at(pos[0], pos[1], pos[2]) = line[t];
    }
}

void check_split(const AxisSplit& split, int axis)
{
    for (int c = 0; c < 3; ++c)
        if (c != axis && split.approx.extent[c] != split.details.extent[c])
            fail(ErrorKind::CorruptPair, "approximation and detail arrays disagree off-axis");
}

}  // namespace

AxisSplit analyze_axis(const IntArray& field, int axis)
{
    const int n = field.extent[axis];
    auto ext_a = field.extent;
    auto ext_d = field.extent;
    ext_a[axis] = (n + 1) / 2;
    ext_d[axis] = n / 2;
    AxisSplit out{IntArray(ext_a[0], ext_a[1], ext_a[2]), IntArray(ext_d[0], ext_d[1], ext_d[2])};
    for_each_line(field.extent, axis, [&](const std::array<int, 3>& pos) {
        const LiftPair pair = analyze_1d(read_line(field, pos, axis, n));
        write_line(out.approx, pos, axis, pair.approx);
        write_line(out.details, pos, axis, pair.details);
    });
    return out;
}

IntArray synthesize_axis(const AxisSplit& split, int axis)
{
    check_split(split, axis);
    const int na = split.approx.extent[axis];
    const int nd = split.details.extent[axis];
    if (na != nd && na != nd + 1)
        fail(ErrorKind::CorruptPair, "approximation/detail extents are not a ceil/floor split");
    auto ext = split.approx.extent;
    ext[axis] = na + nd;
    IntArray out(ext[0], ext[1], ext[2]);
    for_each_line(ext, axis, [&](const std::array<int, 3>& pos) {
        LiftPair pair;
        pair.odd_length = (na + nd) % 2 == 1;
        pair.approx = read_line(split.approx, pos, axis, na);
        pair.details = read_line(split.details, pos, axis, nd);
        write_line(out, pos, axis, synthesize_1d(pair));
    });
    return out;
}

AxisSplit analyze_node_axis(const IntArray& field, int axis)
{
    const NodeLinePlan plan(field.extent[axis] - 1);
    auto ext_a = field.extent;
    auto ext_d = field.extent;
    ext_a[axis] = plan.coarse_nodes();
    ext_d[axis] = plan.details();
    AxisSplit out{IntArray(ext_a[0], ext_a[1], ext_a[2]), IntArray(ext_d[0], ext_d[1], ext_d[2])};
    std::vector<std::int64_t> coarse(plan.coarse_nodes());
    std::vector<std::int64_t> details(plan.details());
    for_each_line(field.extent, axis, [&](const std::array<int, 3>& pos) {
        analyze_node_line(read_line(field, pos, axis, plan.nodes()), coarse, details);
        write_line(out.approx, pos, axis, coarse);
        write_line(out.details, pos, axis, details);
    });
    return out;
}

IntArray synthesize_node_axis(const AxisSplit& split, int axis)
{
    check_split(split, axis);
    const int na = split.approx.extent[axis];
    const int nd = split.details.extent[axis];
    // coarse_nodes + details = cells + 1 for every cell count.
    const NodeLinePlan plan(na + nd - 1);
    if (plan.coarse_nodes() != na || plan.details() != nd)
        fail(ErrorKind::CorruptPair, "coarse/detail extents do not describe a node line");
    auto ext = split.approx.extent;
    ext[axis] = plan.nodes();
    IntArray out(ext[0], ext[1], ext[2]);
    std::vector<std::int64_t> fine(plan.nodes());
    for_each_line(ext, axis, [&](const std::array<int, 3>& pos) {
        synthesize_node_line(read_line(split.approx, pos, axis, na), read_line(split.details, pos, axis, nd), fine);
        write_line(out, pos, axis, fine);
    });
    return out;
}

}  // namespace hexashrink
