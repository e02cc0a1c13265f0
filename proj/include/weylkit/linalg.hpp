#pragma once

#include <stdexcept>
#include <vector>

#include "weylkit/scalar.hpp"

namespace weylkit {

// Exact dense linear algebra over a field scalar (Rat or CycElem).

template <typename S>
struct LinearSolution {
    bool consistent = false;
    std::vector<S> particular;            // one solution when consistent
    std::vector<std::vector<S>> kernel;   // basis of the homogeneous space
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
};

// Solve A y = b by fraction-free-ish Gauss-Jordan (exact field arithmetic).
// Free variables are set to zero in the particular solution.
template <typename S>
LinearSolution<S> solve_linear(std::vector<std::vector<S>> a, std::vector<S> b, const S& sample)
{
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : (b.empty() ? 0 : throw std::invalid_argument("solve_linear: shape"));
    for (const auto& row : a)
        if (row.size() != cols)
            throw std::invalid_argument("solve_linear: ragged matrix");
    if (b.size() != rows)
        throw std::invalid_argument("solve_linear: rhs length");

    const S zero = scalar_zero(sample);
    const S one = scalar_one(sample);

    LinearSolution<S> out;
    size_t r = 0;
    std::vector<long> pivot_of_col(cols, -1);
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && scalar_is_zero(a[p][c]))
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        S inv = scalar_inverse(a[r][c]);
        for (size_t j = c; j < cols; ++j)
            a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || scalar_is_zero(a[i][c]))
                continue;
            S f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_of_col[c] = static_cast<long>(r);
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    for (size_t i = r; i < rows; ++i)
        if (!scalar_is_zero(b[i]))
            return out; // inconsistent
    out.consistent = true;

    out.particular.assign(cols, zero);
    for (size_t idx = 0; idx < out.pivot_cols.size(); ++idx)
        out.particular[out.pivot_cols[idx]] = b[idx];

    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0)
            continue;
        std::vector<S> v(cols, zero);
        v[c] = one;
        for (size_t idx = 0; idx < out.pivot_cols.size(); ++idx) {
            size_t pc = out.pivot_cols[idx];
            v[pc] = zero - a[static_cast<size_t>(pivot_of_col[pc])][c];
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

template <typename S>
std::vector<std::vector<S>> kernel_basis(const std::vector<std::vector<S>>& a, const S& sample)
{
    if (a.empty())
        return {};
    std::vector<S> b(a.size(), scalar_zero(sample));
    return solve_linear(a, b, sample).kernel;
}

} // namespace weylkit
