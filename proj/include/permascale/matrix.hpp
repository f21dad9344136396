#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permascale/errors.hpp"

namespace permascale {

/// Dense row-major matrix of nonnegative reals. Every entry is checked to be
/// finite and >= 0 on construction and assignment through set().
class NonnegMatrix {
  public:
    NonnegMatrix() = default;
    NonnegMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, double v);

    const std::vector<double>& data() const { return data_; }

    double max_entry() const;
    double min_entry() const;

    NonnegMatrix transpose() const;
    /// Minor with row i and column j deleted.
    NonnegMatrix minor_at(std::size_t i, std::size_t j) const;

    bool operator==(const NonnegMatrix&) const = default;

    /// Shared repo-wide text format: one row per line, entries separated by
    /// commas or whitespace, '#' lines ignored.
    static NonnegMatrix parse(const std::string& text);
    std::string to_text() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;

    static void check_entry(double v);
};

} // namespace permascale
