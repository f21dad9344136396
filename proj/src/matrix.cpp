#include "permascale/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace permascale {

void NonnegMatrix::check_entry(double v) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError("matrix entries must be finite and nonnegative");
}

NonnegMatrix::NonnegMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    check_entry(fill);
}

NonnegMatrix::NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("data length does not match rows*cols");
    for (double v : data_) check_entry(v);
}

NonnegMatrix::NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged initializer");
        for (double v : r) {
            check_entry(v);
            data_.push_back(v);
        }
    }
}

void NonnegMatrix::set(std::size_t i, std::size_t j, double v) {
    check_entry(v);
    data_[i * cols_ + j] = v;
}

double NonnegMatrix::max_entry() const {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double NonnegMatrix::min_entry() const {
    return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

NonnegMatrix NonnegMatrix::transpose() const {
    NonnegMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

NonnegMatrix NonnegMatrix::minor_at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw IndexError("minor index out of range");
    NonnegMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == j) continue;
            m.data_[rr * m.cols_ + cc] = (*this)(r, c);
            ++cc;
        }
        ++rr;
    }
    return m;
}

NonnegMatrix NonnegMatrix::parse(const std::string& text) {
    std::vector<double> data;
    std::size_t cols = 0, rows = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // strip comments and separators
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& c : line)
            if (c == ',' || c == '\t' || c == '\r') c = ' ';
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                throw ParseError("invalid matrix entry: '" + tok + "'");
            }
            if (pos != tok.size()) throw ParseError("invalid matrix entry: '" + tok + "'");
            row.push_back(v);
        }
        if (row.empty()) continue;
        if (rows == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError("inconsistent row length in matrix file");
        data.insert(data.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw ParseError("empty matrix file");
    for (double v : data)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ParseError("matrix entries must be finite and nonnegative");
    return NonnegMatrix(rows, cols, std::move(data));
}

std::string NonnegMatrix::to_text() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << (*this)(i, j);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace permascale
