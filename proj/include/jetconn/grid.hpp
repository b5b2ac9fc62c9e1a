#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "jetconn/expr.hpp"

namespace jetconn {

/// Dense row-major grid of expressions with a runtime shape. All entries
/// start as the constant-zero expression.
class ExprGrid {
public:
    ExprGrid() = default;
    explicit ExprGrid(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
        std::size_t total = 1;
        for (std::size_t s : shape_) total *= s;
        data_.assign(total, Expr());
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }

    Expr& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
    const Expr& at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }
    Expr& at(std::initializer_list<std::size_t> idx) {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    const Expr& at(std::initializer_list<std::size_t> idx) const {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    template <class... I>
    Expr& operator()(I... idx) {
        const std::size_t tuple[] = {static_cast<std::size_t>(idx)...};
        return data_[offset(tuple)];
    }
    template <class... I>
    const Expr& operator()(I... idx) const {
        const std::size_t tuple[] = {static_cast<std::size_t>(idx)...};
        return data_[offset(tuple)];
    }

    std::span<const Expr> flat() const { return data_; }
    std::span<Expr> flat() { return data_; }

private:
    std::size_t offset(std::span<const std::size_t> idx) const {
        if (idx.size() != shape_.size()) throw std::out_of_range("grid index rank mismatch");
        std::size_t off = 0;
        for (std::size_t k = 0; k < shape_.size(); ++k) {
            if (idx[k] >= shape_[k]) throw std::out_of_range("grid index out of range");
            off = off * shape_[k] + idx[k];
        }
        return off;
    }

    std::vector<std::size_t> shape_;
    std::vector<Expr> data_;
};

/// Invokes fn for every index tuple of the given shape, in row-major order.
template <class Fn>
void for_each_index(std::span<const std::size_t> shape, Fn&& fn) {
    for (std::size_t s : shape)
        if (s == 0) return;
    std::vector<std::size_t> idx(shape.size(), 0);
    for (;;) {
        fn(std::span<const std::size_t>(idx));
        std::size_t k = shape.size();
        while (k > 0) {
            --k;
            if (++idx[k] < shape[k]) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (shape.empty()) return;
    }
}

}  // namespace jetconn
