#pragma once

#include <cstddef>
#include <vector>

namespace varbound {

// Dense real symmetric matrix.  Entries are written through set_sym so the
// mirrored pair is always bit-identical.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int order) : n_(order), data_(std::size_t(order) * order, 0.0) {}

    static SymMatrix identity(int order) {
        SymMatrix m(order);
        for (int i = 0; i < order; ++i) m.set_sym(i, i, 1.0);
        return m;
    }

    int order() const { return n_; }

    double operator()(int i, int j) const { return data_[std::size_t(i) * n_ + j]; }

    void set_sym(int i, int j, double value) {
        data_[std::size_t(i) * n_ + j] = value;
        data_[std::size_t(j) * n_ + i] = value;
    }

    SymMatrix& add_scaled(const SymMatrix& other, double factor) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
        return *this;
    }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    int n_ = 0;
    std::vector<double> data_;
};

}  // namespace varbound
