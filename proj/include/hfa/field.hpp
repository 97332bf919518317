#pragma once

// Frequency lattice over R* and operator fields living on it.

#include <cstddef>
#include <filesystem>
#include <vector>

#include "hfa/grid.hpp"

namespace hfa {

/// Nodes t = k * delta for k = -K..K, k != 0. Storage order is increasing t:
/// slot 0 holds k = -K, slot 2K-1 holds k = K.
class TGrid {
public:
    TGrid(double delta, int k_max);

    double delta() const { return delta_; }
    int k_max() const { return k_max_; }
    std::size_t size() const { return 2 * static_cast<std::size_t>(k_max_); }

    /// Lattice index k of storage slot `slot`.
    int k_at(std::size_t slot) const {
        const int s = static_cast<int>(slot);
        return s < k_max_ ? s - k_max_ : s - k_max_ + 1;
    }
    double node(std::size_t slot) const { return k_at(slot) * delta_; }
    std::vector<double> nodes() const;

    /// True iff k is a stored node (nonzero and |k| <= K).
    bool has(int k) const { return k != 0 && k >= -k_max_ && k <= k_max_; }
    /// Storage slot of lattice index k; requires has(k).
    std::size_t slot_of(int k) const {
        return static_cast<std::size_t>(k < 0 ? k + k_max_ : k + k_max_ - 1);
    }

    bool operator==(const TGrid&) const = default;

private:
    double delta_;
    int k_max_;
};

/// One dim x dim matrix per lattice node; the Plancherel weight |t| is already
/// folded in for fields produced by forward_field.
class OperatorField {
public:
    OperatorField(TGrid tgrid, std::vector<LinOp> mats);

    static OperatorField zeros(const TGrid& tgrid, std::size_t dim);

    const TGrid& tgrid() const { return tgrid_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return mats_.size(); }

    const LinOp& operator[](std::size_t slot) const { return mats_[slot]; }
    LinOp& operator[](std::size_t slot) { return mats_[slot]; }
    /// Value at lattice index k; zero for k = 0 or outside the lattice.
    LinOp at_k(int k) const;
    const std::vector<LinOp>& mats() const { return mats_; }

    OperatorField scaled(Complex c) const;
    friend OperatorField operator+(const OperatorField& a, const OperatorField& b);
    friend OperatorField operator-(const OperatorField& a, const OperatorField& b);

private:
    TGrid tgrid_;
    std::size_t dim_;
    std::vector<LinOp> mats_;
};

/// Directory layout: meta.txt ("delta", "k_max", "dim" lines, delta printed
/// as a hex float) and k_<k>.bin per node holding dim*dim little-endian
/// (re, im) double pairs, row-major.
void write_field(const std::filesystem::path& dir, const OperatorField& f);
OperatorField read_field(const std::filesystem::path& dir);

}  // namespace hfa
