#include "hfa/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hfa {

TGrid::TGrid(double delta, int k_max) : delta_(delta), k_max_(k_max) {
    if (!std::isfinite(delta) || delta <= 0.0) throw std::invalid_argument("TGrid: delta must be positive");
    if (k_max < 1) throw std::invalid_argument("TGrid: k_max must be >= 1");
}

std::vector<double> TGrid::nodes() const {
    std::vector<double> t(size());
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = node(s);
    return t;
}

OperatorField::OperatorField(TGrid tgrid, std::vector<LinOp> mats)
    : tgrid_(tgrid), dim_(0), mats_(std::move(mats)) {
    if (mats_.size() != tgrid_.size())
        throw std::invalid_argument("OperatorField: one matrix per node required");
    dim_ = static_cast<std::size_t>(mats_.front().rows());
    for (const auto& m : mats_) {
        if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_)
            throw std::invalid_argument("OperatorField: matrices must share one square dimension");
        if (!m.allFinite()) throw std::invalid_argument("OperatorField: non-finite entries");
    }
}

OperatorField OperatorField::zeros(const TGrid& tgrid, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return OperatorField(tgrid, std::vector<LinOp>(tgrid.size(), LinOp::Zero(d, d)));
}

LinOp OperatorField::at_k(int k) const {
    if (!tgrid_.has(k)) {
        const auto d = static_cast<Eigen::Index>(dim_);
        return LinOp::Zero(d, d);
    }
    return mats_[tgrid_.slot_of(k)];
}

OperatorField OperatorField::scaled(Complex c) const {
    std::vector<LinOp> m = mats_;
    for (auto& a : m) a *= c;
    return OperatorField(tgrid_, std::move(m));
}

namespace {

void require_same(const OperatorField& a, const OperatorField& b) {
    if (!(a.tgrid() == b.tgrid()) || a.dim() != b.dim())
        throw std::invalid_argument("OperatorField: mismatched lattice or dimension");
}

}  // namespace

OperatorField operator+(const OperatorField& a, const OperatorField& b) {
    require_same(a, b);
    std::vector<LinOp> m(a.size());
    for (std::size_t s = 0; s < m.size(); ++s) m[s] = a[s] + b[s];
    return OperatorField(a.tgrid(), std::move(m));
}

OperatorField operator-(const OperatorField& a, const OperatorField& b) {
    require_same(a, b);
    std::vector<LinOp> m(a.size());
    for (std::size_t s = 0; s < m.size(); ++s) m[s] = a[s] - b[s];
    return OperatorField(a.tgrid(), std::move(m));
}

// ---------------------------------------------------------------------------

namespace {

static_assert(sizeof(double) == 8);

void put_le(std::ostream& os, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
    os.write(buf, 8);
}

double get_le(std::istream& is) {
    char buf[8];
    if (!is.read(buf, 8)) throw std::runtime_error("read_field: truncated matrix file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

std::filesystem::path node_file(const std::filesystem::path& dir, int k) {
    return dir / ("k_" + std::to_string(k) + ".bin");
}

}  // namespace

void write_field(const std::filesystem::path& dir, const OperatorField& f) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream meta(dir / "meta.txt");
        if (!meta) throw std::runtime_error("write_field: cannot write " + (dir / "meta.txt").string());
        meta << std::hexfloat << "delta " << f.tgrid().delta() << '\n'
             << std::dec << "k_max " << f.tgrid().k_max() << '\n'
             << "dim " << f.dim() << '\n';
    }
    for (std::size_t s = 0; s < f.size(); ++s) {
        const auto path = node_file(dir, f.tgrid().k_at(s));
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("write_field: cannot write " + path.string());
        const LinOp& m = f[s];
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                put_le(os, m(i, j).real());
                put_le(os, m(i, j).imag());
            }
    }
}

OperatorField read_field(const std::filesystem::path& dir) {
    std::ifstream meta(dir / "meta.txt");
    if (!meta) throw std::runtime_error("read_field: missing " + (dir / "meta.txt").string());
    double delta = 0.0;
    int k_max = 0;
    std::size_t dim = 0;
    std::string key, value;
    while (meta >> key >> value) {
        if (key == "delta") delta = std::strtod(value.c_str(), nullptr);  // accepts hex floats
        else if (key == "k_max") k_max = std::stoi(value);
        else if (key == "dim") dim = std::stoul(value);
        else throw std::runtime_error("read_field: unknown key '" + key + "'");
    }
    if (dim == 0) throw std::runtime_error("read_field: missing dim");
    TGrid tgrid(delta, k_max);
    std::vector<LinOp> mats(tgrid.size());
    const auto d = static_cast<Eigen::Index>(dim);
    for (std::size_t s = 0; s < mats.size(); ++s) {
        const auto path = node_file(dir, tgrid.k_at(s));
        std::ifstream is(path, std::ios::binary);
        if (!is) throw std::runtime_error("read_field: missing " + path.string());
        LinOp m(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                const double re = get_le(is);
                const double im = get_le(is);
                m(i, j) = {re, im};
            }
        if (is.peek() != std::char_traits<char>::eof())
            throw std::runtime_error("read_field: trailing bytes in " + path.string());
        mats[s] = std::move(m);
    }
    return OperatorField(tgrid, std::move(mats));
}

}  // namespace hfa
