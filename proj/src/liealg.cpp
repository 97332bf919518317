#include "hfa/liealg.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hfa/errors.hpp"

namespace hfa::lie {

LieAlgebra::LieAlgebra(std::size_t dim, const std::vector<StructureEntry>& entries)
    : dim_(dim), c_(dim * dim * dim) {
    if (dim == 0) throw std::invalid_argument("LieAlgebra: dimension must be positive");
    std::vector<bool> given(c_.size(), false);
    for (const auto& e : entries) {
        if (e.i >= dim || e.j >= dim || e.k >= dim)
            throw std::invalid_argument("LieAlgebra: index out of range");
        if (e.value == 0) continue;
        if (e.i == e.j) throw std::invalid_argument("LieAlgebra: [e_i, e_i] must vanish");
        const std::size_t fwd = (e.i * dim + e.j) * dim + e.k, rev = (e.j * dim + e.i) * dim + e.k;
        if ((given[fwd] && c_[fwd] != e.value) || (given[rev] && c_[rev] != -e.value))
            throw std::invalid_argument("LieAlgebra: entries are not antisymmetric");
        c_[fwd] = e.value;
        c_[rev] = -e.value;
        given[fwd] = given[rev] = true;
    }

    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            for (std::size_t l = j + 1; l < dim; ++l) {
                // [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]]
                for (std::size_t k = 0; k < dim; ++k) {
                    Rational s = 0;
                    for (std::size_t m = 0; m < dim; ++m)
                        s += c(j, l, m) * c(i, m, k) + c(l, i, m) * c(j, m, k) + c(i, j, m) * c(l, m, k);
                    if (s != 0) {
                        std::ostringstream msg;
                        msg << "LieAlgebra: Jacobi identity fails for (" << i + 1 << ", " << j + 1 << ", " << l + 1
                            << ")";
                        throw std::invalid_argument(msg.str());
                    }
                }
            }
}

RVector LieAlgebra::basis_vector(std::size_t i) const {
    RVector v(dim_);
    v.at(i) = 1;
    return v;
}

LieAlgebra parse_structure(std::istream& is) {
    std::string line;
    std::optional<std::size_t> dim;
    std::vector<StructureEntry> entries;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("structure file line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!dim) {
            std::size_t pos = 0;
            long n = 0;
            try {
                n = std::stol(first, &pos);
            } catch (const std::exception&) {
                fail("expected the dimension");
            }
            if (pos != first.size() || n <= 0) fail("expected a positive dimension");
            std::string extra;
            if (ls >> extra) fail("trailing text after the dimension");
            dim = static_cast<std::size_t>(n);
            continue;
        }
        long idx[3];
        std::string value;
        std::istringstream es(line);
        if (!(es >> idx[0] >> idx[1] >> idx[2] >> value)) fail("expected 'i j k p/q'");
        std::string extra;
        if (es >> extra) fail("trailing text");
        for (long x : idx)
            if (x < 1 || static_cast<std::size_t>(x) > *dim) fail("index out of range");
        Rational r;
        try {
            r = Rational(value);
        } catch (const std::exception&) {
            fail("bad rational '" + value + "'");
        }
        entries.push_back({static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1] - 1),
                           static_cast<std::size_t>(idx[2] - 1), r});
    }
    if (!dim) throw std::invalid_argument("structure file: missing dimension");
    return LieAlgebra(*dim, entries);
}

LieAlgebra load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open structure file " + path);
    return parse_structure(in);
}

RVector bracket(const LieAlgebra& L, const RVector& u, const RVector& v) {
    const auto n = L.dim();
    if (u.size() != n || v.size() != n) throw std::invalid_argument("bracket: dimension mismatch");
    RVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            const Rational uv = u[i] * v[j];
            for (std::size_t k = 0; k < n; ++k)
                if (L.c(i, j, k) != 0) out[k] += uv * L.c(i, j, k);
        }
    }
    return out;
}

bool is_zero(const RVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<RVector>& vectors) {
    std::vector<RVector> rows;
    for (const auto& v : vectors) {
        if (v.size() != ambient) throw std::invalid_argument("Subspace::span: dimension mismatch");
        rows.push_back(v);
    }
    // Gauss-Jordan to reduced row-echelon form.
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ambient && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const Rational p = rows[rank][col];
        for (auto& x : rows[rank]) x /= p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational f = rows[r][col];
            for (std::size_t c = col; c < ambient; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    rows.resize(rank);
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = std::move(rows);
    return s;
}

bool Subspace::contains(const RVector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
    RVector r = v;
    for (const auto& b : basis_) {
        std::size_t piv = 0;
        while (b[piv] == 0) ++piv;
        if (r[piv] == 0) continue;
        const Rational f = r[piv];
        for (std::size_t c = piv; c < ambient_; ++c) r[c] -= f * b[c];
    }
    return is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

SubspaceFlag lower_central_series(const LieAlgebra& L) {
    const auto n = L.dim();
    std::vector<RVector> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(L.basis_vector(i));
    SubspaceFlag flag;
    flag.terms.push_back(Subspace::span(n, all));
    while (flag.terms.back().dim() > 0) {
        std::vector<RVector> next;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& b : flag.terms.back().basis()) next.push_back(bracket(L, L.basis_vector(i), b));
        auto c = Subspace::span(n, next);
        if (c == flag.terms.back()) break;  // stabilized at a nonzero term
        flag.terms.push_back(std::move(c));
    }
    return flag;
}

Nilpotency is_nilpotent(const LieAlgebra& L) {
    const auto flag = lower_central_series(L);
    if (!flag.reaches_zero()) return {};
    return {true, static_cast<int>(flag.terms.size()) - 1};
}

bool satisfies_h3(const LieAlgebra& L, const H3Embedding& e) {
    return !is_zero(e.z) && bracket(L, e.x, e.y) == e.z && is_zero(bracket(L, e.x, e.z)) &&
           is_zero(bracket(L, e.y, e.z));
}

H3Embedding find_h3(const LieAlgebra& L) {
    const auto flag = lower_central_series(L);
    if (!flag.reaches_zero()) throw PreconditionError("find_h3: algebra is not nilpotent");
    const auto degree = flag.terms.size() - 1;
    if (degree < 2) throw NotApplicableError("find_h3: algebra is abelian");
    const auto& upper = flag.terms[degree - 2];  // C_{n-1}
    const auto& lower = flag.terms[degree - 1];  // C_n, central since C_{n+1} = 0

    for (const auto& x : upper.basis()) {
        if (lower.contains(x)) continue;
        for (std::size_t i = 0; i < L.dim(); ++i) {
            H3Embedding e{x, L.basis_vector(i), {}};
            e.z = bracket(L, e.x, e.y);
            if (is_zero(e.z)) continue;
            if (!lower.contains(e.z)) throw std::logic_error("find_h3: [x, y] escaped C_n");
            for (std::size_t k = 0; k < L.dim(); ++k)
                if (!is_zero(bracket(L, L.basis_vector(k), e.z)))
                    throw std::logic_error("find_h3: [x, y] is not central");
            if (!satisfies_h3(L, e)) throw std::logic_error("find_h3: h3 relations fail");
            return e;
        }
    }
    // C_{n-1} central would force C_n = 0.
    throw std::logic_error("find_h3: no candidate pair in C_{n-1}");
}

std::string to_string(const RVector& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

}  // namespace hfa::lie
