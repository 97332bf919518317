#pragma once

// Exact structure-constant Lie algebras: lower central series, nilpotency, and
// an embedded copy of h3.

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hfa::lie {

using Rational = boost::multiprecision::cpp_rational;
using RVector = std::vector<Rational>;

struct StructureEntry {
    std::size_t i, j, k;  // 0-based: [e_i, e_j] has coefficient value on e_k
    Rational value;
};

class LieAlgebra {
public:
    /// Completes the table antisymmetrically and verifies the Jacobi identity
    /// exactly. Throws std::invalid_argument on conflicting entries, [e_i, e_i] != 0,
    /// out-of-range indices or a Jacobi failure.
    LieAlgebra(std::size_t dim, const std::vector<StructureEntry>& entries);

    std::size_t dim() const { return dim_; }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    RVector basis_vector(std::size_t i) const;

private:
    Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }

    std::size_t dim_;
    std::vector<Rational> c_;
};

/// Structure-constant file: first non-comment line n, then lines "i j k p/q"
/// (1-based) for the nonzero c[i][j][k]. '#' starts a comment.
LieAlgebra parse_structure(std::istream& is);
LieAlgebra load_structure(const std::string& path);

RVector bracket(const LieAlgebra& L, const RVector& u, const RVector& v);
bool is_zero(const RVector& v);

/// A subspace held as a reduced row-echelon basis, so equal subspaces compare equal.
class Subspace {
public:
    static Subspace span(std::size_t ambient, const std::vector<RVector>& vectors);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RVector>& basis() const { return basis_; }
    bool contains(const RVector& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace&) const = default;

private:
    std::size_t ambient_ = 0;
    std::vector<RVector> basis_;
};

/// C_1 = g, C_{j+1} = [g, C_j], up to the first zero term or repetition.
struct SubspaceFlag {
    std::vector<Subspace> terms;  // terms[j] is C_{j+1}
    bool reaches_zero() const { return !terms.empty() && terms.back().dim() == 0; }
};

SubspaceFlag lower_central_series(const LieAlgebra& L);

struct Nilpotency {
    bool nilpotent = false;
    std::optional<int> degree;  // least d with C_{d+1} = 0
};

Nilpotency is_nilpotent(const LieAlgebra& L);

struct H3Embedding {
    RVector x, y, z;
};

/// [x,y] = z != 0, [x,z] = [y,z] = 0, exactly.
bool satisfies_h3(const LieAlgebra& L, const H3Embedding& e);

/// For degree n: x is the first echelon basis vector of C_{n-1} outside C_n that
/// has a standard basis partner y with [x, y] != 0; y is the first such partner.
/// Throws NotApplicableError for abelian input and PreconditionError when L is
/// not nilpotent.
H3Embedding find_h3(const LieAlgebra& L);

std::string to_string(const RVector& v);

}  // namespace hfa::lie
