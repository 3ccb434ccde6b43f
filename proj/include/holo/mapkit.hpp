#pragma once

// Holomorphic maps C^k -> C^k as immutable expression trees.
//
// Built-in families:
//   henon(b)        (z, w) -> (z^2 + b w, z)
//   harris(n)       (z, w) -> (z + n w^2, w)
//   durenrudin(d)   (z, w) -> (z, w + (z/d)^2)
//   expcoord(c, k)  z_i -> exp(c z_i) - 1
// and the combinators compose, affine (z -> inner(a + B z)), dilate
// (z -> inner(R z) / R) and scale (z -> s * inner(z)).
//
// Jacobians are computed by forward-mode differentiation with HDual, one pass
// per input coordinate; they are exact up to roundoff.

#include "holo/algebra.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace holo {

enum class DomainShape { Ball, Polydisc };

/// Open ball (Euclidean norm) or polydisc (max norm) of the given radius centred at 0.
struct DomainSpec {
    DomainShape shape = DomainShape::Ball;
    double radius = 1.0;
    std::size_t dim = 2;

    double norm(const CVector& z) const { return shape == DomainShape::Ball ? z.norm() : z.max_norm(); }
    bool contains(const CVector& z) const { return norm(z) < radius; }
    /// Distance to the boundary in the domain's own norm (negative outside).
    double margin(const CVector& z) const { return radius - norm(z); }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

std::string_view shape_name(DomainShape s);

/// Sparse multivariate polynomial in z1..zk with complex coefficients.
/// Terms are kept sorted by exponent vector with no zero coefficients.
class Polynomial {
public:
    struct Term {
        std::vector<unsigned> exponents;
        Complex coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(std::size_t nvars, Complex c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    unsigned degree() const;
    /// Highest variable index (1-based) used, 0 if constant.
    std::size_t max_variable() const;
    /// Same polynomial viewed in a different number of variables; throws if a used variable is dropped.
    Polynomial with_nvars(std::size_t nvars) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial negated() const;
    Polynomial pow(unsigned n) const;

    template <class T>
    T evaluate(const std::vector<T>& z) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();

    std::size_t nvars_;
    std::vector<Term> terms_;
};

class MapExpr;
struct MapNode;

namespace nodes {
struct Identity {
    std::size_t k;
    friend bool operator==(const Identity&, const Identity&) = default;
};
struct Linear {
    CMatrix A;
    friend bool operator==(const Linear&, const Linear&) = default;
};
struct Translation {
    CVector v;
    friend bool operator==(const Translation&, const Translation&) = default;
};
struct Henon {
    Complex b;
    friend bool operator==(const Henon&, const Henon&) = default;
};
struct Harris {
    int n;
    friend bool operator==(const Harris&, const Harris&) = default;
};
struct DurenRudin {
    double delta;
    friend bool operator==(const DurenRudin&, const DurenRudin&) = default;
};
struct ExpCoord {
    Complex c;
    std::size_t k;
    friend bool operator==(const ExpCoord&, const ExpCoord&) = default;
};
struct PolyCoord {
    std::vector<Polynomial> components;
    friend bool operator==(const PolyCoord&, const PolyCoord&) = default;
};
struct Scalar;
struct Compose;
struct Affine;
struct Dilate;
} // namespace nodes

/// Shared immutable handle to a map expression node.
class MapExpr {
public:
    explicit MapExpr(std::shared_ptr<const MapNode> node);

    std::size_t dim() const { return dim_; }
    const MapNode& node() const { return *node_; }

    friend bool operator==(const MapExpr& a, const MapExpr& b);

private:
    std::shared_ptr<const MapNode> node_;
    std::size_t dim_;
};

namespace nodes {
struct Scalar {
    Complex s;
    MapExpr inner;
};
struct Compose {
    MapExpr outer;
    MapExpr inner;
};
struct Affine {
    CVector a;
    CMatrix B;
    MapExpr inner;
};
struct Dilate {
    double R;
    MapExpr inner;
};
bool operator==(const Scalar& a, const Scalar& b);
bool operator==(const Compose& a, const Compose& b);
bool operator==(const Affine& a, const Affine& b);
bool operator==(const Dilate& a, const Dilate& b);
} // namespace nodes

struct MapNode {
    using Variant = std::variant<nodes::Identity, nodes::Linear, nodes::Translation, nodes::Henon, nodes::Harris,
                                 nodes::DurenRudin, nodes::ExpCoord, nodes::PolyCoord, nodes::Scalar,
                                 nodes::Compose, nodes::Affine, nodes::Dilate>;
    Variant v;
};

// Constructors. All validate their parameters (InvalidArgument / DimensionMismatch).
MapExpr identity(std::size_t k);
MapExpr linear(CMatrix A);
MapExpr translation(CVector v);
MapExpr henon(Complex b);
MapExpr harris(int n);
MapExpr duren_rudin(double delta);
MapExpr exp_coord(Complex c, std::size_t k = 2);
MapExpr poly_coord(std::vector<Polynomial> components);
MapExpr scale(Complex s, MapExpr inner);
MapExpr compose(MapExpr outer, MapExpr inner);
/// z -> inner(a + B z)
MapExpr affine(CVector a, CMatrix B, MapExpr inner);

/// z -> m(a + B z), structurally. A linear m is folded into linear(A B) after a translation by A a.
MapExpr reparametrize(const MapExpr& m, const CVector& a, const CMatrix& B);
/// z -> m(R z) / R. Throws InvalidArgument unless R > 0.
MapExpr dilate(const MapExpr& m, double R);

/// Value and Jacobian at a point.
struct Jet {
    CVector value;
    CMatrix jacobian;
};

CVector eval(const MapExpr& m, const CVector& z);
Jet jacobian(const MapExpr& m, const CVector& z);

/// Canonical text form; parse(print(m)) == m.
std::string print(const MapExpr& m);
MapExpr parse(std::string_view text);

/// Complex literal helpers shared by the map grammar and config files ("0.5", "-2i", "0.1+0.3i").
std::string format_complex(Complex z);
std::string format_real(double x);
Complex parse_complex(std::string_view text);

struct BuiltinInfo {
    std::string_view name;
    std::string_view signature;
    std::string_view description;
};
const std::vector<BuiltinInfo>& builtins();

} // namespace holo
