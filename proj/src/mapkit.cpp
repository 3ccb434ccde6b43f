#include "holo/mapkit.hpp"

#include "holo/dual.hpp"
#include "holo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace holo {

std::string_view shape_name(DomainShape s) { return s == DomainShape::Ball ? "ball" : "polydisc"; }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t nvars, Complex c) {
    Polynomial p(nvars);
    p.terms_.push_back({std::vector<unsigned>(nvars, 0u), c});
    p.normalize();
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw InvalidArgument("polynomial variable index out of range");
    Polynomial p(nvars);
    std::vector<unsigned> e(nvars, 0u);
    e[index] = 1;
    p.terms_.push_back({std::move(e), 1.0});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    Polynomial p(nvars);
    for (auto& t : terms)
        if (t.exponents.size() != nvars) throw DimensionMismatch(nvars, t.exponents.size(), "polynomial term");
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exponents == t.exponents) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == Complex(0.0); });
    terms_ = std::move(merged);
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (unsigned e : t.exponents) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::size_t Polynomial::max_variable() const {
    std::size_t m = 0;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < t.exponents.size(); ++i)
            if (t.exponents[i] != 0) m = std::max(m, i + 1);
    return m;
}

Polynomial Polynomial::with_nvars(std::size_t nvars) const {
    if (max_variable() > nvars) {
        throw InvalidArgument("polynomial uses z" + std::to_string(max_variable()) + " but the map has only " +
                              std::to_string(nvars) + " variables");
    }
    Polynomial p(nvars);
    for (const auto& t : terms_) {
        std::vector<unsigned> e(nvars, 0u);
        std::copy_n(t.exponents.begin(), std::min(nvars, t.exponents.size()), e.begin());
        p.terms_.push_back({std::move(e), t.coeff});
    }
    p.normalize();
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw DimensionMismatch(nvars_, o.nvars_, "polynomial sum");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += o.negated(); }

Polynomial Polynomial::negated() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw DimensionMismatch(a.nvars_, b.nvars_, "polynomial product");
    Polynomial p(a.nvars_);
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            std::vector<unsigned> e(a.nvars_);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exponents[i] + t.exponents[i];
            p.terms_.push_back({std::move(e), s.coeff * t.coeff});
        }
    p.normalize();
    return p;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(nvars_, 1.0);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

template <class T>
T Polynomial::evaluate(const std::vector<T>& z) const {
    if (z.size() != nvars_) throw DimensionMismatch(nvars_, z.size(), "polynomial evaluation");
    T sum(0.0);
    for (const auto& t : terms_) {
        T prod(t.coeff);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exponents[i]) prod *= ipow(z[i], t.exponents[i]);
        sum += prod;
    }
    return sum;
}

template Complex Polynomial::evaluate<Complex>(const std::vector<Complex>&) const;
template HDual Polynomial::evaluate<HDual>(const std::vector<HDual>&) const;

// ---------------------------------------------------------------------------
// MapExpr

namespace {

std::size_t node_dim(const MapNode& n) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using N = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<N, nodes::Identity>) return x.k;
            else if constexpr (std::is_same_v<N, nodes::Linear>) return x.A.size();
            else if constexpr (std::is_same_v<N, nodes::Translation>) return x.v.size();
            else if constexpr (std::is_same_v<N, nodes::Henon> || std::is_same_v<N, nodes::Harris> ||
                               std::is_same_v<N, nodes::DurenRudin>) return 2;
            else if constexpr (std::is_same_v<N, nodes::ExpCoord>) return x.k;
            else if constexpr (std::is_same_v<N, nodes::PolyCoord>) return x.components.size();
            else return x.inner.dim();
        },
        n.v);
}

MapExpr make(MapNode::Variant v) { return MapExpr(std::make_shared<const MapNode>(MapNode{std::move(v)})); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

MapExpr::MapExpr(std::shared_ptr<const MapNode> node) : node_(std::move(node)), dim_(node_dim(*node_)) {}

bool operator==(const MapExpr& a, const MapExpr& b) { return a.node_ == b.node_ || a.node_->v == b.node_->v; }

namespace nodes {
bool operator==(const Scalar& a, const Scalar& b) { return a.s == b.s && a.inner == b.inner; }
bool operator==(const Compose& a, const Compose& b) { return a.outer == b.outer && a.inner == b.inner; }
bool operator==(const Affine& a, const Affine& b) { return a.a == b.a && a.B == b.B && a.inner == b.inner; }
bool operator==(const Dilate& a, const Dilate& b) { return a.R == b.R && a.inner == b.inner; }
} // namespace nodes

MapExpr identity(std::size_t k) {
    if (k == 0) throw InvalidArgument("identity: dimension must be >= 1");
    return make(nodes::Identity{k});
}

MapExpr linear(CMatrix A) {
    if (A.size() == 0) throw InvalidArgument("linear: empty matrix");
    if (!A.all_finite()) throw InvalidArgument("linear: non-finite entry");
    return make(nodes::Linear{std::move(A)});
}

MapExpr translation(CVector v) {
    if (v.size() == 0) throw InvalidArgument("translation: empty vector");
    if (!v.all_finite()) throw InvalidArgument("translation: non-finite entry");
    return make(nodes::Translation{std::move(v)});
}

MapExpr henon(Complex b) {
    if (!finite(b)) throw InvalidArgument("henon: b must be finite");
    return make(nodes::Henon{b});
}

MapExpr harris(int n) {
    if (n <= 0) throw InvalidArgument("harris: n must be a positive integer");
    return make(nodes::Harris{n});
}

MapExpr duren_rudin(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("durenrudin: delta must be > 0");
    return make(nodes::DurenRudin{delta});
}

MapExpr exp_coord(Complex c, std::size_t k) {
    if (!finite(c)) throw InvalidArgument("expcoord: c must be finite");
    if (k == 0) throw InvalidArgument("expcoord: dimension must be >= 1");
    return make(nodes::ExpCoord{c, k});
}

MapExpr poly_coord(std::vector<Polynomial> components) {
    if (components.empty()) throw InvalidArgument("polynomial tuple must have at least one component");
    for (const auto& p : components)
        if (p.nvars() != components.size())
            throw DimensionMismatch(components.size(), p.nvars(), "polynomial tuple component");
    return make(nodes::PolyCoord{std::move(components)});
}

MapExpr scale(Complex s, MapExpr inner) {
    if (s == Complex(0.0) || !finite(s)) throw InvalidArgument("scale: factor must be finite and nonzero");
    return make(nodes::Scalar{s, std::move(inner)});
}

MapExpr compose(MapExpr outer, MapExpr inner) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch(outer.dim(), inner.dim(), "compose");
    return make(nodes::Compose{std::move(outer), std::move(inner)});
}

MapExpr affine(CVector a, CMatrix B, MapExpr inner) {
    if (a.size() != inner.dim()) throw DimensionMismatch(inner.dim(), a.size(), "affine offset");
    if (B.size() != inner.dim()) throw DimensionMismatch(inner.dim(), B.size(), "affine matrix");
    if (!a.all_finite() || !B.all_finite()) throw InvalidArgument("affine: non-finite entry");
    return make(nodes::Affine{std::move(a), std::move(B), std::move(inner)});
}

MapExpr reparametrize(const MapExpr& m, const CVector& a, const CMatrix& B) {
    // linear maps fold into a single affine map A a + (A B) z
    if (const auto* lin = std::get_if<nodes::Linear>(&m.node().v)) {
        if (a.size() != lin->A.size()) throw DimensionMismatch(lin->A.size(), a.size(), "reparametrize offset");
        if (B.size() != lin->A.size()) throw DimensionMismatch(lin->A.size(), B.size(), "reparametrize matrix");
        const CVector Aa = lin->A * a;
        MapExpr folded = linear(lin->A * B);
        if (Aa == CVector::zeros(Aa.size())) return folded;
        return compose(translation(Aa), folded);
    }
    return affine(a, B, m);
}

MapExpr dilate(const MapExpr& m, double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("dilate: R must be > 0");
    return make(nodes::Dilate{R, m});
}

// ---------------------------------------------------------------------------
// Evaluation, generic over Complex and HDual

namespace {

template <class T>
std::vector<T> apply(const MapExpr& m, std::vector<T> z);

template <class T>
struct Evaluator {
    std::vector<T>& z;

    std::vector<T> operator()(const nodes::Identity&) const { return z; }

    std::vector<T> operator()(const nodes::Linear& n) const {
        const std::size_t k = z.size();
        std::vector<T> y(k, T(0.0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) y[i] += T(n.A(i, j)) * z[j];
        return y;
    }

    std::vector<T> operator()(const nodes::Translation& n) const {
        std::vector<T> y = z;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += T(n.v[i]);
        return y;
    }

    std::vector<T> operator()(const nodes::Henon& n) const { return {z[0] * z[0] + T(n.b) * z[1], z[0]}; }

    std::vector<T> operator()(const nodes::Harris& n) const {
        return {z[0] + T(static_cast<double>(n.n)) * z[1] * z[1], z[1]};
    }

    std::vector<T> operator()(const nodes::DurenRudin& n) const {
        const T q = z[0] / T(n.delta);
        return {z[0], z[1] + q * q};
    }

    std::vector<T> operator()(const nodes::ExpCoord& n) const {
        std::vector<T> y(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) y[i] = exp(T(n.c) * z[i]) - T(1.0);
        return y;
    }

    std::vector<T> operator()(const nodes::PolyCoord& n) const {
        std::vector<T> y;
        y.reserve(n.components.size());
        for (const auto& p : n.components) y.push_back(p.evaluate(z));
        return y;
    }

    std::vector<T> operator()(const nodes::Scalar& n) const {
        auto y = apply(n.inner, z);
        for (auto& v : y) v = T(n.s) * v;
        return y;
    }

    std::vector<T> operator()(const nodes::Compose& n) const { return apply(n.outer, apply(n.inner, z)); }

    std::vector<T> operator()(const nodes::Affine& n) const {
        const std::size_t k = z.size();
        std::vector<T> w(k);
        for (std::size_t i = 0; i < k; ++i) {
            T s(Complex(0.0));
            for (std::size_t j = 0; j < k; ++j) s += T(n.B(i, j)) * z[j];
            w[i] = T(n.a[i]) + s;
        }
        return apply(n.inner, std::move(w));
    }

    std::vector<T> operator()(const nodes::Dilate& n) const {
        std::vector<T> w = z;
        for (auto& v : w) v = T(n.R) * v;
        auto y = apply(n.inner, std::move(w));
        for (auto& v : y) v = v / T(n.R);
        return y;
    }
};

template <class T>
std::vector<T> apply(const MapExpr& m, std::vector<T> z) {
    return std::visit(Evaluator<T>{z}, m.node().v);
}

} // namespace

CVector eval(const MapExpr& m, const CVector& z) {
    if (z.size() != m.dim()) throw DimensionMismatch(m.dim(), z.size(), "eval");
    return CVector(apply<Complex>(m, z.entries()));
}

Jet jacobian(const MapExpr& m, const CVector& z) {
    const std::size_t k = m.dim();
    if (z.size() != k) throw DimensionMismatch(k, z.size(), "jacobian");
    Jet jet{CVector(k), CMatrix(k)};
    std::vector<HDual> seed(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) seed[i] = HDual(z[i], i == j ? 1.0 : 0.0);
        const auto out = apply<HDual>(m, seed);
        for (std::size_t i = 0; i < k; ++i) {
            jet.jacobian(i, j) = out[i].d;
            if (j == 0) jet.value[i] = out[i].v;
        }
    }
    return jet;
}

// ---------------------------------------------------------------------------
// Printing

std::string format_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
    const double re = z.real();
    const double im = z.imag();
    if (im == 0.0) return format_real(re);
    if (re == 0.0) return format_real(im) + "i";
    std::string s = format_real(re);
    s += im < 0.0 ? "-" : "+";
    s += format_real(std::abs(im)) + "i";
    return s;
}

namespace {

std::string print_vector(const CVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_complex(v[i]);
    }
    return s + "]";
}

std::string print_matrix(const CMatrix& A) {
    std::string s = "[";
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < A.size(); ++j) {
            if (j) s += ",";
            s += format_complex(A(i, j));
        }
        s += "]";
    }
    return s + "]";
}

std::string print_term(const Polynomial::Term& t) {
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (!t.exponents[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += "z" + std::to_string(i + 1);
        if (t.exponents[i] > 1) mono += "^" + std::to_string(t.exponents[i]);
    }
    const Complex c = t.coeff;
    const bool real = c.imag() == 0.0;
    std::string coef = real ? format_real(c.real()) : "(" + format_complex(c) + ")";
    if (mono.empty()) return coef;
    if (real && c.real() == 1.0) return mono;
    if (real && c.real() == -1.0) return "-" + mono;
    return coef + "*" + mono;
}

std::string print_poly(const Polynomial& p) {
    if (p.terms().empty()) return "0";
    std::string s;
    for (const auto& t : p.terms()) {
        std::string term = print_term(t);
        if (s.empty()) {
            s = term;
        } else if (term.front() == '-') {
            s += " - " + term.substr(1);
        } else {
            s += " + " + term;
        }
    }
    return s;
}

struct Printer {
    std::string operator()(const nodes::Identity& n) const { return "identity(k=" + std::to_string(n.k) + ")"; }
    std::string operator()(const nodes::Linear& n) const { return "linear(A=" + print_matrix(n.A) + ")"; }
    std::string operator()(const nodes::Translation& n) const { return "translation(v=" + print_vector(n.v) + ")"; }
    std::string operator()(const nodes::Henon& n) const { return "henon(b=" + format_complex(n.b) + ")"; }
    std::string operator()(const nodes::Harris& n) const { return "harris(n=" + std::to_string(n.n) + ")"; }
    std::string operator()(const nodes::DurenRudin& n) const { return "durenrudin(delta=" + format_real(n.delta) + ")"; }
    std::string operator()(const nodes::ExpCoord& n) const {
        return "expcoord(c=" + format_complex(n.c) + ", k=" + std::to_string(n.k) + ")";
    }
    std::string operator()(const nodes::PolyCoord& n) const {
        std::string s = "(";
        for (std::size_t i = 0; i < n.components.size(); ++i) {
            if (i) s += ", ";
            s += print_poly(n.components[i]);
        }
        return s + ")";
    }
    std::string operator()(const nodes::Scalar& n) const {
        return "scale(" + format_complex(n.s) + ", " + print(n.inner) + ")";
    }
    std::string operator()(const nodes::Compose& n) const {
        return "compose(" + print(n.outer) + ", " + print(n.inner) + ")";
    }
    std::string operator()(const nodes::Affine& n) const {
        return "affine(" + print_vector(n.a) + ", " + print_matrix(n.B) + ", " + print(n.inner) + ")";
    }
    std::string operator()(const nodes::Dilate& n) const {
        return "dilate(" + format_real(n.R) + ", " + print(n.inner) + ")";
    }
};

} // namespace

std::string print(const MapExpr& m) { return std::visit(Printer{}, m.node().v); }

const std::vector<BuiltinInfo>& builtins() {
    static const std::vector<BuiltinInfo> list = {
        {"identity", "identity(k=2)", "z -> z"},
        {"linear", "linear(A=[[a11,a12],[a21,a22]])", "z -> A z"},
        {"translation", "translation(v=[v1,v2])", "z -> z + v"},
        {"henon", "henon(b=0.5)", "(z, w) -> (z^2 + b w, z)"},
        {"harris", "harris(n=3)", "(z, w) -> (z + n w^2, w)"},
        {"durenrudin", "durenrudin(delta=1)", "(z, w) -> (z, w + (z/delta)^2)"},
        {"expcoord", "expcoord(c=0.1, k=2)", "z_i -> exp(c z_i) - 1"},
        {"scale", "scale(s, map)", "z -> s * map(z)"},
        {"compose", "compose(outer, inner)", "z -> outer(inner(z))"},
        {"affine", "affine([a1,a2], [[b11,b12],[b21,b22]], map)", "z -> map(a + B z)"},
        {"dilate", "dilate(R, map)", "z -> map(R z) / R"},
        {"(p1, ..., pk)", "(z1^2 + 0.5*z2, z1)", "polynomial coordinates in z1..zk"},
    };
    return list;
}

} // namespace holo
