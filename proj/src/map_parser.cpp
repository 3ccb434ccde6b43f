// Recursive-descent parser for the map grammar:
//
//   map     := builtin | tuple | "compose(" map "," map ")"
//            | "affine(" vector "," matrix "," map ")" | "dilate(" real "," map ")"
//            | "scale(" complex "," map ")"
//   builtin := name "(" [param {"," param}] ")"      param := name "=" value
//   value   := complex | "[" value {"," value} "]"
//   tuple   := "(" poly {"," poly} ")"
//   poly    := ["+"|"-"] term {("+"|"-") term}
//   term    := factor {"*" factor}
//   factor  := primary ["^" uint]
//   primary := number ["i"] | "i" | "z" uint | "(" poly ")"
//
// Whitespace is insignificant.

#include "holo/errors.hpp"
#include "holo/mapkit.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace holo {

namespace {

constexpr std::size_t kMaxPolyVars = 32;

struct Value {
    std::size_t pos = 0;
    bool is_list = false;
    Complex scalar;
    std::vector<Value> items;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    MapExpr parse_top() {
        MapExpr m = parse_map();
        skip_ws();
        if (pos_ != text_.size()) fail({"end of input"});
        return m;
    }

    Complex parse_complex_top() {
        skip_ws();
        Complex c = parse_complex_literal();
        skip_ws();
        if (pos_ != text_.size()) fail({"end of input"});
        return c;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail = {}) const {
        throw ParseError(pos_, std::move(expected), detail);
    }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& detail) const { throw ParseError(pos, {}, detail); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
            pos_ = start;
            fail({"identifier"});
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    bool at_number_start() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    double number() {
        skip_ws();
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (exp_start == pos_) pos_ = save;
        }
        double x = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, x);
        if (start == pos_ || res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"number"});
        }
        return x;
    }

    unsigned uint_literal() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        unsigned v = 0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (start == pos_ || res.ec != std::errc()) {
            pos_ = start;
            fail({"non-negative integer"});
        }
        return v;
    }

    bool accept_imag_unit() {
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            // "i" must not be the start of a longer identifier
            if (pos_ + 1 < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) return false;
            ++pos_;
            return true;
        }
        return false;
    }

    // Unsigned part of a complex literal: number, number "i", or "i".
    Complex literal_part(bool* imaginary = nullptr) {
        skip_ws();
        bool imag = accept_imag_unit();
        Complex v{0.0, 1.0};
        if (!imag) {
            const double x = number();
            imag = accept_imag_unit();
            v = imag ? Complex{0.0, x} : Complex{x, 0.0};
        }
        if (imaginary) *imaginary = imag;
        return v;
    }

    Complex parse_complex_literal() {
        double sign = 1.0;
        if (accept('-')) sign = -1.0;
        else accept('+');
        if (!at_number_start() && peek() != 'i') fail({"number", "'i'"});
        bool first_imag = false;
        const Complex first = sign * literal_part(&first_imag);
        const char c = peek();
        if (c == '+' || c == '-') {
            ++pos_;
            const double s2 = c == '-' ? -1.0 : 1.0;
            if (!at_number_start() && peek() != 'i') fail({"number", "'i'"});
            const std::size_t part_pos = pos_;
            bool second_imag = false;
            const Complex second = s2 * literal_part(&second_imag);
            if (second_imag == first_imag)
                fail_at(part_pos, "complex literal must combine one real and one imaginary part");
            return first + second;
        }
        return first;
    }

    Value value() {
        Value v;
        v.pos = (skip_ws(), pos_);
        if (accept('[')) {
            v.is_list = true;
            v.items.push_back(value());
            while (accept(',')) v.items.push_back(value());
            if (!accept(']')) fail({"','", "']'"});
            return v;
        }
        v.scalar = parse_complex_literal();
        return v;
    }

    // ---- typed views of parameter values

    static Complex as_complex(const Value& v, const char* what) {
        if (v.is_list) throw ParseError(v.pos, {}, std::string(what) + " must be a complex number");
        return v.scalar;
    }

    static double as_real(const Value& v, const char* what) {
        const Complex c = as_complex(v, what);
        if (c.imag() != 0.0) throw ParseError(v.pos, {}, std::string(what) + " must be real");
        return c.real();
    }

    static long as_int(const Value& v, const char* what, long lo) {
        const double x = as_real(v, what);
        if (x != std::floor(x) || x < static_cast<double>(lo) || x > 1e9)
            throw ParseError(v.pos, {}, std::string(what) + " must be an integer >= " + std::to_string(lo));
        return static_cast<long>(x);
    }

    static CVector as_vector(const Value& v, const char* what) {
        if (!v.is_list) throw ParseError(v.pos, {}, std::string(what) + " must be a vector [..]");
        CVector out(v.items.size());
        for (std::size_t i = 0; i < v.items.size(); ++i) out[i] = as_complex(v.items[i], what);
        return out;
    }

    static CMatrix as_matrix(const Value& v, const char* what) {
        if (!v.is_list) throw ParseError(v.pos, {}, std::string(what) + " must be a matrix [[..],..]");
        std::vector<std::vector<Complex>> rows;
        for (const auto& r : v.items) {
            const CVector row = as_vector(r, what);
            if (row.size() != v.items.size())
                throw ParseError(r.pos, {}, std::string(what) + " must be square");
            rows.push_back(row.entries());
        }
        return CMatrix::from_rows(rows);
    }

    // ---- maps

    MapExpr parse_map() {
        if (peek() == '(') return parse_tuple();
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            fail({"builtin name", "'('"});
        const std::size_t name_pos = pos_;
        const std::string name = identifier();
        expect('(');
        if (name == "compose") {
            MapExpr outer = parse_map();
            expect(',');
            MapExpr inner = parse_map();
            expect(')');
            return compose(std::move(outer), std::move(inner));
        }
        if (name == "affine") {
            const Value a = value();
            expect(',');
            const Value B = value();
            expect(',');
            MapExpr inner = parse_map();
            expect(')');
            return affine(as_vector(a, "affine offset"), as_matrix(B, "affine matrix"), std::move(inner));
        }
        if (name == "dilate") {
            const Value R = value();
            expect(',');
            MapExpr inner = parse_map();
            expect(')');
            const double r = as_real(R, "dilation factor");
            if (!(r > 0.0)) throw ParseError(R.pos, {}, "dilation factor must be > 0");
            return dilate(inner, r);
        }
        if (name == "scale") {
            const Value s = value();
            expect(',');
            MapExpr inner = parse_map();
            expect(')');
            const Complex c = as_complex(s, "scale factor");
            if (c == Complex(0.0)) throw ParseError(s.pos, {}, "scale factor must be nonzero");
            return scale(c, std::move(inner));
        }
        return parse_builtin(name, name_pos);
    }

    MapExpr parse_builtin(const std::string& name, std::size_t name_pos) {
        static const std::map<std::string, std::vector<std::string>> known = {
            {"identity", {"k"}},  {"linear", {"A"}},         {"translation", {"v"}}, {"henon", {"b"}},
            {"harris", {"n"}},    {"durenrudin", {"delta"}}, {"expcoord", {"c", "k"}},
        };
        const auto it = known.find(name);
        if (it == known.end()) {
            std::vector<std::string> names;
            for (const auto& [n, _] : known) names.push_back(n);
            for (const char* n : {"affine", "compose", "dilate", "scale"}) names.emplace_back(n);
            throw ParseError(name_pos, names, "unknown map '" + name + "'");
        }
        std::map<std::string, Value> params;
        if (!accept(')')) {
            do {
                const std::size_t ppos = (skip_ws(), pos_);
                const std::string key = identifier();
                const auto& allowed = it->second;
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                    std::vector<std::string> quoted;
                    for (const auto& a : allowed) quoted.push_back("'" + a + "'");
                    throw ParseError(ppos, quoted, "unknown parameter '" + key + "' for " + name);
                }
                if (params.count(key)) throw ParseError(ppos, {}, "duplicate parameter '" + key + "'");
                expect('=');
                params.emplace(key, value());
            } while (accept(','));
            if (!accept(')')) fail({"','", "')'"});
        }
        auto required = [&](const std::string& key) -> const Value& {
            const auto p = params.find(key);
            if (p == params.end()) throw ParseError(pos_, {"'" + key + "='"}, "missing parameter for " + name);
            return p->second;
        };
        auto dim_param = [&]() -> std::size_t {
            const auto p = params.find("k");
            return p == params.end() ? 2 : static_cast<std::size_t>(as_int(p->second, "k", 1));
        };

        if (name == "identity") return identity(dim_param());
        if (name == "linear") return linear(as_matrix(required("A"), "A"));
        if (name == "translation") return translation(as_vector(required("v"), "v"));
        if (name == "henon") return henon(as_complex(required("b"), "b"));
        if (name == "harris") return harris(static_cast<int>(as_int(required("n"), "n", 1)));
        if (name == "durenrudin") {
            const Value& d = required("delta");
            const double delta = as_real(d, "delta");
            if (!(delta > 0.0)) throw ParseError(d.pos, {}, "delta must be > 0");
            return duren_rudin(delta);
        }
        return exp_coord(as_complex(required("c"), "c"), dim_param());
    }

    MapExpr parse_tuple() {
        expect('(');
        std::vector<std::pair<Polynomial, std::size_t>> comps;
        do {
            const std::size_t cpos = (skip_ws(), pos_);
            comps.emplace_back(poly(), cpos);
        } while (accept(','));
        if (!accept(')')) fail({"','", "')'"});
        const std::size_t k = comps.size();
        std::vector<Polynomial> out;
        for (auto& [p, cpos] : comps) {
            if (p.max_variable() > k)
                throw ParseError(cpos, {}, "component uses z" + std::to_string(p.max_variable()) +
                                               " but the tuple defines a map of C^" + std::to_string(k));
            out.push_back(p.with_nvars(k));
        }
        return poly_coord(std::move(out));
    }

    Polynomial poly() {
        Polynomial acc(kMaxPolyVars);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        acc = term();
        if (negate) acc = acc.negated();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (accept('^')) return base.pow(uint_literal());
        return base;
    }

    Polynomial primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = poly();
            expect(')');
            return p;
        }
        if (c == 'z') {
            const std::size_t vpos = pos_++;
            const unsigned idx = uint_literal();
            if (idx == 0 || idx > kMaxPolyVars)
                throw ParseError(vpos, {}, "variable index must be in 1.." + std::to_string(kMaxPolyVars));
            return Polynomial::variable(kMaxPolyVars, idx - 1);
        }
        if (at_number_start() || c == 'i') {
            const Complex v = literal_part();
            return Polynomial::constant(kMaxPolyVars, v);
        }
        fail({"number", "variable z1..zk", "'('"});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

MapExpr parse(std::string_view text) { return Parser(text).parse_top(); }

Complex parse_complex(std::string_view text) { return Parser(text).parse_complex_top(); }

} // namespace holo
