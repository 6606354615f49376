#include "qharm/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qharm {

bool Expr::has_table() const {
    if (kind == Kind::Table) return true;
    for (const auto& k : kids)
        if (k.has_table()) return true;
    return false;
}

bool Expr::operator==(const Expr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
    case Kind::Number: return value == o.value;
    case Kind::Generator: return gen == o.gen && power2 == o.power2;
    case Kind::Table: return table == o.table;
    default: return kids == o.kids;
    }
}

GroupKind parse_group(const std::string& name) {
    if (name == "suq2") return GroupKind::CompactSU;
    if (name == "eq2") return GroupKind::EuclidE;
    throw DomainError("unknown group '" + name + "' (expected suq2 or eq2)");
}

const char* group_name(GroupKind kind) { return kind == GroupKind::CompactSU ? "suq2" : "eq2"; }

namespace {

struct GenName {
    const char* text;
    Gen gen;
};
// Longest names first so "xs" is not read as "x" "s".
constexpr GenName kSuNames[] = {{"xs", Gen::XS}, {"us", Gen::US}, {"x", Gen::X}, {"u", Gen::U}};
constexpr GenName kEqNames[] = {{"ds", Gen::DHI}, {"zs", Gen::ZS}, {"d", Gen::DH}, {"z", Gen::Z}};

const char* printed_name(Gen g) {
    switch (g) {
    case Gen::X: return "x";
    case Gen::XS: return "xs";
    case Gen::U: return "u";
    case Gen::US: return "us";
    case Gen::DH: return "d";
    case Gen::DHI: return "ds";
    case Gen::Z: return "z";
    case Gen::ZS: return "zs";
    }
    return "?";
}

class Parser {
public:
    Parser(const std::string& s, GroupKind kind) : s_(s), kind_(kind) {}

    Expr run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        Expr e = elem();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    GroupKind kind_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    static Expr node(Expr::Kind k, std::size_t at) {
        Expr e;
        e.kind = k;
        e.offset = at;
        return e;
    }

    Expr elem() {
        skip();
        const std::size_t at = pos_;
        Expr first = term();
        if (!peek('+') && !peek('-')) return first;
        Expr sum = node(Expr::Kind::Sum, at);
        sum.kids.push_back(std::move(first));
        while (true) {
            if (accept('+')) {
                sum.kids.push_back(term());
            } else if (peek('-')) {
                // "a - b" is "a + (-b)"; the negation is folded into numbers.
                const std::size_t neg_at = pos_;
                ++pos_;
                Expr t = term();
                sum.kids.push_back(negate(std::move(t), neg_at));
            } else {
                break;
            }
        }
        return sum;
    }

    static Expr negate(Expr t, std::size_t at) {
        if (t.kind == Expr::Kind::Number) {
            t.value = -t.value;
            t.offset = at;
            return t;
        }
        Expr n = node(Expr::Kind::Negate, at);
        n.kids.push_back(std::move(t));
        return n;
    }

    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'i' ||
               c == 'f' || std::isalpha(static_cast<unsigned char>(c));
    }

    Expr term() {
        skip();
        const std::size_t at = pos_;
        Expr first = factor();
        Expr prod = node(Expr::Kind::Product, at);
        prod.kids.push_back(std::move(first));
        while (true) {
            if (accept('*')) {
                prod.kids.push_back(factor());
            } else if (starts_factor()) {
                prod.kids.push_back(factor());
            } else {
                break;
            }
        }
        if (prod.kids.size() == 1) return std::move(prod.kids.front());
        return prod;
    }

    // Decimal at pos_, without sign.  Returns false (pos_ unchanged) if none.
    bool decimal(double& v) {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        bool digits = false;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p, digits = true;
        if (p < s_.size() && s_[p] == '.') {
            ++p;
            while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p, digits = true;
        }
        if (!digits) return false;
        if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
            std::size_t e = p + 1;
            if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
            if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
                while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
                p = e;
            }
        }
        // inf/nan never appear; strtod on the exact slice.
        v = std::strtod(s_.substr(start, p - start).c_str(), nullptr);
        pos_ = p;
        return true;
    }

    // "(re+imi)" as printed for complex numbers; falls back to a group.
    bool complex_literal(cplx& out) {
        const std::size_t save = pos_;
        ++pos_; // '('
        skip();
        double sign = 1;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) sign = s_[pos_++] == '-' ? -1 : 1;
        double re;
        if (!decimal(re)) return pos_ = save, false;
        skip();
        if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return pos_ = save, false;
        const double isign = s_[pos_++] == '-' ? -1 : 1;
        skip();
        double im;
        if (!decimal(im)) return pos_ = save, false;
        if (pos_ >= s_.size() || s_[pos_] != 'i') return pos_ = save, false;
        ++pos_;
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') return pos_ = save, false;
        ++pos_;
        out = cplx(sign * re, isign * im);
        return true;
    }

    Expr factor() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return negate(factor(), at);
        }
        if (c == '(') {
            cplx v;
            if (complex_literal(v)) {
                Expr n = node(Expr::Kind::Number, at);
                n.value = v;
                return n;
            }
            ++pos_;
            Expr inner = elem();
            expect(')');
            return inner;
        }
        double v;
        if (decimal(v)) {
            Expr n = node(Expr::Kind::Number, at);
            if (pos_ < s_.size() && s_[pos_] == 'i' && !ident_continues(pos_ + 1)) {
                ++pos_;
                n.value = cplx(0, v);
            } else {
                n.value = v;
            }
            return n;
        }
        if (s_.compare(pos_, 2, "f(") == 0) return table(at);
        if (c == 'i' && !ident_continues(pos_ + 1)) {
            ++pos_;
            Expr n = node(Expr::Kind::Number, at);
            n.value = cplx(0, 1);
            return n;
        }
        return generator(at);
    }

    bool ident_continues(std::size_t p) const {
        return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
    }

    Expr generator(std::size_t at) {
        std::size_t end = pos_;
        while (ident_continues(end)) ++end;
        const std::string name = s_.substr(pos_, end - pos_);
        if (name.empty()) fail("expected a factor");
        const GenName* found = nullptr;
        for (const auto& g : kind_ == GroupKind::CompactSU ? kSuNames : kEqNames)
            if (name == g.text) found = &g;
        if (!found) fail_at("unknown generator '" + name + "' for " + group_name(kind_), at);
        pos_ = end;
        Expr g = node(Expr::Kind::Generator, at);
        g.gen = found->gen;
        g.power2 = 2;
        if (accept('^')) {
            skip();
            const std::size_t pat = pos_;
            int sign = 1;
            if (pos_ < s_.size() && s_[pos_] == '-') sign = -1, ++pos_;
            std::size_t e = pos_;
            while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
            if (e == pos_) fail("expected an integer power");
            const int n = std::atoi(s_.substr(pos_, e - pos_).c_str());
            pos_ = e;
            const bool half = s_.compare(pos_, 2, "/2") == 0;
            if (half) pos_ += 2;
            const bool delta = g.gen == Gen::DH || g.gen == Gen::DHI;
            if (half && !delta) fail_at("half-integer power on '" + name + "'", pat);
            if (sign < 0 && !delta) fail_at("negative power on non-invertible generator '" + name + "'", pat);
            g.power2 = sign * (half ? n : 2 * n);
        }
        return g;
    }

    Expr table(std::size_t at) {
        pos_ += 2;
        skip();
        if (s_.compare(pos_, 4, "rho2") != 0) fail("expected 'rho2'");
        pos_ += 4;
        expect(';');
        Expr t = node(Expr::Kind::Table, at);
        do {
            skip();
            const std::size_t sat = pos_;
            int sign = 1;
            if (pos_ < s_.size() && s_[pos_] == '-') sign = -1, ++pos_;
            std::size_t e = pos_;
            while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
            if (e == pos_) fail("expected a site index");
            const int n = sign * std::atoi(s_.substr(pos_, e - pos_).c_str());
            pos_ = e;
            expect(':');
            skip();
            double vs = 1;
            if (pos_ < s_.size() && s_[pos_] == '-') vs = -1, ++pos_;
            double v;
            if (!decimal(v)) fail("expected a value");
            if (!t.table.emplace(n, vs * v).second) fail_at("duplicate site " + std::to_string(n), sat);
        } while (accept(','));
        expect(')');
        return t;
    }
};

std::string number_text(cplx v) {
    char buf[96];
    if (v.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
    } else {
        std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", v.real(), v.imag());
    }
    return buf;
}

void print_to(std::ostringstream& os, const Expr& e);

// Parenthesize when printing the child flat would regroup it on reparse.
void print_child(std::ostringstream& os, const Expr& parent, const Expr& c) {
    bool wrap = c.kind == Expr::Kind::Sum || (c.kind == Expr::Kind::Product && parent.kind != Expr::Kind::Sum);
    if (c.kind == Expr::Kind::Number && parent.kind == Expr::Kind::Negate) wrap = true;
    if (wrap) os << '(';
    print_to(os, c);
    if (wrap) os << ')';
}

void print_to(std::ostringstream& os, const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number: os << number_text(e.value); break;
    case Expr::Kind::Generator:
        os << printed_name(e.gen);
        if (e.power2 != 2) {
            const bool delta = e.gen == Gen::DH || e.gen == Gen::DHI;
            if (delta && e.power2 % 2 != 0) os << '^' << e.power2 << "/2";
            else os << '^' << e.power2 / 2;
        }
        break;
    case Expr::Kind::Table: {
        os << "f(rho2; ";
        bool first = true;
        for (auto& [n, v] : e.table) {
            if (!first) os << ", ";
            first = false;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << n << ':' << buf;
        }
        os << ')';
        break;
    }
    case Expr::Kind::Negate:
        os << '-';
        print_child(os, e, e.kids[0]);
        break;
    case Expr::Kind::Product:
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
            if (k) os << " * ";
            print_child(os, e, e.kids[k]);
        }
        break;
    case Expr::Kind::Sum:
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
            if (k) os << " + ";
            print_child(os, e, e.kids[k]);
        }
        break;
    }
}

} // namespace

Expr parse_expression(const std::string& text, GroupKind kind) { return Parser(text, kind).run(); }

std::string print_expression(const Expr& e, GroupKind kind) {
    (void)kind;
    std::ostringstream os;
    print_to(os, e);
    return os.str();
}

AlgebraElement to_element(const Expr& e, GroupKind kind, double q) {
    switch (e.kind) {
    case Expr::Kind::Number: return AlgebraElement::unit(kind, q, e.value);
    case Expr::Kind::Generator: {
        const bool delta = e.gen == Gen::DH || e.gen == Gen::DHI;
        return normal_order({{e.gen, delta ? e.power2 : e.power2 / 2}}, kind, q);
    }
    case Expr::Kind::Table: throw DomainError("f(rho2; ...) has no polynomial form; use an operator command");
    case Expr::Kind::Negate: return cplx(-1.0) * to_element(e.kids[0], kind, q);
    case Expr::Kind::Product: {
        AlgebraElement r = to_element(e.kids[0], kind, q);
        for (std::size_t k = 1; k < e.kids.size(); ++k) r = r * to_element(e.kids[k], kind, q);
        return r;
    }
    case Expr::Kind::Sum: {
        AlgebraElement r(kind, q);
        for (const auto& k : e.kids) r += to_element(k, kind, q);
        return r;
    }
    }
    return AlgebraElement(kind, q);
}

RepOperator to_operator(const Expr& e, GroupKind kind, double q, BasisWindow w) {
    if (!e.has_table()) return represent(to_element(e, kind, q), w);
    switch (e.kind) {
    case Expr::Kind::Table:
        return RepOperator::diagonal(w, [&](int n) {
            auto it = e.table.find(n);
            return it == e.table.end() ? cplx(0) : cplx(it->second);
        });
    case Expr::Kind::Negate: return cplx(-1.0) * to_operator(e.kids[0], kind, q, w);
    case Expr::Kind::Product: {
        RepOperator r = to_operator(e.kids[0], kind, q, w);
        for (std::size_t k = 1; k < e.kids.size(); ++k) r = r * to_operator(e.kids[k], kind, q, w);
        return r;
    }
    case Expr::Kind::Sum: {
        RepOperator r(w);
        for (const auto& k : e.kids) r += to_operator(k, kind, q, w);
        return r;
    }
    default: break;
    }
    return RepOperator(w);
}

Bigrade expr_bigrade(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Generator: {
        Monomial m;
        switch (e.gen) {
        case Gen::DH: m.e = {e.power2, 0, 0, 0}; break;
        case Gen::DHI: m.e = {-e.power2, 0, 0, 0}; break;
        case Gen::Z: m.e = {0, e.power2 / 2, 0, 0}; break;
        case Gen::ZS: m.e = {0, 0, e.power2 / 2, 0}; break;
        default: throw DomainError("bigrades are defined for eq2 expressions");
        }
        return monomial_bigrade(m);
    }
    case Expr::Kind::Negate: return expr_bigrade(e.kids[0]);
    case Expr::Kind::Product: {
        Bigrade b;
        for (const auto& k : e.kids) {
            const Bigrade c = expr_bigrade(k);
            b.i2 += c.i2;
            b.j2 += c.j2;
            b.homogeneous = b.homogeneous && c.homogeneous;
        }
        return b;
    }
    case Expr::Kind::Sum: {
        Bigrade b = expr_bigrade(e.kids[0]);
        for (std::size_t k = 1; k < e.kids.size(); ++k) {
            const Bigrade c = expr_bigrade(e.kids[k]);
            if (c.i2 != b.i2 || c.j2 != b.j2 || !c.homogeneous) b.homogeneous = false;
        }
        return b;
    }
    default: return Bigrade{};
    }
}

} // namespace qharm
