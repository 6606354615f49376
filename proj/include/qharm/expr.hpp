#pragma once

#include <map>
#include <string>
#include <vector>

#include "qharm/reps.hpp"

namespace qharm {

// Grammar (whitespace free between tokens):
//   elem   := term (('+' | '-') term)*
//   term   := factor ('*'? factor)*          juxtaposition multiplies
//   factor := '-' factor | number | '(' re ('+'|'-') im 'i' ')' | '(' elem ')'
//           | gen ('^' power)? | 'f(rho2;' site ':' value (',' site ':' value)* ')'
//   number := decimal, optionally followed by 'i'; a bare 'i' is the unit
//   power  := '-'? digits ('/2')?              halves only on d, ds
// Generators: x xs u us (suq2), d ds z zs (eq2); ds is d^{-1}.
// In a table, site n stands for the basis vector |n>, so the factor acts as
// the diagonal operator with those values (radial function of rho^2).
struct Expr {
    enum class Kind { Number, Generator, Sum, Product, Negate, Table };
    Kind kind = Kind::Number;
    cplx value{};                  // Number
    Gen gen = Gen::X;              // Generator
    int power2 = 2;                // Generator: twice the exponent
    std::map<int, double> table;   // Table
    std::vector<Expr> kids;        // Sum, Product, Negate
    std::size_t offset = 0;        // byte offset of the first token

    bool has_table() const;
    bool operator==(const Expr& o) const; // structural, ignores offsets
};

Expr parse_expression(const std::string& text, GroupKind kind);
// Canonical text; parse_expression(print_expression(e)) == e.
std::string print_expression(const Expr& e, GroupKind kind);

// Normal-ordered element.  Throws DomainError when the expression contains a
// table (tables only make sense as operators).
AlgebraElement to_element(const Expr& e, GroupKind kind, double q);
// Operator on a window: polynomial parts are represented exactly, tables act
// diagonally, products are truncated to the window.
RepOperator to_operator(const Expr& e, GroupKind kind, double q, BasisWindow w);

// Bigrade of an eq2 expression read from its generator factors; tables and
// numbers are (0,0).  homogeneous is false when summands disagree.
Bigrade expr_bigrade(const Expr& e);

GroupKind parse_group(const std::string& name); // "suq2" | "eq2"
const char* group_name(GroupKind kind);

}  // namespace qharm
